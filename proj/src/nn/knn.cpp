// Copyright 2026 The radar_tracker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "radar/nn/knn.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace radar::nn {

KnnGroups knn_sample_group(const Eigen::Ref<const MatX2>& points,
                           const Eigen::Ref<const MatX>& features, int k) {
  const int m = static_cast<int>(points.rows());
  if (m < 1) throw std::invalid_argument("knn_sample_group: empty point set");
  if (k < 1) throw std::invalid_argument("knn_sample_group: k must be positive");
  if (features.rows() != m) {
    throw std::invalid_argument("knn_sample_group: feature row count mismatch");
  }

  KnnGroups groups;
  groups.indices.resize(m, k);
  groups.features.resize(static_cast<Eigen::Index>(m) * k, features.cols());
  groups.relative.resize(static_cast<Eigen::Index>(m) * k, 2);

  std::vector<std::pair<double, int>> cands(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      cands[j] = {(points.row(i) - points.row(j)).squaredNorm(), j};
    }
    std::sort(cands.begin(), cands.end(),
              [i](const std::pair<double, int>& a, const std::pair<double, int>& b) {
                if (a.first != b.first) return a.first < b.first;
                if ((a.second == i) != (b.second == i)) return a.second == i;
                return a.second < b.second;
              });

    const int taken = std::min(m, k);
    const int pads = k - taken;
    // Padding repeats self and keeps the row sorted by distance.
    for (int j = 0; j <= pads && j < k; ++j) groups.indices(i, j) = i;
    for (int j = 1; j < taken; ++j) groups.indices(i, pads + j) = cands[j].second;

    for (int j = 0; j < k; ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(i) * k + j;
      const int nbr = groups.indices(i, j);
      groups.features.row(row) = features.row(nbr);
      groups.relative.row(row) = points.row(i) - points.row(nbr);
    }
  }
  return groups;
}

}  // namespace radar::nn
