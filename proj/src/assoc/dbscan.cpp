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

#include "radar/assoc/dbscan.hpp"

#include <stdexcept>

namespace radar::assoc {

namespace {

std::vector<int> region_query(const std::vector<Vec2>& points, int idx, double eps2) {
  std::vector<int> neighbors;
  for (int j = 0; j < static_cast<int>(points.size()); ++j) {
    if ((points[idx] - points[j]).squaredNorm() <= eps2) neighbors.push_back(j);
  }
  return neighbors;
}

}  // namespace

std::vector<int> dbscan(const std::vector<Vec2>& points, double eps, int min_pts) {
  if (eps <= 0.0) throw std::invalid_argument("dbscan: eps must be positive");
  if (min_pts < 1) throw std::invalid_argument("dbscan: min_pts must be >= 1");

  const int n = static_cast<int>(points.size());
  const double eps2 = eps * eps;
  constexpr int kUnvisited = -2;
  std::vector<int> labels(n, kUnvisited);
  int next_cluster = 0;

  for (int i = 0; i < n; ++i) {
    if (labels[i] != kUnvisited) continue;
    std::vector<int> seeds = region_query(points, i, eps2);
    if (static_cast<int>(seeds.size()) < min_pts) {
      labels[i] = kDbscanNoise;
      continue;
    }
    const int cluster = next_cluster++;
    labels[i] = cluster;
    // Expand over density-reachable points; seeds act as a FIFO worklist.
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const int j = seeds[s];
      if (labels[j] == kDbscanNoise) labels[j] = cluster;  // border point
      if (labels[j] != kUnvisited) continue;
      labels[j] = cluster;
      std::vector<int> reach = region_query(points, j, eps2);
      if (static_cast<int>(reach.size()) >= min_pts) {
        seeds.insert(seeds.end(), reach.begin(), reach.end());
      }
    }
  }
  return labels;
}

}  // namespace radar::assoc
