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

#pragma once

#include "radar/types.hpp"

namespace radar::nn {

/// Sample-and-grouping output. Grouped rows are laid out point-major: data for
/// point i and its j-th neighbor lives in row i*k + j.
struct KnnGroups {
  Eigen::MatrixXi indices;  // m x k neighbor indices
  MatX features;            // (m*k) x d gathered neighbor features
  MatX2 relative;           // (m*k) x 2 relative positions p_i - p_j
};

/// k nearest neighbors per point under Euclidean distance, self included.
/// Neighbor rows are sorted by distance; distance ties prefer self, then the
/// lower point index. When fewer than k points exist the row is padded with
/// extra copies of self (the nearest available), so a singleton yields k
/// copies of itself with zero relative positions.
KnnGroups knn_sample_group(const Eigen::Ref<const MatX2>& points,
                           const Eigen::Ref<const MatX>& features, int k);

}  // namespace radar::nn
