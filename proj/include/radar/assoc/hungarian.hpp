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

#include <utility>
#include <vector>

#include "radar/types.hpp"

namespace radar::assoc {

using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  double total_cost = 0.0;

  /// Column matched to the given row, or -1.
  int column_of(int row) const {
    for (const auto& [r, c] : pairs)
      if (r == row) return c;
    return -1;
  }
};

/// Minimum-cost one-to-one assignment on a rectangular matrix with a
/// forbidden mask. Cardinality is maximized first (forbidden entries never
/// appear in the result), cost minimized second; among cost ties the
/// lexicographically smallest assignment by (row, column) is returned.
/// An all-forbidden problem yields an empty assignment.
Assignment hungarian(const Eigen::Ref<const MatX>& cost, const BoolMat& forbidden);

/// Convenience overload with nothing forbidden.
Assignment hungarian(const Eigen::Ref<const MatX>& cost);

}  // namespace radar::assoc
