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

#include <vector>

#include "radar/types.hpp"

namespace radar::assoc {

/// Noise label for points that are neither core nor density-reachable.
inline constexpr int kDbscanNoise = -1;

/// Density-based clustering. Cluster labels are assigned in first-seen order
/// starting at 0. With min_pts = 1 every point is a core point and the
/// clusters are exactly the connected components of the eps-graph.
std::vector<int> dbscan(const std::vector<Vec2>& points, double eps, int min_pts);

}  // namespace radar::assoc
