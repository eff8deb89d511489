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

namespace radar {

/// Component-wise arithmetic mean of a non-empty point list.
Vec2 instance_center(const std::vector<Vec2>& points);

inline double euclidean_2d(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// One descriptor per distinct instance id > 0 among moving-labeled points,
/// ordered by ascending instance id. Centers and offset-corrected centers are
/// populated from the scan; the feature vector is zero-initialized with
/// `feature_dim` entries.
std::vector<InstanceDescriptor> extract_moving_instances(const SegmentedScan& scan,
                                                         int feature_dim = 256);

/// Per-point feature rows (x, y, rcs, v), n x 4.
MatX scan_features(const Scan& scan);

/// Per-point coordinates, n x 2.
MatX2 scan_positions(const Scan& scan);

}  // namespace radar
