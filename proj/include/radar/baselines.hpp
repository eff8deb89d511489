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

namespace radar::baselines {

/// Axis-aligned bounding box; single points produce zero-area boxes.
struct Box {
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Zero();

  double area() const { return (hi.x() - lo.x()) * (hi.y() - lo.y()); }
  Vec2 center() const { return 0.5 * (lo + hi); }
};

/// Rectangle IoU; zero-area boxes score 0 against everything, including
/// themselves.
double box_iou(const Box& a, const Box& b);

/// Constant-velocity Kalman track over the box center, used by the IoU
/// baseline. The covariance stays symmetric positive semi-definite.
struct KalmanTrack {
  Eigen::Vector4d state = Eigen::Vector4d::Zero();  // x, y, vx, vy
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Identity();
  Box box;

  void predict(double dt, double process_noise);
  void update(const Vec2& measurement, double measurement_noise);
};

/// Centers propagated along the radial direction by the mean measured
/// Doppler; global Hungarian on center distances gated at t_d2; same
/// lifecycle rules as the main tracker.
std::vector<std::vector<int>> center_doppler_tracker(
    const std::vector<SegmentedScan>& scans, const TrackerConfig& config, double dt);

/// Constant-velocity Kalman boxes matched by 1 - IoU; pairs with zero IoU
/// are never matched, so single-point instances always spawn new tracks.
std::vector<std::vector<int>> kalman_iou_tracker(
    const std::vector<SegmentedScan>& scans, const TrackerConfig& config, double dt,
    double process_noise = 0.5, double measurement_noise = 0.1);

}  // namespace radar::baselines
