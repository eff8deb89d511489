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

#include "radar/geometry.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace radar {

bool SegmentedScan::consistent() const {
  const int n = size();
  if (static_cast<int>(semantics.size()) != n) return false;
  if (static_cast<int>(instance_ids.size()) != n) return false;
  if (offsets.rows() != n || temporal_offsets.rows() != n) return false;
  for (int i = 0; i < n; ++i) {
    const bool moving = semantics[i] == Semantic::kMoving;
    if (moving && instance_ids[i] <= 0) return false;
    if (!moving && instance_ids[i] != 0) return false;
    const Point& p = scan.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.doppler) ||
        !std::isfinite(p.rcs)) {
      return false;
    }
  }
  return offsets.allFinite() && temporal_offsets.allFinite();
}

Vec2 instance_center(const std::vector<Vec2>& points) {
  if (points.empty()) throw std::invalid_argument("instance_center: empty point list");
  Vec2 sum = Vec2::Zero();
  for (const Vec2& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

std::vector<InstanceDescriptor> extract_moving_instances(const SegmentedScan& scan,
                                                         int feature_dim) {
  // std::map keeps the output ordered by ascending instance id.
  std::map<int, InstanceDescriptor> by_id;
  for (int i = 0; i < scan.size(); ++i) {
    if (scan.semantics[i] != Semantic::kMoving) continue;
    InstanceDescriptor& d = by_id[scan.instance_ids[i]];
    d.instance_id = scan.instance_ids[i];
    d.point_indices.push_back(i);
  }

  std::vector<InstanceDescriptor> out;
  out.reserve(by_id.size());
  for (auto& [id, d] : by_id) {
    Vec2 center = Vec2::Zero();
    Vec2 mean_offset = Vec2::Zero();
    Vec2 mean_temporal = Vec2::Zero();
    for (int idx : d.point_indices) {
      center += scan.scan.points[idx].position();
      mean_offset += scan.offsets.row(idx).transpose();
      mean_temporal += scan.temporal_offsets.row(idx).transpose();
    }
    const double m = static_cast<double>(d.point_indices.size());
    d.center = center / m;
    d.corrected_center = d.center + mean_offset / m;
    d.predicted_next_center = d.center + mean_temporal / m;
    d.feature = VecX::Zero(feature_dim);
    out.push_back(std::move(d));
  }
  return out;
}

MatX scan_features(const Scan& scan) {
  MatX f(scan.size(), 4);
  for (int i = 0; i < scan.size(); ++i) f.row(i) = scan.points[i].feature().transpose();
  return f;
}

MatX2 scan_positions(const Scan& scan) {
  MatX2 p(scan.size(), 2);
  for (int i = 0; i < scan.size(); ++i) p.row(i) = scan.points[i].position().transpose();
  return p;
}

}  // namespace radar
