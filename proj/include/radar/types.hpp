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

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace radar {

using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using MatX2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

enum class Semantic : std::uint8_t { kStatic = 0, kMoving = 1 };

/// One radar detection in the ego-compensated 2D frame.
/// The feature vector fed to the networks is (x, y, rcs, doppler).
struct Point {
  double x = 0.0;        // m
  double y = 0.0;        // m
  double doppler = 0.0;  // m/s, ego-motion compensated radial velocity
  double rcs = 0.0;      // dBsm

  Vec2 position() const { return {x, y}; }
  Eigen::Vector4d feature() const { return {x, y, rcs, doppler}; }
};

/// One timestamped scan. Point order is stable and index-addressable.
struct Scan {
  std::string sequence_id;
  int t = 0;
  std::vector<Point> points;

  int size() const { return static_cast<int>(points.size()); }
};

/// A scan plus per-point segmentation output: moving/static labels,
/// instance ids (0 reserved for static/none) and the two offset fields.
/// This is the tracker's sole input.
struct SegmentedScan {
  Scan scan;
  std::vector<Semantic> semantics;
  std::vector<int> instance_ids;
  MatX2 offsets;           // n x 2, points to the instance center in this scan
  MatX2 temporal_offsets;  // n x 2, points to the instance center in the next scan

  int size() const { return scan.size(); }
  bool consistent() const;
};

/// One moving instance of a single scan.
struct InstanceDescriptor {
  int instance_id = 0;
  std::vector<int> point_indices;
  Vec2 center = Vec2::Zero();                 // mean of member coordinates
  Vec2 corrected_center = Vec2::Zero();       // center + mean standard offset
  Vec2 predicted_next_center = Vec2::Zero();  // center + mean temporal offset
  VecX feature;                               // filled by the instance network

  int size() const { return static_cast<int>(point_indices.size()); }
  /// Mean temporal offset of the members, the per-scan displacement estimate.
  Vec2 temporal_offset() const { return predicted_next_center - center; }
};

/// A persistent identity. Track ids are unique within a sequence and never
/// reused; misses never exceeds the retention limit.
struct Track {
  int track_id = 0;
  InstanceDescriptor descriptor;
  Vec2 predicted_center = Vec2::Zero();
  int misses = 0;
  int age = 1;
  std::vector<std::pair<int, int>> history;  // (scan t, instance_id)
};

/// All thresholds and network dimensions in one place.
struct TrackerConfig {
  double t_d1 = 5.0;            // m, below: purely geometric acceptance
  double t_d2 = 10.0;           // m, above: association omitted
  double t_c = 1.5;             // similarity cost acceptance threshold
  double cluster_radius = 10.0; // m, DBSCAN eps for the local areas
  int min_pts = 1;              // DBSCAN core-point threshold
  int retention = 12;           // scans a track survives unmatched
  int n_local = 6;              // neighbors per point in the attention
  int feature_dim = 4;          // D
  int hidden_dim = 64;          // D1
  int instance_dim = 256;       // D2
  double epsilon = 1e-6;        // similarity-cost stabilizer
  std::uint64_t seed = 0;
  // Ablation switches: similarity gating and offset-corrected centers.
  bool use_similarity = true;
  bool use_offsets = true;

  bool valid() const {
    return t_d1 > 0 && t_d1 <= t_d2 && t_c > 0 && cluster_radius > 0 &&
           min_pts >= 1 && retention >= 0 && n_local >= 1 && feature_dim >= 1 &&
           hidden_dim >= 1 && instance_dim >= 1 && epsilon > 0;
  }
};

/// Per-scan evaluation labels: semantics plus track ids (0 = none/static).
struct ScanLabels {
  std::vector<Semantic> semantics;
  std::vector<int> track_ids;
};

using SequenceLabels = std::vector<ScanLabels>;

}  // namespace radar
