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

#include <string>
#include <utility>
#include <vector>

#include "radar/types.hpp"

namespace radar::sim {

/// One simulated agent. The ego vehicle sits at the origin with perfect
/// ego-motion compensation, so Doppler is the radial speed of the agent
/// center with respect to the origin (positive = receding). The point count
/// per scan is deterministic (rounded mean, at least one point); occlusion
/// windows suppress emission without stopping the motion.
struct AgentSpec {
  Vec2 start = Vec2::Zero();     // position at the birth scan, m
  Vec2 velocity = Vec2::Zero();  // m/s, piecewise constant
  double turn_rate = 0.0;        // rad/s, rotates the velocity each scan
  Vec2 extent{2.0, 1.0};         // scatter rectangle, m
  double mean_points = 5.0;
  double rcs_mean = 10.0;  // dBsm
  double rcs_std = 0.5;
  int birth = 0;
  int death = std::numeric_limits<int>::max();  // exclusive
  std::vector<std::pair<int, int>> occlusions;  // [start, end) scan ranges

  bool emits_at(int t) const {
    if (t < birth || t >= death) return false;
    for (const auto& [s, e] : occlusions)
      if (t >= s && t < e) return false;
    return true;
  }
};

struct ScenarioConfig {
  std::string name;
  std::vector<AgentSpec> agents;
  int scans = 20;
  double dt = 0.5;            // seconds per scan
  double clutter_rate = 3.0;  // static points per scan (Poisson)
  double position_noise = 0.0;
  double doppler_noise = 0.0;
  double dropout = 0.0;  // per-point drop probability (at least one survives)
  double field_half_extent = 50.0;
  std::uint64_t seed = 0;

  bool valid() const;
};

/// One generated scan: the segmentation input plus ground truth for
/// training and evaluation. Instance and track ids both equal the agent
/// index + 1; offsets are exact against the realized member centers, and
/// temporal offsets are flagged invalid where the agent has no points in
/// the next scan.
struct SimScan {
  SegmentedScan seg;
  std::vector<int> track_ids;
  std::vector<std::uint8_t> temporal_valid;
};

using SimSequence = std::vector<SimScan>;

SimSequence generate_sequence(const ScenarioConfig& config);

/// Ground-truth evaluation labels of a generated sequence.
SequenceLabels ground_truth_labels(const SimSequence& sequence);

/// Segmentation inputs of a generated sequence (perfect segmentation).
std::vector<SegmentedScan> segmentation(const SimSequence& sequence);

/// Mock-backbone corruption of perfect segmentation.
struct CorruptionRates {
  double semantic_flip = 0.0;
  double instance_split = 0.0;
  double instance_merge = 0.0;
  double offset_noise = 0.0;  // std in meters, applied to both offset fields

  bool valid() const {
    return semantic_flip >= 0 && semantic_flip <= 1 && instance_split >= 0 &&
           instance_split <= 1 && instance_merge >= 0 && instance_merge <= 1 &&
           offset_noise >= 0;
  }
};

/// Applies the corruption model per scan; all-zero rates return the input
/// unchanged. Ground-truth track ids are untouched. Flipping a static point
/// to moving spawns a fresh singleton instance; splits refine the instance
/// partition; merges join instances whose centers lie within 20 m.
SimSequence corrupt_segmentation(const SimSequence& gt, const CorruptionRates& rates,
                                 std::uint64_t seed);

/// Canned deterministic scenarios: single, parallel, crossing, occlusion,
/// single_point, spawn_despawn. Unknown names throw.
ScenarioConfig scenario_library(const std::string& name);

}  // namespace radar::sim
