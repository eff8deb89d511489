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

#include <optional>
#include <utility>
#include <vector>

#include "radar/assoc/hungarian.hpp"
#include "radar/nets/instance_net.hpp"
#include "radar/nets/similarity.hpp"
#include "radar/types.hpp"

namespace radar::assoc {

/// Local assignment input: distances between track predictions (rows) and
/// detections (columns), with the two distance gates applied.
struct AssignmentProblem {
  MatX cost;           // center distances
  BoolMat forbidden;   // beyond t_d2: association omitted
  BoolMat gated;       // in (t_d1, t_d2]: needs similarity acceptance
  std::vector<int> track_ids;
  std::vector<int> instance_ids;
};

struct AssociationResult {
  std::vector<std::pair<int, int>> matches;  // (track index, detection index)
  std::vector<int> unmatched_tracks;         // track indices
  std::vector<int> unmatched_detections;     // detection indices
};

struct TrackerState {
  std::vector<Track> tracks;  // ordered by ascending track id
  int next_track_id = 1;
  TrackerConfig config;
};

/// Association center of a detection under the configured mode.
Vec2 detection_center(const InstanceDescriptor& d, const TrackerConfig& config);

AssignmentProblem build_cost(const std::vector<Track>& tracks,
                             const std::vector<InstanceDescriptor>& detections,
                             const TrackerConfig& config);

/// DBSCAN over the pooled centers restricts matching to local clusters; each
/// cluster is solved by Hungarian on the distance cost. Matches in the gated
/// band are dropped when their similarity cost exceeds t_c (pass the cost
/// matrix, tracks x detections); with no similarity costs the association is
/// purely geometric.
AssociationResult associate_scan(const TrackerState& state,
                                 const std::vector<InstanceDescriptor>& detections,
                                 const MatX* similarity_costs);

/// Applies one scan's association to the track set: updates matched tracks,
/// propagates and eventually retires unmatched ones, and spawns new tracks
/// for unmatched detections. Returns the track id per detection.
std::vector<int> lifecycle_step(TrackerState& state, const AssociationResult& result,
                                const std::vector<InstanceDescriptor>& detections,
                                int scan_t);

/// Full tracking pass over one sequence: per scan, the track id of every
/// point (0 for static points). Networks may be null for geometric-only
/// operation. Scan timestamps must be strictly increasing.
std::vector<std::vector<int>> run_tracker(const std::vector<SegmentedScan>& scans,
                                          const TrackerConfig& config,
                                          nets::InstanceNet* instance_net = nullptr,
                                          nets::SimilarityHead* similarity = nullptr);

}  // namespace radar::assoc
