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

#include "radar/assoc/tracker.hpp"

#include <algorithm>
#include <stdexcept>

#include "radar/assoc/dbscan.hpp"
#include "radar/geometry.hpp"

namespace radar::assoc {

Vec2 detection_center(const InstanceDescriptor& d, const TrackerConfig& config) {
  return config.use_offsets ? d.corrected_center : d.center;
}

namespace {

Vec2 detection_prediction(const InstanceDescriptor& d, const TrackerConfig& config) {
  return config.use_offsets ? d.predicted_next_center : d.center;
}

}  // namespace

AssignmentProblem build_cost(const std::vector<Track>& tracks,
                             const std::vector<InstanceDescriptor>& detections,
                             const TrackerConfig& config) {
  const int a = static_cast<int>(tracks.size());
  const int b = static_cast<int>(detections.size());
  AssignmentProblem problem;
  problem.cost.resize(a, b);
  problem.forbidden.resize(a, b);
  problem.gated.resize(a, b);
  problem.track_ids.reserve(a);
  problem.instance_ids.reserve(b);
  for (const Track& t : tracks) problem.track_ids.push_back(t.track_id);
  for (const InstanceDescriptor& d : detections)
    problem.instance_ids.push_back(d.instance_id);

  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double d = euclidean_2d(tracks[i].predicted_center,
                                    detection_center(detections[j], config));
      problem.cost(i, j) = d;
      problem.forbidden(i, j) = d > config.t_d2;
      problem.gated(i, j) = d > config.t_d1 && d <= config.t_d2;
    }
  }
  return problem;
}

AssociationResult associate_scan(const TrackerState& state,
                                 const std::vector<InstanceDescriptor>& detections,
                                 const MatX* similarity_costs) {
  const TrackerConfig& config = state.config;
  const int a = static_cast<int>(state.tracks.size());
  const int b = static_cast<int>(detections.size());

  AssociationResult result;
  std::vector<bool> track_matched(a, false);
  std::vector<bool> det_matched(b, false);

  if (a > 0 && b > 0) {
    if (similarity_costs != nullptr &&
        (similarity_costs->rows() != a || similarity_costs->cols() != b)) {
      throw std::invalid_argument("associate_scan: similarity cost shape mismatch");
    }
    const AssignmentProblem problem = build_cost(state.tracks, detections, config);

    // Pool track predictions and detection centers into one clustering so
    // that a track and its candidate detections share a local problem.
    std::vector<Vec2> pooled;
    pooled.reserve(a + b);
    for (const Track& t : state.tracks) pooled.push_back(t.predicted_center);
    for (const InstanceDescriptor& d : detections)
      pooled.push_back(detection_center(d, config));
    const std::vector<int> labels = dbscan(pooled, config.cluster_radius, config.min_pts);

    int num_clusters = 0;
    for (int l : labels) num_clusters = std::max(num_clusters, l + 1);

    for (int cluster = 0; cluster < num_clusters; ++cluster) {
      std::vector<int> local_tracks;
      std::vector<int> local_dets;
      for (int i = 0; i < a; ++i)
        if (labels[i] == cluster) local_tracks.push_back(i);
      for (int j = 0; j < b; ++j)
        if (labels[a + j] == cluster) local_dets.push_back(j);
      if (local_tracks.empty() || local_dets.empty()) continue;

      MatX local_cost(local_tracks.size(), local_dets.size());
      BoolMat local_forbidden(local_tracks.size(), local_dets.size());
      for (std::size_t i = 0; i < local_tracks.size(); ++i) {
        for (std::size_t j = 0; j < local_dets.size(); ++j) {
          local_cost(i, j) = problem.cost(local_tracks[i], local_dets[j]);
          local_forbidden(i, j) = problem.forbidden(local_tracks[i], local_dets[j]);
        }
      }

      const Assignment assignment = hungarian(local_cost, local_forbidden);
      for (const auto& [li, lj] : assignment.pairs) {
        const int ti = local_tracks[li];
        const int dj = local_dets[lj];
        if (problem.gated(ti, dj) && similarity_costs != nullptr &&
            (*similarity_costs)(ti, dj) > config.t_c) {
          continue;  // gate rejected: track misses, detection starts fresh
        }
        result.matches.emplace_back(ti, dj);
        track_matched[ti] = true;
        det_matched[dj] = true;
      }
    }
  }

  std::sort(result.matches.begin(), result.matches.end());
  for (int i = 0; i < a; ++i)
    if (!track_matched[i]) result.unmatched_tracks.push_back(i);
  for (int j = 0; j < b; ++j)
    if (!det_matched[j]) result.unmatched_detections.push_back(j);
  return result;
}

std::vector<int> lifecycle_step(TrackerState& state, const AssociationResult& result,
                                const std::vector<InstanceDescriptor>& detections,
                                int scan_t) {
  const TrackerConfig& config = state.config;
  std::vector<int> det_track_ids(detections.size(), 0);

  for (const auto& [ti, dj] : result.matches) {
    Track& track = state.tracks[ti];
    track.descriptor = detections[dj];
    track.predicted_center = detection_prediction(detections[dj], config);
    track.misses = 0;
    track.age += 1;
    track.history.emplace_back(scan_t, detections[dj].instance_id);
    det_track_ids[dj] = track.track_id;
  }

  std::vector<bool> retire(state.tracks.size(), false);
  for (int ti : result.unmatched_tracks) {
    Track& track = state.tracks[ti];
    track.misses += 1;
    if (track.misses > config.retention) {
      retire[ti] = true;
      continue;
    }
    // Occlusion propagation: advance by the last observed temporal offset.
    if (config.use_offsets) {
      track.predicted_center += track.descriptor.temporal_offset();
    }
  }
  if (!state.tracks.empty()) {
    std::vector<Track> kept;
    kept.reserve(state.tracks.size());
    for (std::size_t i = 0; i < state.tracks.size(); ++i) {
      if (!retire[i]) kept.push_back(std::move(state.tracks[i]));
    }
    state.tracks = std::move(kept);
  }

  for (int dj : result.unmatched_detections) {
    Track track;
    track.track_id = state.next_track_id++;
    track.descriptor = detections[dj];
    track.predicted_center = detection_prediction(detections[dj], config);
    track.misses = 0;
    track.age = 1;
    track.history.emplace_back(scan_t, detections[dj].instance_id);
    det_track_ids[dj] = track.track_id;
    state.tracks.push_back(std::move(track));
  }
  return det_track_ids;
}

std::vector<std::vector<int>> run_tracker(const std::vector<SegmentedScan>& scans,
                                          const TrackerConfig& config,
                                          nets::InstanceNet* instance_net,
                                          nets::SimilarityHead* similarity) {
  if (!config.valid()) throw std::invalid_argument("run_tracker: invalid config");
  const bool with_similarity =
      config.use_similarity && instance_net != nullptr && similarity != nullptr;

  TrackerState state;
  state.config = config;

  std::vector<std::vector<int>> outputs;
  outputs.reserve(scans.size());
  int last_t = std::numeric_limits<int>::min();
  for (const SegmentedScan& seg : scans) {
    if (seg.scan.t <= last_t) {
      throw std::invalid_argument("run_tracker: scan timestamps must increase");
    }
    last_t = seg.scan.t;

    std::vector<InstanceDescriptor> detections =
        extract_moving_instances(seg, config.instance_dim);

    MatX sim_costs;
    const MatX* sim_ptr = nullptr;
    if (with_similarity && !detections.empty()) {
      nets::compute_instance_features(*instance_net, seg, detections);
      if (!state.tracks.empty()) {
        const int a = static_cast<int>(state.tracks.size());
        const int b = static_cast<int>(detections.size());
        MatX track_features(a, config.instance_dim);
        MatX2 track_centers(a, 2);
        for (int i = 0; i < a; ++i) {
          track_features.row(i) = state.tracks[i].descriptor.feature.transpose();
          track_centers.row(i) = state.tracks[i].predicted_center.transpose();
        }
        MatX det_features(b, config.instance_dim);
        MatX2 det_centers(b, 2);
        for (int j = 0; j < b; ++j) {
          det_features.row(j) = detections[j].feature.transpose();
          det_centers.row(j) = detection_center(detections[j], config).transpose();
        }
        const MatX scores = similarity->forward_eval(track_features, track_centers,
                                                     det_features, det_centers);
        sim_costs = nets::similarity_cost(scores, config.epsilon);
        sim_ptr = &sim_costs;
      }
    }

    const AssociationResult result = associate_scan(state, detections, sim_ptr);
    const std::vector<int> det_ids = lifecycle_step(state, result, detections, seg.scan.t);

    std::vector<int> point_ids(seg.size(), 0);
    for (std::size_t d = 0; d < detections.size(); ++d) {
      for (int idx : detections[d].point_indices) point_ids[idx] = det_ids[d];
    }
    outputs.push_back(std::move(point_ids));
  }
  return outputs;
}

}  // namespace radar::assoc
