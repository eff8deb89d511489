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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "radar/assoc/dbscan.hpp"
#include "radar/geometry.hpp"
#include "radar/rng.hpp"

#include "radar/assoc/tracker.hpp"
#include "radar/metrics.hpp"
#include "radar/sim/simulator.hpp"

using namespace radar;
using namespace radar::assoc;

namespace {

InstanceDescriptor detection_at(int id, const Vec2& center,
                                const Vec2& next = Vec2::Zero(), bool has_next = false) {
  InstanceDescriptor d;
  d.instance_id = id;
  d.point_indices = {0};
  d.center = center;
  d.corrected_center = center;
  d.predicted_next_center = has_next ? next : center;
  d.feature = VecX::Zero(4);
  return d;
}

Track track_at(int id, const Vec2& predicted) {
  Track t;
  t.track_id = id;
  t.descriptor = detection_at(id, predicted);
  t.predicted_center = predicted;
  return t;
}

SequenceLabels to_labels(const std::vector<SegmentedScan>& scans,
                         const std::vector<std::vector<int>>& ids) {
  SequenceLabels labels;
  for (std::size_t t = 0; t < scans.size(); ++t) {
    labels.push_back({scans[t].semantics, ids[t]});
  }
  return labels;
}

}  // namespace

TEST_CASE("build_cost applies both distance thresholds") {
  TrackerConfig config;
  const std::vector<Track> tracks = {track_at(1, {0, 0})};
  const std::vector<InstanceDescriptor> detections = {
      detection_at(1, {0, 0}), detection_at(2, {7, 0}), detection_at(3, {12, 0})};
  const AssignmentProblem problem = build_cost(tracks, detections, config);
  CHECK_FALSE(problem.forbidden(0, 0));
  CHECK_FALSE(problem.gated(0, 0));
  CHECK_FALSE(problem.forbidden(0, 1));
  CHECK(problem.gated(0, 1));
  CHECK(problem.forbidden(0, 2));
  CHECK(problem.cost(0, 1) == doctest::Approx(7.0));
}

TEST_CASE("associate_scan: trivial matches and empty sides") {
  TrackerState state;
  state.config = TrackerConfig{};

  const std::vector<InstanceDescriptor> detections = {detection_at(1, {3, 3})};
  const AssociationResult none = associate_scan(state, detections, nullptr);
  CHECK(none.matches.empty());
  CHECK(none.unmatched_detections == std::vector<int>{0});

  state.tracks = {track_at(1, {3, 3})};
  const AssociationResult hit = associate_scan(state, detections, nullptr);
  REQUIRE(hit.matches.size() == 1);
  CHECK(hit.matches[0] == std::make_pair(0, 0));

  const AssociationResult empty = associate_scan(state, {}, nullptr);
  CHECK(empty.unmatched_tracks == std::vector<int>{0});
}

TEST_CASE("similarity gate rejects a distance-preferred swap in the gated band") {
  TrackerConfig config;
  TrackerState state;
  state.config = config;
  state.tracks = {track_at(1, {0, 0}), track_at(2, {14, 0})};
  // All four distances sit in (t_d1, t_d2] and the swapped matching is
  // cheaper: 6.8 + 6.8 versus 7.2 + 7.2.
  const std::vector<InstanceDescriptor> detections = {detection_at(1, {7.2, 0}),
                                                      detection_at(2, {6.8, 0})};

  // Geometric-only association takes the swap.
  const AssociationResult geometric = associate_scan(state, detections, nullptr);
  REQUIRE(geometric.matches.size() == 2);
  CHECK(geometric.matches[0] == std::make_pair(0, 1));
  CHECK(geometric.matches[1] == std::make_pair(1, 0));

  // An oracle similarity that recognizes the identities rejects both swap
  // matches, so no cross-identity track forms.
  MatX sim_costs(2, 2);
  sim_costs << 1.0, 5.0, 5.0, 1.0;
  const AssociationResult gated = associate_scan(state, detections, &sim_costs);
  CHECK(gated.matches.empty());
  CHECK(gated.unmatched_tracks == std::vector<int>{0, 1});
  CHECK(gated.unmatched_detections == std::vector<int>{0, 1});

  // A gate rejection never falls back to another geometric candidate.
  MatX one_sided(2, 2);
  one_sided << 1.0, 5.0, 5.0, 5.0;
  const AssociationResult partial = associate_scan(state, detections, &one_sided);
  CHECK(partial.matches.empty());
}

TEST_CASE("associate_scan never matches across clusters") {
  TrackerConfig config;
  config.cluster_radius = 5.0;
  TrackerState state;
  state.config = config;
  state.tracks = {track_at(1, {0, 0}), track_at(2, {100, 0})};
  const std::vector<InstanceDescriptor> detections = {detection_at(1, {2, 0}),
                                                      detection_at(2, {102, 0})};
  const AssociationResult result = associate_scan(state, detections, nullptr);
  REQUIRE(result.matches.size() == 2);
  CHECK(result.matches[0] == std::make_pair(0, 0));
  CHECK(result.matches[1] == std::make_pair(1, 1));
}

TEST_CASE("associate_scan invariants on random problems") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    TrackerConfig config;
    TrackerState state;
    state.config = config;
    const int a = rng.index(6);
    const int b = rng.index(7);
    for (int i = 0; i < a; ++i) {
      state.tracks.push_back(
          track_at(i + 1, {rng.uniform(-30, 30), rng.uniform(-30, 30)}));
    }
    std::vector<InstanceDescriptor> detections;
    for (int j = 0; j < b; ++j) {
      detections.push_back(
          detection_at(j + 1, {rng.uniform(-30, 30), rng.uniform(-30, 30)}));
    }
    MatX sim_costs(a, b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) sim_costs(i, j) = rng.uniform(0.5, 4.0);
    const MatX* sim = (a && b && rng.bernoulli(0.5)) ? &sim_costs : nullptr;
    const AssociationResult result = associate_scan(state, detections, sim);

    // One-to-one partial matching over allowed, gate-accepted pairs only,
    // and never across DBSCAN clusters of the pooled centers.
    std::vector<Vec2> pooled;
    for (const Track& t : state.tracks) pooled.push_back(t.predicted_center);
    for (const auto& d : detections) pooled.push_back(d.corrected_center);
    const std::vector<int> labels =
        pooled.empty() ? std::vector<int>{}
                       : dbscan(pooled, config.cluster_radius, config.min_pts);
    std::set<int> used_tracks, used_dets;
    for (const auto& [ti, dj] : result.matches) {
      CHECK(used_tracks.insert(ti).second);
      CHECK(used_dets.insert(dj).second);
      const double d = euclidean_2d(state.tracks[ti].predicted_center,
                                    detections[dj].corrected_center);
      CHECK(d <= config.t_d2);
      CHECK(labels[ti] == labels[a + dj]);
      if (sim != nullptr && d > config.t_d1) {
        CHECK((*sim)(ti, dj) <= config.t_c);
      }
    }
    CHECK(result.matches.size() + result.unmatched_tracks.size() ==
          static_cast<std::size_t>(a));
    CHECK(result.matches.size() + result.unmatched_detections.size() ==
          static_cast<std::size_t>(b));
  }
}

TEST_CASE("lifecycle: misses, occlusion propagation, retirement, fresh ids") {
  TrackerConfig config;
  TrackerState state;
  state.config = config;
  state.next_track_id = 1;

  // Spawn from one detection that moves (+1, 0) per scan.
  const Vec2 v(1.0, 0.0);
  InstanceDescriptor d0 = detection_at(5, {0, 0}, {1, 0}, true);
  AssociationResult spawn;
  spawn.unmatched_detections = {0};
  const auto ids0 = lifecycle_step(state, spawn, {d0}, 0);
  CHECK(ids0 == std::vector<int>{1});
  REQUIRE(state.tracks.size() == 1);
  CHECK(state.tracks[0].predicted_center.isApprox(Vec2(1, 0)));

  // Three missed scans propagate the predicted center by the offset each time.
  for (int miss = 1; miss <= 3; ++miss) {
    AssociationResult missres;
    missres.unmatched_tracks = {0};
    lifecycle_step(state, missres, {}, miss);
    CHECK(state.tracks[0].misses == miss);
    CHECK(state.tracks[0].predicted_center.isApprox(Vec2(1.0 + miss, 0.0)));
  }

  // A match resets the counter and replaces the descriptor.
  InstanceDescriptor d4 = detection_at(6, {4, 0}, {5, 0}, true);
  AssociationResult match;
  match.matches = {{0, 0}};
  const auto ids4 = lifecycle_step(state, match, {d4}, 4);
  CHECK(ids4 == std::vector<int>{1});
  CHECK(state.tracks[0].misses == 0);
  CHECK(state.tracks[0].descriptor.instance_id == 6);
  CHECK(state.tracks[0].predicted_center.isApprox(Vec2(5, 0)));
  CHECK(state.tracks[0].history.size() == 2);

  // Thirteen consecutive misses retire the track (retention 12).
  for (int miss = 1; miss <= 13; ++miss) {
    AssociationResult missres;
    missres.unmatched_tracks = {0};
    lifecycle_step(state, missres, {}, 4 + miss);
    if (miss <= 12) {
      REQUIRE(state.tracks.size() == 1);
      CHECK(state.tracks[0].misses == miss);
    }
  }
  CHECK(state.tracks.empty());

  // A new detection far from everything gets the next id, never a reused one.
  AssociationResult fresh;
  fresh.unmatched_detections = {0};
  const auto ids5 = lifecycle_step(state, fresh, {detection_at(9, {50, 50})}, 20);
  CHECK(ids5 == std::vector<int>{2});
}

TEST_CASE("run_tracker: single agent keeps one id through the sequence") {
  sim::ScenarioConfig config = sim::scenario_library("single");
  config.seed = 21;
  const sim::SimSequence seq = sim::generate_sequence(config);
  const auto scans = sim::segmentation(seq);
  TrackerConfig tracker_config;
  const auto ids = assoc::run_tracker(scans, tracker_config);

  std::set<int> seen;
  for (std::size_t t = 0; t < scans.size(); ++t) {
    for (int i = 0; i < scans[t].size(); ++i) {
      if (scans[t].semantics[i] == Semantic::kMoving) {
        CHECK(ids[t][i] > 0);
        seen.insert(ids[t][i]);
      } else {
        CHECK(ids[t][i] == 0);
      }
    }
  }
  CHECK(seen.size() == 1);

  const auto report = metrics::evaluate({to_labels(scans, ids)},
                                        {sim::ground_truth_labels(seq)});
  CHECK(report.s_assoc == doctest::Approx(1.0));
  CHECK(report.num_switches == 0);
}

TEST_CASE("run_tracker: co-instance points share an id and ids never repeat") {
  sim::ScenarioConfig config = sim::scenario_library("spawn_despawn");
  config.seed = 8;
  const sim::SimSequence seq = sim::generate_sequence(config);
  const auto scans = sim::segmentation(seq);
  const auto ids = assoc::run_tracker(scans, TrackerConfig{});

  for (std::size_t t = 0; t < scans.size(); ++t) {
    std::map<int, int> instance_to_track;
    for (int i = 0; i < scans[t].size(); ++i) {
      if (scans[t].instance_ids[i] == 0) continue;
      const auto it = instance_to_track.find(scans[t].instance_ids[i]);
      if (it == instance_to_track.end()) {
        instance_to_track[scans[t].instance_ids[i]] = ids[t][i];
      } else {
        CHECK(it->second == ids[t][i]);
      }
    }
  }
}

TEST_CASE("run_tracker: agent re-entering after 15 absent scans gets a new id") {
  sim::ScenarioConfig config = sim::scenario_library("occlusion");
  config.scans = 40;
  config.agents[0].occlusions = {{10, 25}};  // 15 missing scans
  config.clutter_rate = 0.0;
  const sim::SimSequence seq = sim::generate_sequence(config);
  const auto scans = sim::segmentation(seq);
  const auto ids = assoc::run_tracker(scans, TrackerConfig{});

  std::set<int> before, after;
  for (int t = 0; t < 10; ++t)
    for (int i = 0; i < scans[t].size(); ++i)
      if (ids[t][i] > 0) before.insert(ids[t][i]);
  for (int t = 25; t < 40; ++t)
    for (int i = 0; i < scans[t].size(); ++i)
      if (ids[t][i] > 0) after.insert(ids[t][i]);
  CHECK(before.size() == 1);
  CHECK(after.size() == 1);
  CHECK(*before.begin() != *after.begin());
}

TEST_CASE("run_tracker: occlusion bridged by temporal-offset propagation") {
  sim::ScenarioConfig config = sim::scenario_library("occlusion");
  config.clutter_rate = 0.0;  // 3-scan occlusion window, exact offsets
  const sim::SimSequence seq = sim::generate_sequence(config);
  const auto scans = sim::segmentation(seq);
  const auto ids = assoc::run_tracker(scans, TrackerConfig{});

  std::set<int> all_ids;
  for (const auto& scan_ids : ids)
    for (int id : scan_ids)
      if (id > 0) all_ids.insert(id);
  CHECK(all_ids.size() == 1);
}

TEST_CASE("run_tracker rejects non-monotone timestamps") {
  sim::ScenarioConfig config = sim::scenario_library("single");
  const sim::SimSequence seq = sim::generate_sequence(config);
  auto scans = sim::segmentation(seq);
  scans[3].scan.t = scans[2].scan.t;
  CHECK_THROWS_AS(assoc::run_tracker(scans, TrackerConfig{}), std::invalid_argument);
}

TEST_CASE("run_tracker without offsets tracks slow motion by raw centers") {
  sim::ScenarioConfig config = sim::scenario_library("single");
  config.seed = 31;
  const sim::SimSequence seq = sim::generate_sequence(config);
  const auto scans = sim::segmentation(seq);
  TrackerConfig no_offsets;
  no_offsets.use_offsets = false;
  const auto ids = assoc::run_tracker(scans, no_offsets);
  std::set<int> seen;
  for (const auto& scan_ids : ids)
    for (int id : scan_ids)
      if (id > 0) seen.insert(id);
  // 0.9 m per scan stays within t_d1, so raw centers suffice here.
  CHECK(seen.size() == 1);
}
