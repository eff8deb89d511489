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

#include "radar/geometry.hpp"
#include "radar/nn/losses.hpp"
#include "radar/sim/simulator.hpp"

using namespace radar;
using namespace radar::sim;

namespace {

bool bitwise_equal(const SimSequence& a, const SimSequence& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].seg.size() != b[t].seg.size()) return false;
    for (int i = 0; i < a[t].seg.size(); ++i) {
      const Point& pa = a[t].seg.scan.points[i];
      const Point& pb = b[t].seg.scan.points[i];
      if (pa.x != pb.x || pa.y != pb.y || pa.doppler != pb.doppler || pa.rcs != pb.rcs)
        return false;
      if (a[t].seg.instance_ids[i] != b[t].seg.instance_ids[i]) return false;
    }
    if (a[t].seg.offsets != b[t].seg.offsets) return false;
    if (a[t].seg.temporal_offsets != b[t].seg.temporal_offsets) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("same seed is bitwise identical, different seeds differ") {
  ScenarioConfig config = scenario_library("single");
  config.position_noise = 0.1;
  config.seed = 42;
  const SimSequence a = generate_sequence(config);
  const SimSequence b = generate_sequence(config);
  CHECK(bitwise_equal(a, b));

  config.seed = 43;
  const SimSequence c = generate_sequence(config);
  CHECK_FALSE(bitwise_equal(a, c));
}

TEST_CASE("ground-truth offsets zero the offset loss exactly") {
  ScenarioConfig config = scenario_library("single");
  config.position_noise = 0.15;
  config.seed = 3;
  const SimSequence seq = generate_sequence(config);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const SimScan& scan = seq[t];
    std::vector<int> moving;
    for (int i = 0; i < scan.seg.size(); ++i) {
      if (scan.seg.semantics[i] == Semantic::kMoving) moving.push_back(i);
    }
    if (moving.empty()) continue;
    MatX2 offsets(moving.size(), 2), centers(moving.size(), 2), points(moving.size(), 2);
    for (std::size_t j = 0; j < moving.size(); ++j) {
      const int i = moving[j];
      points.row(j) = scan.seg.scan.points[i].position().transpose();
      offsets.row(j) = scan.seg.offsets.row(i);
      centers.row(j) = points.row(j) + scan.seg.offsets.row(i);
    }
    CHECK(nn::offset_l1_loss(offsets, centers, points) == 0.0);

    // The stored center target must be the realized member mean.
    std::map<int, std::vector<Vec2>> members;
    for (int i : moving) {
      members[scan.seg.instance_ids[i]].push_back(scan.seg.scan.points[i].position());
    }
    for (int i : moving) {
      const Vec2 center = instance_center(members[scan.seg.instance_ids[i]]);
      const Vec2 target = scan.seg.scan.points[i].position() +
                          scan.seg.offsets.row(i).transpose();
      CHECK((center - target).norm() < 1e-12);
    }
  }
}

TEST_CASE("temporal offsets point to the next-scan realized center") {
  ScenarioConfig config = scenario_library("single");
  config.seed = 5;
  const SimSequence seq = generate_sequence(config);
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    std::map<int, std::vector<Vec2>> next_members;
    for (int i = 0; i < seq[t + 1].seg.size(); ++i) {
      if (seq[t + 1].seg.semantics[i] == Semantic::kMoving) {
        next_members[seq[t + 1].seg.instance_ids[i]].push_back(
            seq[t + 1].seg.scan.points[i].position());
      }
    }
    for (int i = 0; i < seq[t].seg.size(); ++i) {
      if (!seq[t].temporal_valid[i]) continue;
      const Vec2 target = seq[t].seg.scan.points[i].position() +
                          seq[t].seg.temporal_offsets.row(i).transpose();
      const Vec2 center = instance_center(next_members.at(seq[t].seg.instance_ids[i]));
      CHECK((center - target).norm() < 1e-12);
    }
  }
}

TEST_CASE("constant-velocity agent: temporal offset advances by v*dt") {
  ScenarioConfig config;
  config.name = "kinematics";
  AgentSpec agent;
  agent.start = {10.0, 0.0};
  agent.velocity = {2.0, 0.0};
  agent.extent = {0.0, 0.0};  // no scatter: every member sits on the center
  agent.mean_points = 3;
  config.agents = {agent};
  config.scans = 10;
  config.dt = 0.5;
  config.clutter_rate = 0.0;
  const SimSequence seq = generate_sequence(config);
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    for (int i = 0; i < seq[t].seg.size(); ++i) {
      REQUIRE(seq[t].temporal_valid[i] == 1);
      const Vec2 shift = seq[t].seg.temporal_offsets.row(i).transpose() -
                         seq[t].seg.offsets.row(i).transpose();
      CHECK((shift - Vec2(1.0, 0.0)).norm() < 1e-12);
    }
  }
}

TEST_CASE("radially receding agent reads positive Doppler equal to its speed") {
  ScenarioConfig config;
  config.name = "radial";
  AgentSpec agent;
  agent.start = {10.0, 0.0};
  agent.velocity = {5.0, 0.0};
  agent.mean_points = 4;
  config.agents = {agent};
  config.scans = 5;
  config.dt = 0.5;
  config.clutter_rate = 0.0;
  const SimSequence seq = generate_sequence(config);
  for (const SimScan& scan : seq) {
    for (const Point& p : scan.seg.scan.points) {
      CHECK(p.doppler == doctest::Approx(5.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("agents vanish during occlusion windows and after death") {
  ScenarioConfig config = scenario_library("occlusion");
  config.seed = 1;
  const SimSequence seq = generate_sequence(config);
  for (int t = 0; t < config.scans; ++t) {
    bool has_agent = false;
    for (int i = 0; i < seq[t].seg.size(); ++i) {
      has_agent = has_agent || seq[t].seg.instance_ids[i] == 1;
    }
    const bool occluded = t >= 8 && t < 11;
    CHECK(has_agent == !occluded);
  }
}

TEST_CASE("corruption with all-zero rates is the identity") {
  ScenarioConfig config = scenario_library("parallel");
  config.seed = 9;
  const SimSequence gt = generate_sequence(config);
  const SimSequence out = corrupt_segmentation(gt, {}, 123);
  CHECK(bitwise_equal(gt, out));
}

TEST_CASE("semantic flip rate one inverts every label") {
  ScenarioConfig config = scenario_library("single");
  config.seed = 2;
  const SimSequence gt = generate_sequence(config);
  CorruptionRates rates;
  rates.semantic_flip = 1.0;
  const SimSequence out = corrupt_segmentation(gt, rates, 7);
  for (std::size_t t = 0; t < gt.size(); ++t) {
    for (int i = 0; i < gt[t].seg.size(); ++i) {
      CHECK(gt[t].seg.semantics[i] != out[t].seg.semantics[i]);
      if (out[t].seg.semantics[i] == Semantic::kMoving) {
        CHECK(out[t].seg.instance_ids[i] > 0);
      } else {
        CHECK(out[t].seg.instance_ids[i] == 0);
      }
    }
  }
}

TEST_CASE("split rate one refines a two-instance scan into four instances") {
  ScenarioConfig config = scenario_library("parallel");
  config.clutter_rate = 0.0;
  config.seed = 4;
  const SimSequence gt = generate_sequence(config);
  CorruptionRates rates;
  rates.instance_split = 1.0;
  const SimSequence out = corrupt_segmentation(gt, rates, 11);

  const SimScan& before = gt[3];
  const SimScan& after = out[3];
  std::set<int> ids_before(before.seg.instance_ids.begin(),
                           before.seg.instance_ids.end());
  std::set<int> ids_after(after.seg.instance_ids.begin(), after.seg.instance_ids.end());
  CHECK(ids_before.size() == 2);
  CHECK(ids_after.size() == 4);
  // Refinement: points sharing an id afterwards shared one before.
  for (int i = 0; i < before.seg.size(); ++i) {
    for (int j = i + 1; j < before.seg.size(); ++j) {
      if (after.seg.instance_ids[i] == after.seg.instance_ids[j]) {
        CHECK(before.seg.instance_ids[i] == before.seg.instance_ids[j]);
      }
    }
  }
}

TEST_CASE("merge rate one joins nearby instances") {
  ScenarioConfig config;
  config.name = "mergeable";
  AgentSpec a;
  a.start = {0.0, 0.0};
  a.velocity = {1.0, 0.0};
  a.mean_points = 3;
  AgentSpec b = a;
  b.start = {6.0, 0.0};
  config.agents = {a, b};
  config.scans = 3;
  config.clutter_rate = 0.0;
  const SimSequence gt = generate_sequence(config);
  CorruptionRates rates;
  rates.instance_merge = 1.0;
  const SimSequence out = corrupt_segmentation(gt, rates, 3);
  for (const SimScan& scan : out) {
    std::set<int> ids;
    for (int id : scan.seg.instance_ids)
      if (id > 0) ids.insert(id);
    CHECK(ids.size() == 1);
  }
}

TEST_CASE("scenario library: canned names and their advertised shapes") {
  CHECK_THROWS_AS(scenario_library("nope"), std::invalid_argument);

  const ScenarioConfig single = scenario_library("single");
  CHECK(single.agents.size() == 1);
  CHECK(single.scans == 20);
  CHECK(single.position_noise == 0.0);

  const ScenarioConfig sp = scenario_library("single_point");
  const SimSequence seq = generate_sequence(sp);
  for (const SimScan& scan : seq) {
    std::map<int, int> counts;
    for (int id : scan.seg.instance_ids)
      if (id > 0) ++counts[id];
    for (const auto& [id, n] : counts) CHECK(n == 1);
  }
}

TEST_CASE("crossing scenario dips into the gated band and no lower") {
  ScenarioConfig config = scenario_library("crossing");
  config.position_noise = 0.0;
  config.clutter_rate = 0.0;
  const SimSequence seq = generate_sequence(config);
  double min_distance = 1e9;
  for (const SimScan& scan : seq) {
    std::map<int, std::vector<Vec2>> members;
    for (int i = 0; i < scan.seg.size(); ++i) {
      if (scan.seg.instance_ids[i] > 0) {
        members[scan.seg.instance_ids[i]].push_back(
            scan.seg.scan.points[i].position());
      }
    }
    if (members.size() < 2) continue;
    const Vec2 c1 = instance_center(members.at(1));
    const Vec2 c2 = instance_center(members.at(2));
    min_distance = std::min(min_distance, euclidean_2d(c1, c2));
  }
  CHECK(min_distance > 5.0);
  CHECK(min_distance <= 10.0);
}

TEST_CASE("every moving point belongs to exactly one ground-truth track") {
  ScenarioConfig config = scenario_library("spawn_despawn");
  config.seed = 6;
  const SimSequence seq = generate_sequence(config);
  for (const SimScan& scan : seq) {
    for (int i = 0; i < scan.seg.size(); ++i) {
      if (scan.seg.semantics[i] == Semantic::kMoving) {
        CHECK(scan.track_ids[i] > 0);
      } else {
        CHECK(scan.track_ids[i] == 0);
      }
    }
  }
}
