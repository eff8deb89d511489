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

#include <cstdio>
#include <fstream>

#include "radar/io/jsonl.hpp"
#include "radar/nets/training.hpp"
#include "radar/nn/checkpoint.hpp"
#include "radar/sim/simulator.hpp"

using namespace radar;
using namespace radar::io;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/radar_io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::vector<StoredSequence> stored_from_sim(const sim::SimSequence& seq,
                                            const std::string& id) {
  StoredSequence sequence;
  sequence.id = id;
  for (const sim::SimScan& scan : seq) {
    StoredScan stored;
    stored.seg = scan.seg;
    stored.seg.scan.sequence_id = id;
    stored.track_ids = scan.track_ids;
    stored.temporal_valid = scan.temporal_valid;
    sequence.scans.push_back(std::move(stored));
  }
  return {sequence};
}

}  // namespace

TEST_CASE("empty file parses to zero sequences") {
  TempFile file("empty.jsonl");
  std::ofstream(file.path).close();
  CHECK(read_sequences(file.path).empty());
}

TEST_CASE("round trip of a generated scenario is lossless") {
  sim::ScenarioConfig config = sim::scenario_library("spawn_despawn");
  config.position_noise = 0.173;  // oddball doubles must survive the trip
  config.seed = 77;
  const sim::SimSequence seq = sim::generate_sequence(config);
  const auto stored = stored_from_sim(seq, "rt");

  TempFile file("roundtrip.jsonl");
  write_sequences(file.path, stored, "fp", true);
  const auto loaded = read_sequences(file.path);
  REQUIRE(loaded.size() == 1);
  REQUIRE(loaded[0].scans.size() == stored[0].scans.size());
  for (std::size_t t = 0; t < stored[0].scans.size(); ++t) {
    const StoredScan& a = stored[0].scans[t];
    const StoredScan& b = loaded[0].scans[t];
    REQUIRE(a.seg.size() == b.seg.size());
    for (int i = 0; i < a.seg.size(); ++i) {
      CHECK(a.seg.scan.points[i].x == b.seg.scan.points[i].x);
      CHECK(a.seg.scan.points[i].y == b.seg.scan.points[i].y);
      CHECK(a.seg.scan.points[i].doppler == b.seg.scan.points[i].doppler);
      CHECK(a.seg.scan.points[i].rcs == b.seg.scan.points[i].rcs);
      CHECK(a.seg.instance_ids[i] == b.seg.instance_ids[i]);
      CHECK(a.track_ids[i] == b.track_ids[i]);
      CHECK(a.seg.offsets(i, 0) == b.seg.offsets(i, 0));
      CHECK(a.seg.temporal_offsets(i, 1) == b.seg.temporal_offsets(i, 1));
    }
    // Temporal validity is reconstructed from track continuity.
    CHECK(a.temporal_valid == b.temporal_valid);
  }
}

TEST_CASE("duplicate (seq, t) is rejected with the offending line") {
  TempFile file("dup.jsonl");
  {
    std::ofstream out(file.path);
    out << R"({"seq":"a","t":0,"points":[]})" << "\n";
    out << R"({"seq":"a","t":0,"points":[]})" << "\n";
  }
  try {
    read_sequences(file.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("malformed JSON and invariant violations carry line numbers") {
  TempFile file("bad.jsonl");
  {
    std::ofstream out(file.path);
    out << R"({"seq":"a","t":0,"points":[]})" << "\n";
    out << "{not json}\n";
  }
  CHECK_THROWS_AS(read_sequences(file.path), ParseError);

  TempFile file2("badinv.jsonl");
  {
    std::ofstream out(file2.path);
    // moving point with instance id 0 violates the segmentation contract
    out << R"({"seq":"a","t":0,"points":[{"x":0,"y":0,"v":0,"rcs":0,"sem":1,"inst":0,"track":0}]})"
        << "\n";
  }
  try {
    read_sequences(file2.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("header line is skipped and prediction files omit offsets") {
  sim::ScenarioConfig config = sim::scenario_library("single");
  config.seed = 5;
  const sim::SimSequence seq = sim::generate_sequence(config);
  const auto stored = stored_from_sim(seq, "pred");

  TempFile file("pred.jsonl");
  write_sequences(file.path, stored, "abcd1234", false);
  {
    std::ifstream in(file.path);
    std::string first;
    std::getline(in, first);
    CHECK(first.find("header") != std::string::npos);
    CHECK(first.find("abcd1234") != std::string::npos);
    std::string second;
    std::getline(in, second);
    CHECK(second.find("\"ox\"") == std::string::npos);
  }
  const auto loaded = read_sequences(file.path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].scans[0].seg.offsets.isZero());
}

TEST_CASE("rows group by sequence and sort by t") {
  TempFile file("order.jsonl");
  {
    std::ofstream out(file.path);
    out << R"({"seq":"b","t":1,"points":[]})" << "\n";
    out << R"({"seq":"a","t":2,"points":[]})" << "\n";
    out << R"({"seq":"a","t":0,"points":[]})" << "\n";
  }
  const auto loaded = read_sequences(file.path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].id == "a");
  CHECK(loaded[0].scans[0].seg.scan.t == 0);
  CHECK(loaded[0].scans[1].seg.scan.t == 2);
  CHECK(loaded[1].id == "b");
}

TEST_CASE("config json round trip, overrides, unknown keys") {
  TrackerConfig config;
  config.t_c = 2.5;
  config.use_similarity = false;
  const std::string text = config_to_json_text(config);
  const TrackerConfig back = config_from_json_text(text);
  CHECK(back.t_c == 2.5);
  CHECK_FALSE(back.use_similarity);
  CHECK(back.t_d1 == config.t_d1);

  const TrackerConfig sparse = config_from_json_text(R"({"t_d1": 3.0})");
  CHECK(sparse.t_d1 == 3.0);
  CHECK(sparse.t_d2 == 10.0);

  CHECK_THROWS(config_from_json_text(R"({"bogus": 1})"));
  CHECK_THROWS(config_from_json_text(R"({"t_d1": 20.0})"));  // t_d1 > t_d2
}

TEST_CASE("config fingerprint is stable and sensitive") {
  TrackerConfig a, b;
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.t_c = 9.0;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
}

TEST_CASE("checkpoint round trip restores every tensor and key order is fixed") {
  TrackerConfig config;
  config.feature_dim = 4;
  config.hidden_dim = 6;
  config.instance_dim = 8;
  config.n_local = 3;
  nets::NetworkBundle bundle(config);
  bundle.init(99);

  TempFile file("ckpt.json");
  nn::save_checkpoint(file.path, bundle.state());

  nets::NetworkBundle other(config);
  other.init(1);
  nn::load_checkpoint(file.path, other.state());
  CHECK((other.instance_net.block1.input_proj.weight -
         bundle.instance_net.block1.input_proj.weight)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((other.similarity.query_proj.weight - bundle.similarity.query_proj.weight)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // Serialization is deterministic: same state, same bytes.
  CHECK(nn::checkpoint_to_string(bundle.state()) ==
        nn::checkpoint_to_string(other.state()));

  // Loading into mismatched shapes fails loudly.
  TrackerConfig bigger = config;
  bigger.instance_dim = 16;
  nets::NetworkBundle wrong(bigger);
  CHECK_THROWS(nn::load_checkpoint(file.path, wrong.state()));
}

TEST_CASE("metric report serializes the documented keys") {
  metrics::MetricReport report;
  report.lstq = 0.5;
  report.num_switches = 3;
  const std::string text = report_to_json_text(report);
  CHECK(text.find("\"lstq\"") != std::string::npos);
  CHECK(text.find("\"s_assoc\"") != std::string::npos);
  CHECK(text.find("\"num_switches\":3") != std::string::npos);
}
