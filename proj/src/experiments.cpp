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

#include "radar/experiments.hpp"

#include "radar/assoc/tracker.hpp"
#include "radar/metrics.hpp"

namespace radar::experiments {

namespace {

std::vector<std::vector<int>> track_ids_of(const sim::SimSequence& seq) {
  std::vector<std::vector<int>> ids;
  ids.reserve(seq.size());
  for (const sim::SimScan& s : seq) ids.push_back(s.track_ids);
  return ids;
}

sim::ScenarioConfig resolve_scenario(const std::string& name) {
  if (name == "fast") return fast_agent_scenario();
  return sim::scenario_library(name);
}

}  // namespace

void train_for_protocol(const AblationProtocol& protocol, const TrackerConfig& config,
                        nets::InstanceNet& net, nets::SimilarityHead& head) {
  std::vector<nets::PairExample> dataset;
  for (int s = 0; s < protocol.train_sequences; ++s) {
    sim::ScenarioConfig scenario = resolve_scenario(protocol.scenario);
    scenario.seed = protocol.train_seed_base + static_cast<std::uint64_t>(s);
    const sim::SimSequence clean = sim::generate_sequence(scenario);
    const sim::SimSequence corrupted = sim::corrupt_segmentation(
        clean, protocol.corruption, scenario.seed + 7919);
    const auto pairs = nets::make_pair_examples(
        sim::segmentation(corrupted), track_ids_of(corrupted), config, 2,
        protocol.pair_gap);
    dataset.insert(dataset.end(), pairs.begin(), pairs.end());
  }

  nets::SimilarityTrainConfig train_config;
  train_config.steps = protocol.train_steps;
  train_config.batch_pairs = protocol.batch_pairs;
  train_config.positive_weight = protocol.positive_weight;
  train_config.seed = protocol.init_seed + 13;
  nets::train_similarity(net, head, dataset, train_config);
}

AblationRow evaluate_variant(const AblationProtocol& protocol,
                             const TrackerConfig& config, const TrackerVariant& variant,
                             nets::InstanceNet* net, nets::SimilarityHead* head) {
  AblationRow row;
  row.name = variant.name;
  double sum_assoc = 0.0;
  double sum_lstq = 0.0;
  for (int s = 0; s < protocol.eval_seeds; ++s) {
    sim::ScenarioConfig scenario = resolve_scenario(protocol.scenario);
    scenario.seed = protocol.eval_seed_base + static_cast<std::uint64_t>(s);
    const sim::SimSequence clean = sim::generate_sequence(scenario);
    const sim::SimSequence corrupted = sim::corrupt_segmentation(
        clean, protocol.corruption, scenario.seed + 104729);

    TrackerConfig variant_config = config;
    variant_config.use_similarity = variant.use_similarity;
    variant_config.use_offsets = variant.use_offsets;
    const auto scans = sim::segmentation(corrupted);
    const auto ids = assoc::run_tracker(
        scans, variant_config, variant.use_similarity ? net : nullptr,
        variant.use_similarity ? head : nullptr);

    SequenceLabels pred;
    for (std::size_t t = 0; t < scans.size(); ++t) {
      pred.push_back({scans[t].semantics, ids[t]});
    }
    const metrics::MetricReport report =
        metrics::evaluate({pred}, {sim::ground_truth_labels(clean)});
    sum_assoc += report.s_assoc;
    sum_lstq += report.lstq;
  }
  row.s_assoc = sum_assoc / protocol.eval_seeds;
  row.lstq = sum_lstq / protocol.eval_seeds;
  return row;
}

std::vector<AblationRow> ablation_matrix(const AblationProtocol& protocol,
                                         const TrackerConfig& config,
                                         nets::InstanceNet* net,
                                         nets::SimilarityHead* head) {
  const TrackerVariant variants[] = {
      {"geometric raw-centers", false, false},
      {"geometric offsets", false, true},
      {"combined raw-centers", true, false},
      {"combined offsets", true, true},
  };
  std::vector<AblationRow> rows;
  for (const TrackerVariant& v : variants) {
    rows.push_back(evaluate_variant(protocol, config, v, net, head));
  }
  return rows;
}

sim::ScenarioConfig fast_agent_scenario() {
  sim::ScenarioConfig config;
  config.name = "fast";
  sim::AgentSpec a;
  a.start = {-65.0, 10.0};
  a.velocity = {11.0, 0.0};
  a.mean_points = 4;
  a.rcs_mean = 14.0;
  sim::AgentSpec b;
  b.start = {65.0, -10.0};
  b.velocity = {-11.0, 0.0};
  b.mean_points = 4;
  b.rcs_mean = 6.0;
  config.agents = {a, b};
  config.scans = 12;
  config.dt = 1.0;
  config.clutter_rate = 2.0;
  config.position_noise = 0.1;
  config.field_half_extent = 70.0;
  return config;
}

}  // namespace radar::experiments
