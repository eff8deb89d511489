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
#include <vector>

#include "radar/nets/training.hpp"
#include "radar/sim/simulator.hpp"
#include "radar/types.hpp"

namespace radar::experiments {

/// Shared protocol for the association ablations: scenarios are generated,
/// their segmentation corrupted (offset noise plus occasional semantic
/// flips), and the tracker is scored against the clean ground truth.
struct AblationProtocol {
  std::string scenario = "crossing";
  sim::CorruptionRates corruption{0.20, 0.0, 0.0, 0.3};
  int eval_seeds = 10;
  std::uint64_t eval_seed_base = 500;
  // Similarity training on the same corrupted distribution.
  int train_sequences = 4;
  std::uint64_t train_seed_base = 100;
  int train_steps = 600;
  int batch_pairs = 8;
  int pair_gap = 4;           // covers occlusion-length center drift
  double positive_weight = 6.0;
  std::uint64_t init_seed = 1;
};

/// Trains the instance network and similarity head on corrupted sequences of
/// the protocol's scenario family.
void train_for_protocol(const AblationProtocol& protocol, const TrackerConfig& config,
                        nets::InstanceNet& net, nets::SimilarityHead& head);

struct TrackerVariant {
  std::string name;
  bool use_similarity = true;
  bool use_offsets = true;
};

struct AblationRow {
  std::string name;
  double s_assoc = 0.0;
  double lstq = 0.0;
};

/// Mean scores of one tracker variant over the protocol's evaluation seeds.
/// Pass null networks for geometric-only variants.
AblationRow evaluate_variant(const AblationProtocol& protocol,
                             const TrackerConfig& config, const TrackerVariant& variant,
                             nets::InstanceNet* net, nets::SimilarityHead* head);

/// The canned 2x2 matrix: {geometric, combined} x {raw centers, offsets}.
std::vector<AblationRow> ablation_matrix(const AblationProtocol& protocol,
                                         const TrackerConfig& config,
                                         nets::InstanceNet* net,
                                         nets::SimilarityHead* head);

/// Fast-agent scenario for the temporal-offset ablation: motion far beyond
/// the association gates per scan, so raw-center association cannot follow.
sim::ScenarioConfig fast_agent_scenario();

}  // namespace radar::experiments
