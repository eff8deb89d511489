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

#include "radar/nets/instance_net.hpp"
#include "radar/nets/offset_head.hpp"
#include "radar/nets/similarity.hpp"
#include "radar/nn/adamw.hpp"
#include "radar/types.hpp"

namespace radar::nets {

/// The three trainable heads plus their construction dims, bundled for
/// checkpointing. The offset head consumes 4 raw features + 2 coordinates.
struct NetworkBundle {
  OffsetHead offset_head;
  InstanceNet instance_net;
  SimilarityHead similarity;

  explicit NetworkBundle(const TrackerConfig& config)
      : offset_head(config.feature_dim + 2, config.hidden_dim),
        instance_net(config.feature_dim, config.hidden_dim, config.instance_dim,
                     config.n_local),
        similarity(config.instance_dim) {}

  void init(std::uint64_t seed) {
    Rng rng(seed);
    offset_head.init(rng);
    instance_net.init(rng);
    similarity.init(rng);
  }

  std::vector<nn::StateEntry> state() {
    std::vector<nn::StateEntry> entries;
    offset_head.collect_state("offset_head", entries);
    instance_net.collect_state("instance_net", entries);
    similarity.collect_state("similarity_head", entries);
    return entries;
  }
};

// ---------------------------------------------------------------------------
// Offset-head training
// ---------------------------------------------------------------------------

/// One scan's regression targets. Center columns hold, per point, the center
/// of the instance the point belongs to; masks select the supervised rows.
struct OffsetExample {
  MatX input;     // n x 6
  MatX2 points;   // n x 2
  MatX2 centers_now;
  std::vector<std::uint8_t> mask_now;
  MatX2 centers_next;
  std::vector<std::uint8_t> mask_next;
};

/// Builds examples from ground-truth segmentation: targets come from the
/// stored offset fields, temporal rows are masked where the track has no
/// points in the next scan.
std::vector<OffsetExample> make_offset_examples(
    const std::vector<SegmentedScan>& scans,
    const std::vector<std::vector<std::uint8_t>>& temporal_valid);

struct OffsetTrainConfig {
  int steps = 500;
  double lr = 1e-3;
  double weight_decay = 0.01;
};

struct OffsetTrainResult {
  std::vector<double> loss_curve;
  double mae_standard = 0.0;  // eval-mode mean absolute error, meters
  double mae_temporal = 0.0;
};

OffsetTrainResult train_offset_heads(OffsetHead& head,
                                     const std::vector<OffsetExample>& examples,
                                     const OffsetTrainConfig& config);

// ---------------------------------------------------------------------------
// Similarity training
// ---------------------------------------------------------------------------

/// A consecutive scan pair with extracted instances and their ground-truth
/// track ids (0 = none, e.g. static augmentation clusters). Targets are
/// positive iff both sides carry the same nonzero id.
struct PairExample {
  SegmentedScan first_scan, second_scan;
  std::vector<InstanceDescriptor> first, second;
  std::vector<int> first_gt, second_gt;
};

/// Builds scan-pair examples; static points are clustered (DBSCAN, eps =
/// cluster radius) and up to `max_static_instances` clusters per scan join
/// the instance lists as all-negative augmentation. `max_gap` adds pairs
/// (t, t+2) ... (t, t+max_gap) so the similarity also sees the drifted
/// centers an occluded track presents at reacquisition.
std::vector<PairExample> make_pair_examples(
    const std::vector<SegmentedScan>& scans,
    const std::vector<std::vector<int>>& track_ids, const TrackerConfig& config,
    int max_static_instances = 3, int max_gap = 1);

struct SimilarityTrainConfig {
  int steps = 500;
  int batch_pairs = 8;
  double lr = 1e-3;
  double weight_decay = 0.01;
  double positive_weight = 4.0;  // BCE weight of correspondence entries
  std::uint64_t seed = 1;
};

struct SimilarityTrainResult {
  std::vector<double> loss_curve;
};

/// Joint training of the instance network and similarity head with BCE
/// against the track correspondence. Throws if the dataset carries no
/// positive pair.
SimilarityTrainResult train_similarity(InstanceNet& net, SimilarityHead& head,
                                       const std::vector<PairExample>& dataset,
                                       const SimilarityTrainConfig& config);

struct PairScoreStats {
  double mean_true = 0.0;
  double mean_false = 0.0;
  int n_true = 0;
  int n_false = 0;
};

/// Eval-mode scores over a dataset, split by target.
PairScoreStats evaluate_pair_scores(InstanceNet& net, SimilarityHead& head,
                                    const std::vector<PairExample>& dataset);

/// Eval-mode similarity matrix of one pair example (first side as queries).
MatX pair_scores(InstanceNet& net, SimilarityHead& head, const PairExample& pair);

}  // namespace radar::nets
