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

#include "radar/nets/training.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "radar/assoc/dbscan.hpp"
#include "radar/geometry.hpp"
#include "radar/nn/losses.hpp"

namespace radar::nets {

std::vector<OffsetExample> make_offset_examples(
    const std::vector<SegmentedScan>& scans,
    const std::vector<std::vector<std::uint8_t>>& temporal_valid) {
  if (scans.size() != temporal_valid.size()) {
    throw std::invalid_argument("make_offset_examples: validity size mismatch");
  }
  std::vector<OffsetExample> examples;
  examples.reserve(scans.size());
  for (std::size_t s = 0; s < scans.size(); ++s) {
    const SegmentedScan& scan = scans[s];
    const int n = scan.size();
    if (n == 0) continue;
    OffsetExample ex;
    ex.input = nets::OffsetHead::build_input(scan.scan);
    ex.points = scan_positions(scan.scan);
    ex.centers_now = ex.points + scan.offsets;
    ex.centers_next = ex.points + scan.temporal_offsets;
    ex.mask_now.resize(n);
    ex.mask_next.resize(n);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      const bool moving = scan.semantics[i] == Semantic::kMoving;
      ex.mask_now[i] = moving ? 1 : 0;
      ex.mask_next[i] = (moving && temporal_valid[s][i]) ? 1 : 0;
      any = any || moving;
    }
    if (any) examples.push_back(std::move(ex));
  }
  return examples;
}

OffsetTrainResult train_offset_heads(OffsetHead& head,
                                     const std::vector<OffsetExample>& examples,
                                     const OffsetTrainConfig& config) {
  if (examples.empty()) {
    throw std::invalid_argument("train_offset_heads: no supervised scans");
  }

  // Full-batch training: one concatenated matrix keeps the batch-norm
  // statistics representative of the whole dataset.
  Eigen::Index total_rows = 0;
  for (const OffsetExample& ex : examples) total_rows += ex.input.rows();
  OffsetExample all;
  all.input.resize(total_rows, examples[0].input.cols());
  all.points.resize(total_rows, 2);
  all.centers_now.resize(total_rows, 2);
  all.centers_next.resize(total_rows, 2);
  all.mask_now.reserve(total_rows);
  all.mask_next.reserve(total_rows);
  Eigen::Index row = 0;
  for (const OffsetExample& ex : examples) {
    const Eigen::Index n = ex.input.rows();
    all.input.middleRows(row, n) = ex.input;
    all.points.middleRows(row, n) = ex.points;
    all.centers_now.middleRows(row, n) = ex.centers_now;
    all.centers_next.middleRows(row, n) = ex.centers_next;
    all.mask_now.insert(all.mask_now.end(), ex.mask_now.begin(), ex.mask_now.end());
    all.mask_next.insert(all.mask_next.end(), ex.mask_next.begin(), ex.mask_next.end());
    row += n;
  }
  const bool has_next = std::any_of(all.mask_next.begin(), all.mask_next.end(),
                                    [](std::uint8_t m) { return m != 0; });

  std::vector<nn::Param> params;
  head.collect_params("offset_head", params);
  nn::AdamWConfig opt_config;
  opt_config.lr = config.lr;
  opt_config.weight_decay = config.weight_decay;
  nn::AdamW optimizer(params, opt_config);

  OffsetTrainResult result;
  result.loss_curve.reserve(config.steps);
  for (int step = 0; step < config.steps; ++step) {
    optimizer.zero_grad();
    OffsetHead::Cache cache;
    const OffsetHead::Output out = head.forward(all.input, true, cache);
    const auto loss_now =
        nn::offset_l1_loss_grad(out.standard, all.centers_now, all.points, all.mask_now);
    double total = loss_now.loss;
    MatX2 grad_next = MatX2::Zero(total_rows, 2);
    if (has_next) {
      const auto loss_next = nn::offset_l1_loss_grad(out.temporal, all.centers_next,
                                                     all.points, all.mask_next);
      total += loss_next.loss;
      grad_next = loss_next.grad;
    }
    head.backward(loss_now.grad, grad_next, cache);
    optimizer.step();
    result.loss_curve.push_back(total);
  }

  // Eval-mode error over the same data.
  double abs_now = 0.0, abs_next = 0.0;
  long count_now = 0, count_next = 0;
  for (const OffsetExample& ex : examples) {
    const OffsetHead::Output out = head.forward_eval(ex.input);
    for (Eigen::Index i = 0; i < ex.input.rows(); ++i) {
      if (ex.mask_now[i]) {
        abs_now += (out.standard.row(i) - (ex.centers_now.row(i) - ex.points.row(i)))
                       .cwiseAbs()
                       .sum();
        count_now += 2;
      }
      if (ex.mask_next[i]) {
        abs_next += (out.temporal.row(i) - (ex.centers_next.row(i) - ex.points.row(i)))
                        .cwiseAbs()
                        .sum();
        count_next += 2;
      }
    }
  }
  result.mae_standard = count_now > 0 ? abs_now / count_now : 0.0;
  result.mae_temporal = count_next > 0 ? abs_next / count_next : 0.0;
  return result;
}

// ---------------------------------------------------------------------------

namespace {

int majority_track_id(const InstanceDescriptor& instance,
                      const std::vector<int>& track_ids) {
  std::map<int, int> votes;
  for (int idx : instance.point_indices) ++votes[track_ids[idx]];
  int best = 0, best_votes = -1;
  for (const auto& [id, n] : votes) {
    if (n > best_votes) {
      best = id;
      best_votes = n;
    }
  }
  return best;
}

std::vector<InstanceDescriptor> static_clusters(const SegmentedScan& scan,
                                                const TrackerConfig& config,
                                                int max_instances) {
  std::vector<int> static_idx;
  std::vector<Vec2> static_pos;
  for (int i = 0; i < scan.size(); ++i) {
    if (scan.semantics[i] == Semantic::kStatic) {
      static_idx.push_back(i);
      static_pos.push_back(scan.scan.points[i].position());
    }
  }
  std::vector<InstanceDescriptor> clusters;
  if (static_idx.empty() || max_instances <= 0) return clusters;

  const std::vector<int> labels =
      assoc::dbscan(static_pos, config.cluster_radius, 1);
  int num = 0;
  for (int l : labels) num = std::max(num, l + 1);
  for (int c = 0; c < std::min(num, max_instances); ++c) {
    InstanceDescriptor d;
    d.instance_id = 0;
    Vec2 center = Vec2::Zero();
    Vec2 mean_offset = Vec2::Zero();
    Vec2 mean_temporal = Vec2::Zero();
    for (std::size_t i = 0; i < static_idx.size(); ++i) {
      if (labels[i] != c) continue;
      d.point_indices.push_back(static_idx[i]);
      center += static_pos[i];
      mean_offset += scan.offsets.row(static_idx[i]).transpose();
      mean_temporal += scan.temporal_offsets.row(static_idx[i]).transpose();
    }
    const double m = static_cast<double>(d.point_indices.size());
    d.center = center / m;
    d.corrected_center = d.center + mean_offset / m;
    d.predicted_next_center = d.center + mean_temporal / m;
    d.feature = VecX::Zero(1);
    clusters.push_back(std::move(d));
  }
  return clusters;
}

}  // namespace

std::vector<PairExample> make_pair_examples(
    const std::vector<SegmentedScan>& scans,
    const std::vector<std::vector<int>>& track_ids, const TrackerConfig& config,
    int max_static_instances, int max_gap) {
  if (scans.size() != track_ids.size()) {
    throw std::invalid_argument("make_pair_examples: track id size mismatch");
  }
  if (max_gap < 1) throw std::invalid_argument("make_pair_examples: max_gap < 1");
  std::vector<PairExample> pairs;
  for (std::size_t t = 0; t + 1 < scans.size(); ++t) {
    for (int gap = 1; gap <= max_gap && t + gap < scans.size(); ++gap) {
    PairExample pair;
    pair.first_scan = scans[t];
    pair.second_scan = scans[t + gap];
    pair.first = extract_moving_instances(pair.first_scan, 1);
    pair.second = extract_moving_instances(pair.second_scan, 1);
    if (pair.first.empty() || pair.second.empty()) continue;

    for (const InstanceDescriptor& d : pair.first) {
      pair.first_gt.push_back(majority_track_id(d, track_ids[t]));
    }
    for (const InstanceDescriptor& d : pair.second) {
      pair.second_gt.push_back(majority_track_id(d, track_ids[t + gap]));
    }

    // Static clusters join both sides with no positive correspondence.
    for (InstanceDescriptor& d :
         static_clusters(pair.first_scan, config, max_static_instances)) {
      pair.first.push_back(std::move(d));
      pair.first_gt.push_back(0);
    }
    for (InstanceDescriptor& d :
         static_clusters(pair.second_scan, config, max_static_instances)) {
      pair.second.push_back(std::move(d));
      pair.second_gt.push_back(0);
    }
    pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

namespace {

MatX pair_targets(const PairExample& pair) {
  const Eigen::Index a = static_cast<Eigen::Index>(pair.first.size());
  const Eigen::Index b = static_cast<Eigen::Index>(pair.second.size());
  MatX targets = MatX::Zero(a, b);
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index j = 0; j < b; ++j) {
      if (pair.first_gt[i] != 0 && pair.first_gt[i] == pair.second_gt[j]) {
        targets(i, j) = 1.0;
      }
    }
  }
  return targets;
}

}  // namespace

SimilarityTrainResult train_similarity(InstanceNet& net, SimilarityHead& head,
                                       const std::vector<PairExample>& dataset,
                                       const SimilarityTrainConfig& config) {
  if (dataset.empty()) throw std::invalid_argument("train_similarity: empty dataset");
  bool any_positive = false;
  for (const PairExample& pair : dataset) {
    if (pair_targets(pair).sum() > 0.0) {
      any_positive = true;
      break;
    }
  }
  if (!any_positive) {
    throw std::invalid_argument("train_similarity: dataset has no positive pair");
  }

  std::vector<nn::Param> params;
  net.collect_params("instance_net", params);
  head.collect_params("similarity_head", params);
  nn::AdamWConfig opt_config;
  opt_config.lr = config.lr;
  opt_config.weight_decay = config.weight_decay;
  nn::AdamW optimizer(params, opt_config);

  Rng rng(config.seed);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = order.size();  // force an initial shuffle

  SimilarityTrainResult result;
  result.loss_curve.reserve(config.steps);
  const int d2 = net.instance_dim();

  for (int step = 0; step < config.steps; ++step) {
    optimizer.zero_grad();
    double batch_loss = 0.0;
    const int batch = std::min<int>(config.batch_pairs, static_cast<int>(dataset.size()));
    for (int k = 0; k < batch; ++k) {
      if (cursor >= order.size()) {
        for (std::size_t i = order.size(); i > 1; --i) {
          std::swap(order[i - 1], order[rng.index(static_cast<int>(i))]);
        }
        cursor = 0;
      }
      const PairExample& pair = dataset[order[cursor++]];
      const Eigen::Index a = static_cast<Eigen::Index>(pair.first.size());
      const Eigen::Index b = static_cast<Eigen::Index>(pair.second.size());

      std::vector<InstanceNet::Cache> tapes_first(a), tapes_second(b);
      MatX features_first(a, d2), features_second(b, d2);
      MatX2 centers_first(a, 2), centers_second(b, 2);
      for (Eigen::Index i = 0; i < a; ++i) {
        const InstanceInputs in = instance_inputs(pair.first_scan, pair.first[i]);
        features_first.row(i) =
            net.forward(in.positions, in.features, true, tapes_first[i]).row(0);
        centers_first.row(i) = pair.first[i].predicted_next_center.transpose();
      }
      for (Eigen::Index j = 0; j < b; ++j) {
        const InstanceInputs in = instance_inputs(pair.second_scan, pair.second[j]);
        features_second.row(j) =
            net.forward(in.positions, in.features, true, tapes_second[j]).row(0);
        centers_second.row(j) = pair.second[j].corrected_center.transpose();
      }

      SimilarityHead::Cache head_cache;
      const MatX scores = head.forward(features_first, centers_first, features_second,
                                       centers_second, true, head_cache);
      const MatX targets = pair_targets(pair);
      // Positives are rare (one per track against every other column), so
      // they carry extra weight in the masked mean.
      const MatX weights =
          MatX::Ones(a, b) + (config.positive_weight - 1.0) * targets;
      const nn::BceResult bce = nn::bce_loss(scores, targets, weights);
      batch_loss += bce.loss;

      const double scale = 1.0 / static_cast<double>(batch);
      const SimilarityHead::InputGrads grads =
          head.backward(bce.grad * scale, head_cache);
      for (Eigen::Index i = 0; i < a; ++i) {
        net.backward(grads.dfeatures_a.row(i), tapes_first[i]);
      }
      for (Eigen::Index j = 0; j < b; ++j) {
        net.backward(grads.dfeatures_b.row(j), tapes_second[j]);
      }
    }
    optimizer.step();
    result.loss_curve.push_back(batch_loss / std::max(1, config.batch_pairs));
  }
  return result;
}

MatX pair_scores(InstanceNet& net, SimilarityHead& head, const PairExample& pair) {
  const Eigen::Index a = static_cast<Eigen::Index>(pair.first.size());
  const Eigen::Index b = static_cast<Eigen::Index>(pair.second.size());
  const int d2 = net.instance_dim();
  MatX features_first(a, d2), features_second(b, d2);
  MatX2 centers_first(a, 2), centers_second(b, 2);
  InstanceNet::Cache cache;
  for (Eigen::Index i = 0; i < a; ++i) {
    const InstanceInputs in = instance_inputs(pair.first_scan, pair.first[i]);
    features_first.row(i) = net.forward(in.positions, in.features, false, cache).row(0);
    centers_first.row(i) = pair.first[i].predicted_next_center.transpose();
  }
  for (Eigen::Index j = 0; j < b; ++j) {
    const InstanceInputs in = instance_inputs(pair.second_scan, pair.second[j]);
    features_second.row(j) = net.forward(in.positions, in.features, false, cache).row(0);
    centers_second.row(j) = pair.second[j].corrected_center.transpose();
  }
  return head.forward_eval(features_first, centers_first, features_second,
                           centers_second);
}

PairScoreStats evaluate_pair_scores(InstanceNet& net, SimilarityHead& head,
                                    const std::vector<PairExample>& dataset) {
  PairScoreStats stats;
  double sum_true = 0.0, sum_false = 0.0;
  for (const PairExample& pair : dataset) {
    const MatX scores = pair_scores(net, head, pair);
    const MatX targets = pair_targets(pair);
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
      for (Eigen::Index j = 0; j < scores.cols(); ++j) {
        if (targets(i, j) > 0.5) {
          sum_true += scores(i, j);
          ++stats.n_true;
        } else {
          sum_false += scores(i, j);
          ++stats.n_false;
        }
      }
    }
  }
  if (stats.n_true > 0) stats.mean_true = sum_true / stats.n_true;
  if (stats.n_false > 0) stats.mean_false = sum_false / stats.n_false;
  return stats;
}

}  // namespace radar::nets
