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

#include "radar/metrics.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace radar::metrics {

namespace {

// Sequence-qualified track key so that pooled evaluation never mixes ids
// across sequences.
std::int64_t qualify(int seq, int id) {
  return (static_cast<std::int64_t>(seq) << 32) | static_cast<std::uint32_t>(id);
}

struct Flattened {
  std::vector<std::uint8_t> pred_moving, gt_moving;
  std::vector<std::int64_t> pred_id, gt_id;  // 0 = none
  // Per (sequence, scan) ranges for the switch count.
  std::vector<std::pair<std::size_t, std::size_t>> scan_ranges;
};

Flattened flatten(const std::vector<SequenceLabels>& pred,
                  const std::vector<SequenceLabels>& gt) {
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("metrics: sequence count mismatch");
  }
  Flattened flat;
  for (std::size_t s = 0; s < pred.size(); ++s) {
    if (pred[s].size() != gt[s].size()) {
      throw std::invalid_argument("metrics: scan count mismatch");
    }
    for (std::size_t t = 0; t < pred[s].size(); ++t) {
      const ScanLabels& p = pred[s][t];
      const ScanLabels& g = gt[s][t];
      const std::size_t n = g.semantics.size();
      if (p.semantics.size() != n || p.track_ids.size() != n ||
          g.track_ids.size() != n) {
        throw std::invalid_argument("metrics: point count mismatch");
      }
      const std::size_t begin = flat.gt_moving.size();
      for (std::size_t i = 0; i < n; ++i) {
        flat.pred_moving.push_back(p.semantics[i] == Semantic::kMoving ? 1 : 0);
        flat.gt_moving.push_back(g.semantics[i] == Semantic::kMoving ? 1 : 0);
        flat.pred_id.push_back(p.track_ids[i] > 0
                                   ? qualify(static_cast<int>(s), p.track_ids[i])
                                   : 0);
        flat.gt_id.push_back(
            g.track_ids[i] > 0 ? qualify(static_cast<int>(s), g.track_ids[i]) : 0);
      }
      flat.scan_ranges.emplace_back(begin, flat.gt_moving.size());
    }
  }
  return flat;
}

double class_iou(const Flattened& flat, bool moving) {
  long tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < flat.gt_moving.size(); ++i) {
    const bool p = (flat.pred_moving[i] != 0) == moving;
    const bool g = (flat.gt_moving[i] != 0) == moving;
    if (p && g) ++tp;
    else if (p && !g) ++fp;
    else if (!p && g) ++fn;
  }
  const long denom = tp + fp + fn;
  return denom == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

double assoc_score(const Flattened& flat) {
  std::unordered_map<std::int64_t, long> gt_size, pred_size;
  std::map<std::pair<std::int64_t, std::int64_t>, long> overlap;
  for (std::size_t i = 0; i < flat.gt_moving.size(); ++i) {
    if (flat.gt_id[i] != 0) ++gt_size[flat.gt_id[i]];
    if (flat.pred_id[i] != 0) ++pred_size[flat.pred_id[i]];
    if (flat.gt_id[i] != 0 && flat.pred_id[i] != 0) {
      ++overlap[{flat.gt_id[i], flat.pred_id[i]}];
    }
  }
  if (gt_size.empty()) return 1.0;

  std::unordered_map<std::int64_t, double> per_track;
  for (const auto& [key, inter] : overlap) {
    const auto& [gid, sid] = key;
    const double uni =
        static_cast<double>(pred_size[sid] + gt_size[gid] - inter);
    per_track[gid] += static_cast<double>(inter) * static_cast<double>(inter) / uni;
  }
  double total = 0.0;
  for (const auto& [gid, size] : gt_size) {
    const auto it = per_track.find(gid);
    if (it != per_track.end()) total += it->second / static_cast<double>(size);
  }
  return total / static_cast<double>(gt_size.size());
}

// Identity switches: per ground-truth track, the majority predicted id is
// taken scan by scan; transitions between distinct non-zero majority ids
// count as one switch each.
int count_switches(const Flattened& flat) {
  std::unordered_map<std::int64_t, std::int64_t> last_majority;
  int switches = 0;
  for (const auto& [begin, end] : flat.scan_ranges) {
    std::map<std::int64_t, std::map<std::int64_t, int>> votes;  // gt -> pred -> n
    for (std::size_t i = begin; i < end; ++i) {
      if (flat.gt_id[i] == 0) continue;
      ++votes[flat.gt_id[i]][flat.pred_id[i]];
    }
    for (const auto& [gid, candidates] : votes) {
      std::int64_t best = 0;
      int best_votes = -1;
      for (const auto& [pid, n] : candidates) {
        if (n > best_votes) {
          best = pid;
          best_votes = n;
        }
      }
      if (best == 0) continue;
      const auto it = last_majority.find(gid);
      if (it != last_majority.end() && it->second != best) ++switches;
      last_majority[gid] = best;
    }
  }
  return switches;
}

}  // namespace

double iou_mov(const SequenceLabels& pred, const SequenceLabels& gt) {
  return class_iou(flatten({pred}, {gt}), true);
}

double s_cls(const SequenceLabels& pred, const SequenceLabels& gt) {
  const Flattened flat = flatten({pred}, {gt});
  return 0.5 * (class_iou(flat, true) + class_iou(flat, false));
}

double s_assoc(const SequenceLabels& pred, const SequenceLabels& gt) {
  return assoc_score(flatten({pred}, {gt}));
}

double lstq(const SequenceLabels& pred, const SequenceLabels& gt) {
  return std::sqrt(s_cls(pred, gt) * s_assoc(pred, gt));
}

MetricReport evaluate(const std::vector<SequenceLabels>& pred,
                      const std::vector<SequenceLabels>& gt) {
  const Flattened flat = flatten(pred, gt);
  MetricReport report;
  report.iou_mov = class_iou(flat, true);
  report.s_cls = 0.5 * (class_iou(flat, true) + class_iou(flat, false));
  report.s_assoc = assoc_score(flat);
  report.lstq = std::sqrt(report.s_cls * report.s_assoc);
  report.num_switches = count_switches(flat);

  std::set<std::int64_t> pred_ids, gt_ids;
  for (std::size_t i = 0; i < flat.gt_moving.size(); ++i) {
    if (flat.pred_id[i] != 0) pred_ids.insert(flat.pred_id[i]);
    if (flat.gt_id[i] != 0) gt_ids.insert(flat.gt_id[i]);
  }
  report.num_tracks_pred = static_cast<int>(pred_ids.size());
  report.num_tracks_gt = static_cast<int>(gt_ids.size());
  return report;
}

}  // namespace radar::metrics
