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

#include <vector>

#include "radar/types.hpp"

namespace radar::metrics {

struct MetricReport {
  double lstq = 0.0;
  double s_assoc = 0.0;
  double s_cls = 0.0;
  double iou_mov = 0.0;
  int num_switches = 0;
  int num_tracks_pred = 0;
  int num_tracks_gt = 0;
};

/// IoU of the moving class, TP / (TP + FP + FN) over all points.
double iou_mov(const SequenceLabels& pred, const SequenceLabels& gt);

/// Mean over the two semantic classes of the per-class IoU. A class absent
/// from prediction and ground truth counts as perfectly classified.
double s_cls(const SequenceLabels& pred, const SequenceLabels& gt);

/// Association score over point-wise tracks: for each ground-truth track,
/// the TPA-weighted IoU with every overlapping predicted track, normalized
/// by the track size; averaged over ground-truth tracks.
double s_assoc(const SequenceLabels& pred, const SequenceLabels& gt);

/// sqrt(s_cls * s_assoc).
double lstq(const SequenceLabels& pred, const SequenceLabels& gt);

/// Pooled evaluation over a set of sequences (points and tracks of different
/// sequences never interact).
MetricReport evaluate(const std::vector<SequenceLabels>& pred,
                      const std::vector<SequenceLabels>& gt);

}  // namespace radar::metrics
