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

namespace radar::nn {

/// (1/N) sum_i |o_i - (c_i - p_i)|_1 over all rows.
double offset_l1_loss(const Eigen::Ref<const MatX2>& offsets,
                      const Eigen::Ref<const MatX2>& centers,
                      const Eigen::Ref<const MatX2>& points);

struct OffsetLossResult {
  double loss = 0.0;
  MatX2 grad;  // d loss / d offsets
};

/// Masked variant used in training; rows with mask 0 contribute nothing and
/// the mean is taken over masked-in rows.
OffsetLossResult offset_l1_loss_grad(const Eigen::Ref<const MatX2>& offsets,
                                     const Eigen::Ref<const MatX2>& centers,
                                     const Eigen::Ref<const MatX2>& points,
                                     const std::vector<std::uint8_t>& mask);

struct BceResult {
  double loss = 0.0;
  MatX grad;  // d loss / d predictions
};

/// Weighted mean of -[y log a + (1-y) log(1-a)], normalized by the weight
/// sum. Predictions are clamped to [1e-7, 1-1e-7]; mask entries are
/// non-negative weights and an all-zero mask is an error.
BceResult bce_loss(const Eigen::Ref<const MatX>& predicted,
                   const Eigen::Ref<const MatX>& target,
                   const Eigen::Ref<const MatX>& mask);

}  // namespace radar::nn
