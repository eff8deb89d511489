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

#include "radar/nn/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace radar::nn {

namespace {
constexpr double kBceClamp = 1e-7;

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
}  // namespace

double offset_l1_loss(const Eigen::Ref<const MatX2>& offsets,
                      const Eigen::Ref<const MatX2>& centers,
                      const Eigen::Ref<const MatX2>& points) {
  const Eigen::Index n = offsets.rows();
  if (n == 0) throw std::invalid_argument("offset_l1_loss: empty input");
  if (centers.rows() != n || points.rows() != n) {
    throw std::invalid_argument("offset_l1_loss: row count mismatch");
  }
  const MatX2 residual = offsets - (centers - points);
  return residual.array().abs().sum() / static_cast<double>(n);
}

OffsetLossResult offset_l1_loss_grad(const Eigen::Ref<const MatX2>& offsets,
                                     const Eigen::Ref<const MatX2>& centers,
                                     const Eigen::Ref<const MatX2>& points,
                                     const std::vector<std::uint8_t>& mask) {
  const Eigen::Index n = offsets.rows();
  if (centers.rows() != n || points.rows() != n ||
      static_cast<Eigen::Index>(mask.size()) != n) {
    throw std::invalid_argument("offset_l1_loss_grad: row count mismatch");
  }
  double active = 0.0;
  for (std::uint8_t m : mask) active += m ? 1.0 : 0.0;
  if (active == 0.0) throw std::invalid_argument("offset_l1_loss_grad: empty mask");

  OffsetLossResult result;
  result.grad = MatX2::Zero(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!mask[i]) continue;
    for (int c = 0; c < 2; ++c) {
      const double r = offsets(i, c) - (centers(i, c) - points(i, c));
      result.loss += std::abs(r);
      result.grad(i, c) = sign0(r) / active;
    }
  }
  result.loss /= active;
  return result;
}

BceResult bce_loss(const Eigen::Ref<const MatX>& predicted,
                   const Eigen::Ref<const MatX>& target,
                   const Eigen::Ref<const MatX>& mask) {
  if (predicted.rows() != target.rows() || predicted.cols() != target.cols() ||
      predicted.rows() != mask.rows() || predicted.cols() != mask.cols()) {
    throw std::invalid_argument("bce_loss: shape mismatch");
  }
  const double active = mask.sum();
  if (active <= 0.0) throw std::invalid_argument("bce_loss: empty mask");

  BceResult result;
  result.grad = MatX::Zero(predicted.rows(), predicted.cols());
  for (Eigen::Index i = 0; i < predicted.rows(); ++i) {
    for (Eigen::Index j = 0; j < predicted.cols(); ++j) {
      const double w = mask(i, j);
      if (w == 0.0) continue;
      const double raw = predicted(i, j);
      const double a = std::min(std::max(raw, kBceClamp), 1.0 - kBceClamp);
      const double y = target(i, j);
      result.loss += -w * (y * std::log(a) + (1.0 - y) * std::log(1.0 - a));
      // Subgradient of the clamped loss: zero where the clamp is active.
      result.grad(i, j) =
          (raw == a) ? w * ((1.0 - y) / (1.0 - a) - y / a) / active : 0.0;
    }
  }
  result.loss /= active;
  return result;
}

}  // namespace radar::nn
