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

#include "radar/nn/adamw.hpp"

#include <cmath>
#include <stdexcept>

namespace radar::nn {

AdamW::AdamW(std::vector<Param> params, AdamWConfig config)
    : params_(std::move(params)), config_(config) {
  first_moment_.reserve(params_.size());
  second_moment_.reserve(params_.size());
  for (const Param& p : params_) {
    first_moment_.push_back(MatX::Zero(p.value->rows(), p.value->cols()));
    second_moment_.push_back(MatX::Zero(p.value->rows(), p.value->cols()));
  }
}

void AdamW::step() {
  ++step_count_;
  const double bias1 = 1.0 - std::pow(config_.beta1, step_count_);
  const double bias2 = 1.0 - std::pow(config_.beta2, step_count_);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    MatX& value = *params_[i].value;
    const MatX& grad = *params_[i].grad;
    if (grad.rows() != value.rows() || grad.cols() != value.cols()) {
      throw std::invalid_argument("AdamW::step: gradient shape mismatch for " +
                                  params_[i].name);
    }
    MatX& m = first_moment_[i];
    MatX& v = second_moment_[i];
    m = config_.beta1 * m + (1.0 - config_.beta1) * grad;
    v = config_.beta2 * v + (1.0 - config_.beta2) * grad.cwiseProduct(grad);
    const MatX m_hat = m / bias1;
    const MatX v_hat = v / bias2;
    value -= config_.lr *
             (m_hat.array() / (v_hat.array().sqrt() + config_.eps) +
              config_.weight_decay * value.array())
                 .matrix();
  }
}

void AdamW::zero_grad() {
  for (Param& p : params_) p.grad->setZero();
}

}  // namespace radar::nn
