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

#include "radar/nn/core.hpp"

namespace radar::nn {

struct AdamWConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

/// Adam with decoupled weight decay. One first/second moment pair per
/// registered parameter; the step count is shared.
class AdamW {
 public:
  explicit AdamW(std::vector<Param> params, AdamWConfig config = {});

  void step();
  void zero_grad();

  int step_count() const { return step_count_; }
  const AdamWConfig& config() const { return config_; }
  AdamWConfig& config() { return config_; }

 private:
  std::vector<Param> params_;
  std::vector<MatX> first_moment_;
  std::vector<MatX> second_moment_;
  AdamWConfig config_;
  int step_count_ = 0;
};

}  // namespace radar::nn
