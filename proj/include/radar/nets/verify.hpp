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

#include "radar/types.hpp"

namespace radar::nets {

struct GradientSuiteEntry {
  std::string op;
  double max_rel_err = 0.0;
  int probes = 0;
};

/// Central-difference verification of every analytic backward pass: dense,
/// batchnorm (eval), the attention path, attentive aggregation, the
/// similarity head, BCE, and the offset L1 loss, each across the given
/// number of random seeds. Reported error per op is the worst over all
/// seeds and probes.
std::vector<GradientSuiteEntry> gradient_suite(int seeds);

/// Worst error across the whole suite.
double gradient_suite_worst(const std::vector<GradientSuiteEntry>& entries);

}  // namespace radar::nets
