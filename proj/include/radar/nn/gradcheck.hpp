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

#include <functional>
#include <string>
#include <vector>

#include "radar/nn/core.hpp"

namespace radar::nn {

struct GradCheckReport {
  double max_rel_err = 0.0;
  double max_abs_err = 0.0;
  std::string worst_param;
  int probes = 0;
  bool pass(double tol) const { return max_rel_err <= tol; }
};

/// Central-difference verification of analytic parameter gradients.
///
/// `eval(true)` must zero the gradients, run forward + backward and return the
/// loss; `eval(false)` must run a pure forward pass and return the loss. Error
/// per probed entry is |analytic - numeric| / max(1, |analytic|, |numeric|).
/// `max_probes_per_param` limits probing per tensor (0 = probe every entry);
/// probed entries are chosen with the given seed.
GradCheckReport check_gradients(const std::vector<Param>& params,
                                const std::function<double(bool with_grad)>& eval,
                                double step = 1e-5, int max_probes_per_param = 0,
                                std::uint64_t seed = 0);

}  // namespace radar::nn
