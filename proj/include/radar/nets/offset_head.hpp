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
#include <utility>
#include <vector>

#include "radar/nn/core.hpp"
#include "radar/types.hpp"

namespace radar::nets {

/// Per-point offset regression: two independent stacks with shared input,
/// one for the in-scan center offset and one for the next-scan (temporal)
/// offset. Each stack is dense -> batchnorm -> ReLU -> dense(2).
/// The input is the 4 raw point features concatenated with the coordinates.
class OffsetHead {
 public:
  OffsetHead() = default;
  OffsetHead(int in_dim, int hidden_dim);

  void init(Rng& rng);

  struct Cache {
    nn::Mlp::Cache standard_c;
    nn::Mlp::Cache temporal_c;
  };

  struct Output {
    MatX2 standard;  // n x 2
    MatX2 temporal;  // n x 2
  };

  Output forward(const Eigen::Ref<const MatX>& x, bool train, Cache& cache);
  Output forward_eval(const Eigen::Ref<const MatX>& x) const;
  void backward(const Eigen::Ref<const MatX>& dstandard,
                const Eigen::Ref<const MatX>& dtemporal, const Cache& cache);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<nn::Param>& out);
  void collect_state(const std::string& prefix, std::vector<nn::StateEntry>& out);

  /// Builds the head input from a scan: (x, y, rcs, v) ++ (x, y), n x 6.
  static MatX build_input(const Scan& scan);

  nn::Mlp standard;
  nn::Mlp temporal;
};

}  // namespace radar::nets
