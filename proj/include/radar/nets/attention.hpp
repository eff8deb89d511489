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

#include "radar/nn/core.hpp"
#include "radar/nn/knn.hpp"

namespace radar::nets {

/// Vector attention over the k nearest neighbors of each point.
///
/// Per point i and neighbor j the score is Q_i - K_j + R_ij with R the
/// encoded relative position; weights are a channel-wise softmax over the
/// neighbor axis and the output is sum_j A_ij * (V_j + R_ij).
class VectorAttention {
 public:
  VectorAttention() = default;
  VectorAttention(int dim, int neighbors);

  void init(Rng& rng);

  struct Cache {
    Eigen::MatrixXi indices;  // m x k
    nn::Dense::Cache query_c, key_c, value_c;
    nn::Mlp::Cache positional_c;
    MatX weights;        // (m*k) x dim, softmax output
    MatX value_plus_pos; // (m*k) x dim, V_j + R_ij
  };

  MatX forward(const Eigen::Ref<const MatX2>& positions,
               const Eigen::Ref<const MatX>& x, bool train, Cache& cache);
  /// Returns dX; accumulates parameter gradients.
  MatX backward(const Eigen::Ref<const MatX>& dy, const Cache& cache);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<nn::Param>& out);
  void collect_state(const std::string& prefix, std::vector<nn::StateEntry>& out);

  int dim() const { return query.out_dim(); }

  nn::Dense query;
  nn::Dense key;
  nn::Dense value;
  nn::Mlp positional;  // 2 -> 2 -> dim
  int neighbors = 6;
};

/// Residual transformer block: input expansion, local vector attention,
/// output projection, plus a projected skip connection.
class TransformerBlock {
 public:
  TransformerBlock() = default;
  TransformerBlock(int in_dim, int out_dim, int neighbors);

  void init(Rng& rng);

  struct Cache {
    nn::Dense::Cache input_c, output_c, residual_c;
    VectorAttention::Cache attention_c;
  };

  MatX forward(const Eigen::Ref<const MatX2>& positions,
               const Eigen::Ref<const MatX>& x, bool train, Cache& cache);
  MatX backward(const Eigen::Ref<const MatX>& dy, const Cache& cache);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<nn::Param>& out);
  void collect_state(const std::string& prefix, std::vector<nn::StateEntry>& out);

  nn::Dense input_proj;
  VectorAttention attention;
  nn::Dense output_proj;
  nn::Dense residual_proj;
};

}  // namespace radar::nets
