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

#include "radar/rng.hpp"
#include "radar/types.hpp"

namespace radar::nn {

/// Named view onto one trainable tensor and its gradient accumulator.
struct Param {
  std::string name;
  MatX* value = nullptr;
  MatX* grad = nullptr;
};

/// Named view onto persistent state (parameters plus buffers such as
/// batch-norm running statistics); the unit of checkpointing.
struct StateEntry {
  std::string name;
  MatX* value = nullptr;
};

// ---------------------------------------------------------------------------
// Dense: Y = X W + b
// ---------------------------------------------------------------------------
class Dense {
 public:
  Dense() = default;
  Dense(int in_dim, int out_dim);

  /// Uniform init in +-1/sqrt(in_dim), bias zero.
  void init(Rng& rng);

  struct Cache {
    MatX input;
  };

  MatX forward(const Eigen::Ref<const MatX>& x, Cache& cache) const;
  MatX forward(const Eigen::Ref<const MatX>& x) const;
  /// Accumulates dW/db, returns dX.
  MatX backward(const Eigen::Ref<const MatX>& dy, const Cache& cache);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<Param>& out);
  void collect_state(const std::string& prefix, std::vector<StateEntry>& out);

  int in_dim() const { return static_cast<int>(weight.rows()); }
  int out_dim() const { return static_cast<int>(weight.cols()); }

  MatX weight;  // in x out
  MatX bias;    // 1 x out
  MatX dweight;
  MatX dbias;
};

// ---------------------------------------------------------------------------
// BatchNorm over features (columns). Train mode standardizes with batch
// statistics (biased variance) and updates the running estimates; eval mode
// uses the running estimates and is batch-size independent. A train-mode
// batch of one row falls back to the eval path.
//
// With `normalize_with_running` set, normalization always uses the running
// estimates (train mode still updates them from the batch). The tiny
// positional encoders run in this mode: their batches are single local
// neighborhoods, which are too small and too degenerate (a singleton
// instance has zero variance) for batch statistics to be meaningful.
// ---------------------------------------------------------------------------
class BatchNorm {
 public:
  BatchNorm() = default;
  explicit BatchNorm(int dim);

  struct Cache {
    MatX x_hat;
    Eigen::RowVectorXd inv_std;
    bool batch_stats = false;
  };

  MatX forward(const Eigen::Ref<const MatX>& x, bool train, Cache& cache);
  MatX forward(const Eigen::Ref<const MatX>& x, bool train);
  MatX backward(const Eigen::Ref<const MatX>& dy, const Cache& cache);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<Param>& out);
  void collect_state(const std::string& prefix, std::vector<StateEntry>& out);

  int dim() const { return static_cast<int>(gamma.cols()); }

  MatX gamma;  // 1 x dim
  MatX beta;   // 1 x dim
  MatX dgamma;
  MatX dbeta;
  MatX running_mean;  // 1 x dim
  MatX running_var;   // 1 x dim
  double momentum = 0.1;
  double eps = 1e-5;
  bool normalize_with_running = false;
};

// ---------------------------------------------------------------------------
// Activations
// ---------------------------------------------------------------------------

/// ReLU; the mask doubles as the backward cache. Subgradient at 0 is 0.
MatX relu(const Eigen::Ref<const MatX>& x, MatX& mask);
MatX relu_backward(const Eigen::Ref<const MatX>& dy, const MatX& mask);

/// Row-wise softmax; shift-invariant, rows sum to one.
MatX softmax_rows(const Eigen::Ref<const MatX>& scores);
/// Column-wise softmax (normalizes down each column).
MatX softmax_cols(const Eigen::Ref<const MatX>& scores);
/// Backward given the forward output y (row-wise normalization).
MatX softmax_rows_backward(const Eigen::Ref<const MatX>& y,
                           const Eigen::Ref<const MatX>& dy);
MatX softmax_cols_backward(const Eigen::Ref<const MatX>& y,
                           const Eigen::Ref<const MatX>& dy);

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
MatX sigmoid(const Eigen::Ref<const MatX>& x);
/// Backward given the forward output y.
MatX sigmoid_backward(const Eigen::Ref<const MatX>& y,
                      const Eigen::Ref<const MatX>& dy);

// ---------------------------------------------------------------------------
// Dense -> BatchNorm -> ReLU -> Dense, the MLP unit used by the offset
// heads and both positional encoders.
// ---------------------------------------------------------------------------
class Mlp {
 public:
  Mlp() = default;
  Mlp(int in_dim, int hidden_dim, int out_dim);

  void init(Rng& rng);

  struct Cache {
    Dense::Cache fc1;
    BatchNorm::Cache bn;
    MatX relu_mask;
    Dense::Cache fc2;
  };

  MatX forward(const Eigen::Ref<const MatX>& x, bool train, Cache& cache);
  MatX forward_eval(const Eigen::Ref<const MatX>& x) const;
  MatX backward(const Eigen::Ref<const MatX>& dy, const Cache& cache);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<Param>& out);
  void collect_state(const std::string& prefix, std::vector<StateEntry>& out);

  Dense fc1;
  BatchNorm bn;
  Dense fc2;
};

}  // namespace radar::nn
