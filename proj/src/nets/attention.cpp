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

#include "radar/nets/attention.hpp"

#include <stdexcept>

namespace radar::nets {

VectorAttention::VectorAttention(int dim, int neighbors_)
    : query(dim, dim),
      key(dim, dim),
      value(dim, dim),
      positional(2, 2, dim),
      neighbors(neighbors_) {
  // Neighborhood batches are too small for batch statistics.
  positional.bn.normalize_with_running = true;
}

void VectorAttention::init(Rng& rng) {
  query.init(rng);
  key.init(rng);
  value.init(rng);
  positional.init(rng);
}

MatX VectorAttention::forward(const Eigen::Ref<const MatX2>& positions,
                              const Eigen::Ref<const MatX>& x, bool train,
                              Cache& cache) {
  const int m = static_cast<int>(x.rows());
  const int d = dim();
  const int k = neighbors;
  if (positions.rows() != m) {
    throw std::invalid_argument("VectorAttention: position/feature row mismatch");
  }

  const nn::KnnGroups groups = nn::knn_sample_group(positions, x, k);
  cache.indices = groups.indices;

  const MatX q = query.forward(x, cache.query_c);
  const MatX kk = key.forward(x, cache.key_c);
  const MatX v = value.forward(x, cache.value_c);
  const MatX pos = positional.forward(groups.relative, train, cache.positional_c);

  MatX scores(static_cast<Eigen::Index>(m) * k, d);
  cache.value_plus_pos.resize(static_cast<Eigen::Index>(m) * k, d);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(i) * k + j;
      const int nbr = cache.indices(i, j);
      scores.row(row) = q.row(i) - kk.row(nbr) + pos.row(row);
      cache.value_plus_pos.row(row) = v.row(nbr) + pos.row(row);
    }
  }

  cache.weights.resize(scores.rows(), d);
  MatX out = MatX::Zero(m, d);
  for (int i = 0; i < m; ++i) {
    const Eigen::Index base = static_cast<Eigen::Index>(i) * k;
    cache.weights.middleRows(base, k) = nn::softmax_cols(scores.middleRows(base, k));
    out.row(i) = (cache.weights.middleRows(base, k).array() *
                  cache.value_plus_pos.middleRows(base, k).array())
                     .colwise()
                     .sum()
                     .matrix();
  }
  return out;
}

MatX VectorAttention::backward(const Eigen::Ref<const MatX>& dy, const Cache& cache) {
  const int m = static_cast<int>(dy.rows());
  const int d = dim();
  const int k = neighbors;

  MatX dweights(static_cast<Eigen::Index>(m) * k, d);
  MatX dvpr(static_cast<Eigen::Index>(m) * k, d);
  for (int i = 0; i < m; ++i) {
    const Eigen::Index base = static_cast<Eigen::Index>(i) * k;
    for (int j = 0; j < k; ++j) {
      dweights.row(base + j) =
          dy.row(i).cwiseProduct(cache.value_plus_pos.row(base + j));
      dvpr.row(base + j) = dy.row(i).cwiseProduct(cache.weights.row(base + j));
    }
  }

  MatX dscores(dweights.rows(), d);
  for (int i = 0; i < m; ++i) {
    const Eigen::Index base = static_cast<Eigen::Index>(i) * k;
    dscores.middleRows(base, k) = nn::softmax_cols_backward(
        cache.weights.middleRows(base, k), dweights.middleRows(base, k));
  }

  MatX dq = MatX::Zero(m, d);
  MatX dk = MatX::Zero(m, d);
  MatX dv = MatX::Zero(m, d);
  MatX dpos = dvpr;  // R enters both the scores and the value sum
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(i) * k + j;
      const int nbr = cache.indices(i, j);
      dq.row(i) += dscores.row(row);
      dk.row(nbr) -= dscores.row(row);
      dv.row(nbr) += dvpr.row(row);
      dpos.row(row) += dscores.row(row);
    }
  }

  positional.backward(dpos, cache.positional_c);
  MatX dx = query.backward(dq, cache.query_c);
  dx += key.backward(dk, cache.key_c);
  dx += value.backward(dv, cache.value_c);
  return dx;
}

void VectorAttention::zero_grad() {
  query.zero_grad();
  key.zero_grad();
  value.zero_grad();
  positional.zero_grad();
}

void VectorAttention::collect_params(const std::string& prefix,
                                     std::vector<nn::Param>& out) {
  query.collect_params(prefix + ".query", out);
  key.collect_params(prefix + ".key", out);
  value.collect_params(prefix + ".value", out);
  positional.collect_params(prefix + ".positional", out);
}

void VectorAttention::collect_state(const std::string& prefix,
                                    std::vector<nn::StateEntry>& out) {
  query.collect_state(prefix + ".query", out);
  key.collect_state(prefix + ".key", out);
  value.collect_state(prefix + ".value", out);
  positional.collect_state(prefix + ".positional", out);
}

// ---------------------------------------------------------------------------

TransformerBlock::TransformerBlock(int in_dim, int out_dim, int neighbors)
    : input_proj(in_dim, out_dim),
      attention(out_dim, neighbors),
      output_proj(out_dim, out_dim),
      residual_proj(in_dim, out_dim) {}

void TransformerBlock::init(Rng& rng) {
  input_proj.init(rng);
  attention.init(rng);
  output_proj.init(rng);
  residual_proj.init(rng);
}

MatX TransformerBlock::forward(const Eigen::Ref<const MatX2>& positions,
                               const Eigen::Ref<const MatX>& x, bool train,
                               Cache& cache) {
  const MatX expanded = input_proj.forward(x, cache.input_c);
  const MatX attended = attention.forward(positions, expanded, train, cache.attention_c);
  return output_proj.forward(attended, cache.output_c) +
         residual_proj.forward(x, cache.residual_c);
}

MatX TransformerBlock::backward(const Eigen::Ref<const MatX>& dy, const Cache& cache) {
  MatX dx = residual_proj.backward(dy, cache.residual_c);
  const MatX dattended = output_proj.backward(dy, cache.output_c);
  const MatX dexpanded = attention.backward(dattended, cache.attention_c);
  dx += input_proj.backward(dexpanded, cache.input_c);
  return dx;
}

void TransformerBlock::zero_grad() {
  input_proj.zero_grad();
  attention.zero_grad();
  output_proj.zero_grad();
  residual_proj.zero_grad();
}

void TransformerBlock::collect_params(const std::string& prefix,
                                      std::vector<nn::Param>& out) {
  input_proj.collect_params(prefix + ".input_proj", out);
  attention.collect_params(prefix + ".attention", out);
  output_proj.collect_params(prefix + ".output_proj", out);
  residual_proj.collect_params(prefix + ".residual_proj", out);
}

void TransformerBlock::collect_state(const std::string& prefix,
                                     std::vector<nn::StateEntry>& out) {
  input_proj.collect_state(prefix + ".input_proj", out);
  attention.collect_state(prefix + ".attention", out);
  output_proj.collect_state(prefix + ".output_proj", out);
  residual_proj.collect_state(prefix + ".residual_proj", out);
}

}  // namespace radar::nets
