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
//
// Straight-line scalar re-implementations of the attention equations, kept
// deliberately free of Eigen expressions and of the library's forward code.
// Test oracle only; reads the same parameters the library uses.

#pragma once

#include <cmath>
#include <vector>

#include "radar/nets/attention.hpp"
#include "radar/nets/instance_net.hpp"
#include "radar/nets/similarity.hpp"

namespace naive {

using radar::MatX;
using radar::MatX2;

// y = x W + b, scalar loops.
inline std::vector<double> dense_row(const radar::nn::Dense& layer,
                                     const std::vector<double>& x) {
  const int in = layer.in_dim();
  const int out = layer.out_dim();
  std::vector<double> y(out, 0.0);
  for (int c = 0; c < out; ++c) {
    double acc = layer.bias(0, c);
    for (int k = 0; k < in; ++k) acc += x[k] * layer.weight(k, c);
    y[c] = acc;
  }
  return y;
}

// dense -> batchnorm(eval) -> relu -> dense, one row at a time.
inline std::vector<double> mlp_eval_row(const radar::nn::Mlp& mlp,
                                        const std::vector<double>& x) {
  std::vector<double> h = dense_row(mlp.fc1, x);
  for (std::size_t c = 0; c < h.size(); ++c) {
    const double inv = 1.0 / std::sqrt(mlp.bn.running_var(0, c) + mlp.bn.eps);
    h[c] = (h[c] - mlp.bn.running_mean(0, c)) * inv * mlp.bn.gamma(0, c) +
           mlp.bn.beta(0, c);
    if (h[c] < 0.0) h[c] = 0.0;
  }
  return dense_row(mlp.fc2, h);
}

// Local vector attention in eval mode, given the neighbor indices: queries
// minus keys plus the positional encoding, channel-wise softmax over the
// neighbors, then the weighted sum of values plus encodings.
inline MatX vector_attention_eval(const radar::nets::VectorAttention& attn,
                                  const MatX2& positions, const MatX& x,
                                  const Eigen::MatrixXi& indices) {
  const int m = static_cast<int>(x.rows());
  const int k = static_cast<int>(indices.cols());
  const int d = attn.dim();

  std::vector<std::vector<double>> q(m), key(m), val(m);
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(x.cols());
    for (int c = 0; c < x.cols(); ++c) row[c] = x(i, c);
    q[i] = dense_row(attn.query, row);
    key[i] = dense_row(attn.key, row);
    val[i] = dense_row(attn.value, row);
  }

  MatX out = MatX::Zero(m, d);
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<double>> scores(k), vpr(k);
    for (int j = 0; j < k; ++j) {
      const int nbr = indices(i, j);
      const std::vector<double> rel = {positions(i, 0) - positions(nbr, 0),
                                       positions(i, 1) - positions(nbr, 1)};
      const std::vector<double> enc = mlp_eval_row(attn.positional, rel);
      scores[j].resize(d);
      vpr[j].resize(d);
      for (int c = 0; c < d; ++c) {
        scores[j][c] = q[i][c] - key[nbr][c] + enc[c];
        vpr[j][c] = val[nbr][c] + enc[c];
      }
    }
    for (int c = 0; c < d; ++c) {
      double peak = scores[0][c];
      for (int j = 1; j < k; ++j) peak = std::max(peak, scores[j][c]);
      double denom = 0.0;
      for (int j = 0; j < k; ++j) denom += std::exp(scores[j][c] - peak);
      for (int j = 0; j < k; ++j) {
        out(i, c) += std::exp(scores[j][c] - peak) / denom * vpr[j][c];
      }
    }
  }
  return out;
}

// Whole transformer block in eval mode.
inline MatX block_eval(const radar::nets::TransformerBlock& block,
                       const MatX2& positions, const MatX& x,
                       const Eigen::MatrixXi& indices) {
  const int m = static_cast<int>(x.rows());
  MatX expanded(m, block.input_proj.out_dim());
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(x.cols());
    for (int c = 0; c < x.cols(); ++c) row[c] = x(i, c);
    const std::vector<double> e = dense_row(block.input_proj, row);
    for (int c = 0; c < block.input_proj.out_dim(); ++c) expanded(i, c) = e[c];
  }
  const MatX attended = vector_attention_eval(block.attention, positions, expanded, indices);
  MatX out(m, block.output_proj.out_dim());
  for (int i = 0; i < m; ++i) {
    std::vector<double> arow(attended.cols()), xrow(x.cols());
    for (int c = 0; c < attended.cols(); ++c) arow[c] = attended(i, c);
    for (int c = 0; c < x.cols(); ++c) xrow[c] = x(i, c);
    const std::vector<double> o = dense_row(block.output_proj, arow);
    const std::vector<double> r = dense_row(block.residual_proj, xrow);
    for (std::size_t c = 0; c < o.size(); ++c) out(i, c) = o[c] + r[c];
  }
  return out;
}

// Attentive aggregation: member softmax per channel, weighted sum.
inline MatX aggregate(const radar::nn::Dense& aggregation, const MatX& members) {
  const int m = static_cast<int>(members.rows());
  const int d = static_cast<int>(members.cols());
  MatX logits(m, d);
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(d);
    for (int c = 0; c < d; ++c) row[c] = members(i, c);
    const std::vector<double> l = dense_row(aggregation, row);
    for (int c = 0; c < d; ++c) logits(i, c) = l[c];
  }
  MatX feature = MatX::Zero(1, d);
  for (int c = 0; c < d; ++c) {
    double peak = logits(0, c);
    for (int i = 1; i < m; ++i) peak = std::max(peak, logits(i, c));
    double denom = 0.0;
    for (int i = 0; i < m; ++i) denom += std::exp(logits(i, c) - peak);
    for (int i = 0; i < m; ++i) {
      feature(0, c) += std::exp(logits(i, c) - peak) / denom * members(i, c);
    }
  }
  return feature;
}

// Sigmoid dot-product similarity with the scalar center encoding.
inline MatX similarity_eval(const radar::nets::SimilarityHead& head, const MatX& fa,
                            const MatX2& ca, const MatX& fb, const MatX2& cb) {
  const int a = static_cast<int>(fa.rows());
  const int b = static_cast<int>(fb.rows());
  MatX scores(a, b);
  for (int i = 0; i < a; ++i) {
    std::vector<double> qrow(fa.cols());
    for (int c = 0; c < fa.cols(); ++c) qrow[c] = fa(i, c);
    const std::vector<double> q = dense_row(head.query_proj, qrow);
    for (int j = 0; j < b; ++j) {
      std::vector<double> krow(fb.cols());
      for (int c = 0; c < fb.cols(); ++c) krow[c] = fb(j, c);
      const std::vector<double> key = dense_row(head.key_proj, krow);
      double logit = 0.0;
      for (std::size_t c = 0; c < q.size(); ++c) logit += q[c] * key[c];
      const std::vector<double> rel = {ca(i, 0) - cb(j, 0), ca(i, 1) - cb(j, 1)};
      logit += mlp_eval_row(head.center_encoder, rel)[0];
      scores(i, j) = 1.0 / (1.0 + std::exp(-logit));
    }
  }
  return scores;
}

// 1 / (score + epsilon), element-wise.
inline MatX reciprocal_cost(const MatX& scores, double epsilon) {
  MatX cost(scores.rows(), scores.cols());
  for (int i = 0; i < scores.rows(); ++i)
    for (int j = 0; j < scores.cols(); ++j) cost(i, j) = 1.0 / (scores(i, j) + epsilon);
  return cost;
}

}  // namespace naive
