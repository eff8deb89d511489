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

#include "radar/nets/verify.hpp"

#include <algorithm>

#include "radar/nets/attention.hpp"
#include "radar/nets/instance_net.hpp"
#include "radar/nets/similarity.hpp"
#include "radar/nn/gradcheck.hpp"
#include "radar/nn/losses.hpp"
#include "radar/rng.hpp"

namespace radar::nets {

namespace {

using nn::GradCheckReport;
using nn::Param;

void randomize_bn(nn::Mlp& mlp, Rng& rng) {
  mlp.bn.running_mean = rng.uniform_matrix(1, mlp.bn.dim(), -0.5, 0.5);
  mlp.bn.running_var = rng.uniform_matrix(1, mlp.bn.dim(), 0.5, 1.5);
  mlp.bn.gamma = rng.uniform_matrix(1, mlp.bn.dim(), 0.5, 1.5);
  mlp.bn.beta = rng.uniform_matrix(1, mlp.bn.dim(), -0.5, 0.5);
}

GradCheckReport check_dense(std::uint64_t seed) {
  Rng rng(seed);
  nn::Dense layer(4, 3);
  layer.init(rng);
  const MatX x = rng.uniform_matrix(5, 4, -1, 1);
  const MatX w = rng.uniform_matrix(5, 3, -1, 1);
  std::vector<Param> params;
  layer.collect_params("dense", params);
  return nn::check_gradients(
      params,
      [&](bool with_grad) {
        nn::Dense::Cache cache;
        const MatX y = layer.forward(x, cache);
        if (with_grad) {
          layer.zero_grad();
          layer.backward(w, cache);
        }
        return (y.array() * w.array()).sum();
      },
      1e-5, 0, seed);
}

GradCheckReport check_batchnorm_eval(std::uint64_t seed) {
  Rng rng(seed);
  nn::BatchNorm bn(4);
  bn.gamma = rng.uniform_matrix(1, 4, 0.5, 1.5);
  bn.beta = rng.uniform_matrix(1, 4, -0.5, 0.5);
  bn.running_mean = rng.uniform_matrix(1, 4, -1, 1);
  bn.running_var = rng.uniform_matrix(1, 4, 0.5, 2.0);
  const MatX x = rng.uniform_matrix(5, 4, -1, 1);
  const MatX w = rng.uniform_matrix(5, 4, -1, 1);
  std::vector<Param> params;
  bn.collect_params("bn", params);
  return nn::check_gradients(
      params,
      [&](bool with_grad) {
        nn::BatchNorm::Cache cache;
        const MatX y = bn.forward(x, false, cache);
        if (with_grad) {
          bn.zero_grad();
          bn.backward(w, cache);
        }
        return (y.array() * w.array()).sum();
      },
      1e-5, 0, seed);
}

GradCheckReport check_attention(std::uint64_t seed) {
  Rng rng(seed);
  VectorAttention attn(5, 3);
  attn.init(rng);
  randomize_bn(attn.positional, rng);
  const int m = 5;
  const MatX2 positions = rng.uniform_matrix(m, 2, -8, 8);
  const MatX x = rng.uniform_matrix(m, 5, -1, 1);
  const MatX w = rng.uniform_matrix(m, 5, -1, 1);
  std::vector<Param> params;
  attn.collect_params("attention", params);
  return nn::check_gradients(
      params,
      [&](bool with_grad) {
        VectorAttention::Cache cache;
        const MatX y = attn.forward(positions, x, false, cache);
        if (with_grad) {
          attn.zero_grad();
          attn.backward(w, cache);
        }
        return (y.array() * w.array()).sum();
      },
      1e-5, 30, seed);
}

GradCheckReport check_aggregation(std::uint64_t seed) {
  Rng rng(seed);
  InstanceNet net(4, 5, 6, 3);
  net.init(rng);
  const MatX members = rng.uniform_matrix(5, 6, -1, 1);
  const MatX w = rng.uniform_matrix(1, 6, -1, 1);
  std::vector<Param> params;
  net.aggregation.collect_params("aggregation", params);
  return nn::check_gradients(
      params,
      [&](bool with_grad) {
        nn::Dense::Cache agg_c;
        const MatX logits = net.aggregation.forward(members, agg_c);
        const MatX weights = nn::softmax_cols(logits);
        const MatX feature = (weights.array() * members.array()).colwise().sum().matrix();
        if (with_grad) {
          net.aggregation.zero_grad();
          MatX dweights(members.rows(), members.cols());
          for (Eigen::Index i = 0; i < members.rows(); ++i) {
            dweights.row(i) = w.row(0).cwiseProduct(members.row(i));
          }
          net.aggregation.backward(nn::softmax_cols_backward(weights, dweights), agg_c);
        }
        return (feature.array() * w.array()).sum();
      },
      1e-5, 0, seed);
}

GradCheckReport check_similarity_head(std::uint64_t seed) {
  Rng rng(seed);
  SimilarityHead head(5);
  head.init(rng);
  randomize_bn(head.center_encoder, rng);
  const MatX fa = rng.uniform_matrix(3, 5, -1, 1);
  const MatX fb = rng.uniform_matrix(4, 5, -1, 1);
  const MatX2 ca = rng.uniform_matrix(3, 2, -5, 5);
  const MatX2 cb = rng.uniform_matrix(4, 2, -5, 5);
  const MatX w = rng.uniform_matrix(3, 4, -1, 1);
  std::vector<Param> params;
  head.collect_params("similarity", params);
  return nn::check_gradients(
      params,
      [&](bool with_grad) {
        SimilarityHead::Cache cache;
        const MatX scores = head.forward(fa, ca, fb, cb, false, cache);
        if (with_grad) {
          head.zero_grad();
          head.backward(w, cache);
        }
        return (scores.array() * w.array()).sum();
      },
      1e-5, 30, seed);
}

GradCheckReport check_bce(std::uint64_t seed) {
  Rng rng(seed);
  MatX probs = rng.uniform_matrix(4, 4, 0.05, 0.95);
  MatX target(4, 4);
  for (int i = 0; i < 16; ++i) target.data()[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
  MatX mask = MatX::Ones(4, 4);
  mask(2, 2) = 0.0;
  MatX grad = MatX::Zero(4, 4);
  std::vector<Param> params = {{"probs", &probs, &grad}};
  return nn::check_gradients(
      params,
      [&](bool with_grad) {
        const nn::BceResult result = nn::bce_loss(probs, target, mask);
        if (with_grad) grad = result.grad;
        return result.loss;
      },
      1e-5, 0, seed);
}

GradCheckReport check_offset_l1(std::uint64_t seed) {
  Rng rng(seed);
  const MatX2 points = rng.uniform_matrix(6, 2, -5, 5);
  const MatX2 centers = rng.uniform_matrix(6, 2, -5, 5);
  MatX offsets = rng.uniform_matrix(6, 2, -5, 5);
  std::vector<std::uint8_t> mask = {1, 1, 1, 0, 1, 1};
  MatX grad = MatX::Zero(6, 2);
  std::vector<Param> params = {{"offsets", &offsets, &grad}};
  return nn::check_gradients(
      params,
      [&](bool with_grad) {
        const auto result = nn::offset_l1_loss_grad(offsets, centers, points, mask);
        if (with_grad) grad = result.grad;
        return result.loss;
      },
      1e-5, 0, seed);
}

}  // namespace

std::vector<GradientSuiteEntry> gradient_suite(int seeds) {
  struct Op {
    const char* name;
    GradCheckReport (*run)(std::uint64_t);
  };
  const Op ops[] = {
      {"dense", check_dense},
      {"batchnorm_eval", check_batchnorm_eval},
      {"vector_attention", check_attention},
      {"attentive_aggregation", check_aggregation},
      {"similarity_head", check_similarity_head},
      {"bce_loss", check_bce},
      {"offset_l1_loss", check_offset_l1},
  };
  std::vector<GradientSuiteEntry> entries;
  for (const Op& op : ops) {
    GradientSuiteEntry entry;
    entry.op = op.name;
    for (int s = 0; s < seeds; ++s) {
      const GradCheckReport report = op.run(static_cast<std::uint64_t>(s) + 1);
      entry.max_rel_err = std::max(entry.max_rel_err, report.max_rel_err);
      entry.probes += report.probes;
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

double gradient_suite_worst(const std::vector<GradientSuiteEntry>& entries) {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.max_rel_err);
  return worst;
}

}  // namespace radar::nets
