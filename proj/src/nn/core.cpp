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

#include "radar/nn/core.hpp"

#include <cmath>
#include <stdexcept>

namespace radar::nn {

// ---------------------------------------------------------------------------
// Dense
// ---------------------------------------------------------------------------

Dense::Dense(int in_dim, int out_dim)
    : weight(MatX::Zero(in_dim, out_dim)),
      bias(MatX::Zero(1, out_dim)),
      dweight(MatX::Zero(in_dim, out_dim)),
      dbias(MatX::Zero(1, out_dim)) {}

void Dense::init(Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(weight.rows()));
  weight = rng.uniform_matrix(weight.rows(), weight.cols(), -bound, bound);
  bias.setZero();
}

MatX Dense::forward(const Eigen::Ref<const MatX>& x, Cache& cache) const {
  cache.input = x;
  return forward(x);
}

MatX Dense::forward(const Eigen::Ref<const MatX>& x) const {
  if (x.cols() != weight.rows()) {
    throw std::invalid_argument("Dense::forward: input has " +
                                std::to_string(x.cols()) + " columns, expected " +
                                std::to_string(weight.rows()));
  }
  return (x * weight).rowwise() + bias.row(0);
}

MatX Dense::backward(const Eigen::Ref<const MatX>& dy, const Cache& cache) {
  if (dy.cols() != weight.cols() || dy.rows() != cache.input.rows()) {
    throw std::invalid_argument("Dense::backward: gradient shape mismatch");
  }
  dweight += cache.input.transpose() * dy;
  dbias.row(0) += dy.colwise().sum();
  return dy * weight.transpose();
}

void Dense::zero_grad() {
  dweight.setZero();
  dbias.setZero();
}

void Dense::collect_params(const std::string& prefix, std::vector<Param>& out) {
  out.push_back({prefix + ".weight", &weight, &dweight});
  out.push_back({prefix + ".bias", &bias, &dbias});
}

void Dense::collect_state(const std::string& prefix, std::vector<StateEntry>& out) {
  out.push_back({prefix + ".weight", &weight});
  out.push_back({prefix + ".bias", &bias});
}

// ---------------------------------------------------------------------------
// BatchNorm
// ---------------------------------------------------------------------------

BatchNorm::BatchNorm(int dim)
    : gamma(MatX::Ones(1, dim)),
      beta(MatX::Zero(1, dim)),
      dgamma(MatX::Zero(1, dim)),
      dbeta(MatX::Zero(1, dim)),
      running_mean(MatX::Zero(1, dim)),
      running_var(MatX::Ones(1, dim)) {}

MatX BatchNorm::forward(const Eigen::Ref<const MatX>& x, bool train, Cache& cache) {
  if (x.cols() != gamma.cols()) {
    throw std::invalid_argument("BatchNorm::forward: feature dimension mismatch");
  }
  const Eigen::Index n = x.rows();
  if (n < 1) throw std::invalid_argument("BatchNorm::forward: empty batch");

  cache.batch_stats = train && n >= 2 && !normalize_with_running;
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd var;
  if (train && n >= 2) {
    mean = x.colwise().mean();
    var = (x.rowwise() - mean).array().square().colwise().mean().matrix();
  }
  if (!cache.batch_stats) {
    // Normalize with the (pre-update) running estimates.
    const Eigen::RowVectorXd run_mean = running_mean.row(0);
    const Eigen::RowVectorXd run_var = running_var.row(0);
    if (train && n >= 2) {
      running_mean = (1.0 - momentum) * running_mean + momentum * mean;
      running_var = (1.0 - momentum) * running_var + momentum * var;
    }
    mean = run_mean;
    var = run_var;
  } else {
    running_mean = (1.0 - momentum) * running_mean + momentum * mean;
    running_var = (1.0 - momentum) * running_var + momentum * var;
  }
  cache.inv_std = (var.array() + eps).rsqrt();
  cache.x_hat = ((x.rowwise() - mean).array().rowwise() * cache.inv_std.array()).matrix();
  Eigen::ArrayXXd y = cache.x_hat.array().rowwise() * gamma.row(0).array();
  y = y.rowwise() + beta.row(0).array();
  return y.matrix();
}

MatX BatchNorm::forward(const Eigen::Ref<const MatX>& x, bool train) {
  Cache cache;
  return forward(x, train, cache);
}

MatX BatchNorm::backward(const Eigen::Ref<const MatX>& dy, const Cache& cache) {
  dgamma.row(0) += (dy.array() * cache.x_hat.array()).colwise().sum().matrix();
  dbeta.row(0) += dy.colwise().sum();

  const Eigen::ArrayXXd g = dy.array().rowwise() * gamma.row(0).array();
  if (!cache.batch_stats) {
    return (g.rowwise() * cache.inv_std.array()).matrix();
  }
  const double n = static_cast<double>(dy.rows());
  const Eigen::Array<double, 1, Eigen::Dynamic> sum_g = g.colwise().sum();
  const Eigen::Array<double, 1, Eigen::Dynamic> sum_gx =
      (g * cache.x_hat.array()).colwise().sum();
  Eigen::ArrayXXd dx = g * n;
  dx.rowwise() -= sum_g;
  dx -= cache.x_hat.array().rowwise() * sum_gx;
  dx.rowwise() *= cache.inv_std.array() / n;
  return dx.matrix();
}

void BatchNorm::zero_grad() {
  dgamma.setZero();
  dbeta.setZero();
}

void BatchNorm::collect_params(const std::string& prefix, std::vector<Param>& out) {
  out.push_back({prefix + ".gamma", &gamma, &dgamma});
  out.push_back({prefix + ".beta", &beta, &dbeta});
}

void BatchNorm::collect_state(const std::string& prefix, std::vector<StateEntry>& out) {
  out.push_back({prefix + ".gamma", &gamma});
  out.push_back({prefix + ".beta", &beta});
  out.push_back({prefix + ".running_mean", &running_mean});
  out.push_back({prefix + ".running_var", &running_var});
}

// ---------------------------------------------------------------------------
// Activations
// ---------------------------------------------------------------------------

MatX relu(const Eigen::Ref<const MatX>& x, MatX& mask) {
  mask = (x.array() > 0.0).cast<double>();
  return x.cwiseProduct(mask);
}

MatX relu_backward(const Eigen::Ref<const MatX>& dy, const MatX& mask) {
  return dy.cwiseProduct(mask);
}

MatX softmax_rows(const Eigen::Ref<const MatX>& scores) {
  MatX out(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double shift = scores.row(i).maxCoeff();
    Eigen::ArrayXd e = (scores.row(i).array() - shift).exp();
    out.row(i) = (e / e.sum()).matrix();
  }
  return out;
}

MatX softmax_cols(const Eigen::Ref<const MatX>& scores) {
  MatX out(scores.rows(), scores.cols());
  for (Eigen::Index j = 0; j < scores.cols(); ++j) {
    const double shift = scores.col(j).maxCoeff();
    Eigen::ArrayXd e = (scores.col(j).array() - shift).exp();
    out.col(j) = (e / e.sum()).matrix();
  }
  return out;
}

MatX softmax_rows_backward(const Eigen::Ref<const MatX>& y,
                           const Eigen::Ref<const MatX>& dy) {
  MatX dx(y.rows(), y.cols());
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    const double dot = y.row(i).dot(dy.row(i));
    dx.row(i) = (y.row(i).array() * (dy.row(i).array() - dot)).matrix();
  }
  return dx;
}

MatX softmax_cols_backward(const Eigen::Ref<const MatX>& y,
                           const Eigen::Ref<const MatX>& dy) {
  MatX dx(y.rows(), y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double dot = y.col(j).dot(dy.col(j));
    dx.col(j) = (y.col(j).array() * (dy.col(j).array() - dot)).matrix();
  }
  return dx;
}

MatX sigmoid(const Eigen::Ref<const MatX>& x) {
  return (1.0 / (1.0 + (-x.array()).exp())).matrix();
}

MatX sigmoid_backward(const Eigen::Ref<const MatX>& y,
                      const Eigen::Ref<const MatX>& dy) {
  return (dy.array() * y.array() * (1.0 - y.array())).matrix();
}

// ---------------------------------------------------------------------------
// Mlp
// ---------------------------------------------------------------------------

Mlp::Mlp(int in_dim, int hidden_dim, int out_dim)
    : fc1(in_dim, hidden_dim), bn(hidden_dim), fc2(hidden_dim, out_dim) {}

void Mlp::init(Rng& rng) {
  fc1.init(rng);
  fc2.init(rng);
}

MatX Mlp::forward(const Eigen::Ref<const MatX>& x, bool train, Cache& cache) {
  MatX h = fc1.forward(x, cache.fc1);
  h = bn.forward(h, train, cache.bn);
  h = relu(h, cache.relu_mask);
  return fc2.forward(h, cache.fc2);
}

MatX Mlp::forward_eval(const Eigen::Ref<const MatX>& x) const {
  MatX h = fc1.forward(x);
  const Eigen::RowVectorXd scale =
      ((bn.running_var.row(0).array() + bn.eps).rsqrt() * bn.gamma.row(0).array())
          .matrix();
  Eigen::ArrayXXd a = (h.rowwise() - bn.running_mean.row(0)).array();
  a = a.rowwise() * scale.array();
  a = a.rowwise() + bn.beta.row(0).array();
  h = a.cwiseMax(0.0).matrix();
  return fc2.forward(h);
}

MatX Mlp::backward(const Eigen::Ref<const MatX>& dy, const Cache& cache) {
  MatX dh = fc2.backward(dy, cache.fc2);
  dh = relu_backward(dh, cache.relu_mask);
  dh = bn.backward(dh, cache.bn);
  return fc1.backward(dh, cache.fc1);
}

void Mlp::zero_grad() {
  fc1.zero_grad();
  bn.zero_grad();
  fc2.zero_grad();
}

void Mlp::collect_params(const std::string& prefix, std::vector<Param>& out) {
  fc1.collect_params(prefix + ".fc1", out);
  bn.collect_params(prefix + ".bn", out);
  fc2.collect_params(prefix + ".fc2", out);
}

void Mlp::collect_state(const std::string& prefix, std::vector<StateEntry>& out) {
  fc1.collect_state(prefix + ".fc1", out);
  bn.collect_state(prefix + ".bn", out);
  fc2.collect_state(prefix + ".fc2", out);
}

}  // namespace radar::nn
