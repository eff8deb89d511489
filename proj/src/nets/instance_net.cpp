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

#include "radar/nets/instance_net.hpp"

#include <stdexcept>

namespace radar::nets {

InstanceNet::InstanceNet(int feature_dim, int hidden_dim, int instance_dim,
                         int neighbors)
    : block1(feature_dim, hidden_dim, neighbors),
      block2(hidden_dim, instance_dim, neighbors),
      aggregation(instance_dim, instance_dim) {}

void InstanceNet::init(Rng& rng) {
  block1.init(rng);
  block2.init(rng);
  aggregation.init(rng);
}

MatX InstanceNet::forward(const Eigen::Ref<const MatX2>& positions,
                          const Eigen::Ref<const MatX>& features, bool train,
                          Cache& cache) {
  if (positions.rows() == 0) throw std::invalid_argument("InstanceNet: empty instance");
  const MatX x1 = block1.forward(positions, features, train, cache.block1_c);
  cache.block2_out = block2.forward(positions, x1, train, cache.block2_c);
  const MatX logits = aggregation.forward(cache.block2_out, cache.aggregation_c);
  cache.member_weights = nn::softmax_cols(logits);
  return (cache.member_weights.array() * cache.block2_out.array())
      .colwise()
      .sum()
      .matrix();
}

void InstanceNet::backward(const Eigen::Ref<const MatX>& dfeature,
                           const Cache& cache) {
  const Eigen::Index m = cache.block2_out.rows();
  MatX dweights(m, instance_dim());
  MatX dx2(m, instance_dim());
  for (Eigen::Index i = 0; i < m; ++i) {
    dweights.row(i) = dfeature.row(0).cwiseProduct(cache.block2_out.row(i));
    dx2.row(i) = dfeature.row(0).cwiseProduct(cache.member_weights.row(i));
  }
  const MatX dlogits = nn::softmax_cols_backward(cache.member_weights, dweights);
  dx2 += aggregation.backward(dlogits, cache.aggregation_c);
  const MatX dx1 = block2.backward(dx2, cache.block2_c);
  block1.backward(dx1, cache.block1_c);
}

MatX InstanceNet::aggregate(const Eigen::Ref<const MatX>& member_features) {
  if (member_features.rows() == 0) {
    throw std::invalid_argument("InstanceNet::aggregate: empty instance");
  }
  const MatX logits = aggregation.forward(member_features);
  const MatX weights = nn::softmax_cols(logits);
  return (weights.array() * member_features.array()).colwise().sum().matrix();
}

void InstanceNet::zero_grad() {
  block1.zero_grad();
  block2.zero_grad();
  aggregation.zero_grad();
}

void InstanceNet::collect_params(const std::string& prefix,
                                 std::vector<nn::Param>& out) {
  block1.collect_params(prefix + ".block1", out);
  block2.collect_params(prefix + ".block2", out);
  aggregation.collect_params(prefix + ".aggregation", out);
}

void InstanceNet::collect_state(const std::string& prefix,
                                std::vector<nn::StateEntry>& out) {
  block1.collect_state(prefix + ".block1", out);
  block2.collect_state(prefix + ".block2", out);
  aggregation.collect_state(prefix + ".aggregation", out);
}

InstanceInputs instance_inputs(const SegmentedScan& scan,
                               const InstanceDescriptor& instance) {
  InstanceInputs in;
  const int m = instance.size();
  in.positions.resize(m, 2);
  in.features.resize(m, 4);
  for (int i = 0; i < m; ++i) {
    const Point& p = scan.scan.points[instance.point_indices[i]];
    in.positions.row(i) = p.position().transpose();
    in.features.row(i) = p.feature().cwiseProduct(kInputFeatureScale).transpose();
  }
  return in;
}

void compute_instance_features(InstanceNet& net, const SegmentedScan& scan,
                               std::vector<InstanceDescriptor>& instances) {
  for (InstanceDescriptor& instance : instances) {
    const InstanceInputs in = instance_inputs(scan, instance);
    InstanceNet::Cache cache;
    instance.feature = net.forward(in.positions, in.features, false, cache).row(0);
  }
}

}  // namespace radar::nets
