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

#include "radar/nets/similarity.hpp"

#include <stdexcept>

namespace radar::nets {

SimilarityHead::SimilarityHead(int instance_dim)
    : query_proj(instance_dim, instance_dim),
      key_proj(instance_dim, instance_dim),
      center_encoder(2, 2, 1) {
  center_encoder.bn.normalize_with_running = true;
}

void SimilarityHead::init(Rng& rng) {
  query_proj.init(rng);
  key_proj.init(rng);
  center_encoder.init(rng);
  // The feature dot product spans instance_dim channels of unnormalized
  // point features; damp the initial projections so the sigmoid starts
  // near 0.5 instead of saturating.
  query_proj.weight *= 0.125;
  key_proj.weight *= 0.125;
}

MatX SimilarityHead::forward(const Eigen::Ref<const MatX>& features_a,
                             const Eigen::Ref<const MatX2>& centers_a,
                             const Eigen::Ref<const MatX>& features_b,
                             const Eigen::Ref<const MatX2>& centers_b, bool train,
                             Cache& cache) {
  const Eigen::Index a = features_a.rows();
  const Eigen::Index b = features_b.rows();
  if (a < 1 || b < 1) throw std::invalid_argument("SimilarityHead: empty side");
  if (centers_a.rows() != a || centers_b.rows() != b) {
    throw std::invalid_argument("SimilarityHead: center row count mismatch");
  }

  cache.query = query_proj.forward(features_a, cache.query_c);
  cache.key = key_proj.forward(features_b, cache.key_c);
  MatX logits = cache.query * cache.key.transpose();

  MatX2 relative(a * b, 2);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < b; ++j)
      relative.row(i * b + j) = centers_a.row(i) - centers_b.row(j);
  const MatX encoded = center_encoder.forward(relative, train, cache.encoder_c);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < b; ++j) logits(i, j) += encoded(i * b + j, 0);

  cache.scores = nn::sigmoid(logits);
  return cache.scores;
}

MatX SimilarityHead::forward_eval(const Eigen::Ref<const MatX>& features_a,
                                  const Eigen::Ref<const MatX2>& centers_a,
                                  const Eigen::Ref<const MatX>& features_b,
                                  const Eigen::Ref<const MatX2>& centers_b) {
  Cache cache;
  return forward(features_a, centers_a, features_b, centers_b, false, cache);
}

SimilarityHead::InputGrads SimilarityHead::backward(
    const Eigen::Ref<const MatX>& dscores, const Cache& cache) {
  const Eigen::Index a = cache.query.rows();
  const Eigen::Index b = cache.key.rows();
  const MatX dlogits = nn::sigmoid_backward(cache.scores, dscores);

  MatX dencoded(a * b, 1);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < b; ++j) dencoded(i * b + j, 0) = dlogits(i, j);
  center_encoder.backward(dencoded, cache.encoder_c);

  InputGrads grads;
  const MatX dquery = dlogits * cache.key;
  const MatX dkey = dlogits.transpose() * cache.query;
  grads.dfeatures_a = query_proj.backward(dquery, cache.query_c);
  grads.dfeatures_b = key_proj.backward(dkey, cache.key_c);
  return grads;
}

void SimilarityHead::zero_grad() {
  query_proj.zero_grad();
  key_proj.zero_grad();
  center_encoder.zero_grad();
}

void SimilarityHead::collect_params(const std::string& prefix,
                                    std::vector<nn::Param>& out) {
  query_proj.collect_params(prefix + ".query_proj", out);
  key_proj.collect_params(prefix + ".key_proj", out);
  center_encoder.collect_params(prefix + ".center_encoder", out);
}

void SimilarityHead::collect_state(const std::string& prefix,
                                   std::vector<nn::StateEntry>& out) {
  query_proj.collect_state(prefix + ".query_proj", out);
  key_proj.collect_state(prefix + ".key_proj", out);
  center_encoder.collect_state(prefix + ".center_encoder", out);
}

MatX similarity_cost(const Eigen::Ref<const MatX>& scores, double epsilon) {
  return (scores.array() + epsilon).inverse().matrix();
}

}  // namespace radar::nets
