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
#include "radar/types.hpp"

namespace radar::nets {

/// Dot-product attention between instance features with a sigmoid in place
/// of the softmax and an additive scalar encoding of the relative centers.
/// Rows are the queries (tracks), columns the keys (detections).
class SimilarityHead {
 public:
  SimilarityHead() = default;
  explicit SimilarityHead(int instance_dim);

  void init(Rng& rng);

  struct Cache {
    nn::Dense::Cache query_c, key_c;
    nn::Mlp::Cache encoder_c;
    MatX query, key;  // a x d, b x d
    MatX scores;      // a x b, sigmoid output
  };

  /// Scores in (0,1): sigmoid(Q K^T + encode(center_i - center_j)).
  MatX forward(const Eigen::Ref<const MatX>& features_a,
               const Eigen::Ref<const MatX2>& centers_a,
               const Eigen::Ref<const MatX>& features_b,
               const Eigen::Ref<const MatX2>& centers_b, bool train, Cache& cache);
  MatX forward_eval(const Eigen::Ref<const MatX>& features_a,
                    const Eigen::Ref<const MatX2>& centers_a,
                    const Eigen::Ref<const MatX>& features_b,
                    const Eigen::Ref<const MatX2>& centers_b);

  struct InputGrads {
    MatX dfeatures_a;
    MatX dfeatures_b;
  };
  InputGrads backward(const Eigen::Ref<const MatX>& dscores, const Cache& cache);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<nn::Param>& out);
  void collect_state(const std::string& prefix, std::vector<nn::StateEntry>& out);

  nn::Dense query_proj;
  nn::Dense key_proj;
  nn::Mlp center_encoder;  // 2 -> 2 -> 1
};

/// Element-wise reciprocal cost 1 / (score + epsilon); strictly decreasing
/// in the score.
MatX similarity_cost(const Eigen::Ref<const MatX>& scores, double epsilon);

}  // namespace radar::nets
