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

#include "radar/geometry.hpp"
#include "radar/nets/attention.hpp"
#include "radar/types.hpp"

namespace radar::nets {

/// Fixed diagonal conditioning of the raw (x, y, rcs, v) inputs. Coordinates
/// span tens of meters and RCS tens of dBsm; without a backbone in front of
/// the attention blocks, unscaled inputs destabilize training.
inline const Eigen::Vector4d kInputFeatureScale{0.1, 0.1, 0.1, 0.2};

/// Raw network inputs of one instance: member coordinates and their scaled
/// point features.
struct InstanceInputs {
  MatX2 positions;
  MatX features;
};

InstanceInputs instance_inputs(const SegmentedScan& scan,
                               const InstanceDescriptor& instance);

/// Two transformer blocks followed by attentive aggregation: one fixed-size
/// feature per instance, independent of the instance's point count.
class InstanceNet {
 public:
  InstanceNet() = default;
  /// dims = (input feature dim, hidden dim, instance feature dim).
  InstanceNet(int feature_dim, int hidden_dim, int instance_dim, int neighbors);

  void init(Rng& rng);

  struct Cache {
    TransformerBlock::Cache block1_c, block2_c;
    nn::Dense::Cache aggregation_c;
    MatX member_weights;  // m x instance_dim, softmax over members per channel
    MatX block2_out;      // m x instance_dim
  };

  /// positions m x 2, features m x feature_dim -> 1 x instance_dim.
  MatX forward(const Eigen::Ref<const MatX2>& positions,
               const Eigen::Ref<const MatX>& features, bool train, Cache& cache);
  /// Backward from the instance feature gradient (1 x instance_dim).
  void backward(const Eigen::Ref<const MatX>& dfeature, const Cache& cache);

  /// Attentive aggregation alone: softmax-weighted sum of member rows.
  MatX aggregate(const Eigen::Ref<const MatX>& member_features);

  void zero_grad();
  void collect_params(const std::string& prefix, std::vector<nn::Param>& out);
  void collect_state(const std::string& prefix, std::vector<nn::StateEntry>& out);

  int instance_dim() const { return aggregation.out_dim(); }

  TransformerBlock block1;
  TransformerBlock block2;
  nn::Dense aggregation;
};

/// Runs the instance network in eval mode over every descriptor of the scan
/// and fills in the feature vectors. Member order does not change the result
/// when pairwise distances are distinct.
void compute_instance_features(InstanceNet& net, const SegmentedScan& scan,
                               std::vector<InstanceDescriptor>& instances);

}  // namespace radar::nets
