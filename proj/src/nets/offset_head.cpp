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

#include "radar/nets/offset_head.hpp"

namespace radar::nets {

OffsetHead::OffsetHead(int in_dim, int hidden_dim)
    : standard(in_dim, hidden_dim, 2), temporal(in_dim, hidden_dim, 2) {}

void OffsetHead::init(Rng& rng) {
  standard.init(rng);
  temporal.init(rng);
}

OffsetHead::Output OffsetHead::forward(const Eigen::Ref<const MatX>& x, bool train,
                                       Cache& cache) {
  Output out;
  out.standard = standard.forward(x, train, cache.standard_c);
  out.temporal = temporal.forward(x, train, cache.temporal_c);
  return out;
}

OffsetHead::Output OffsetHead::forward_eval(const Eigen::Ref<const MatX>& x) const {
  Output out;
  out.standard = standard.forward_eval(x);
  out.temporal = temporal.forward_eval(x);
  return out;
}

void OffsetHead::backward(const Eigen::Ref<const MatX>& dstandard,
                          const Eigen::Ref<const MatX>& dtemporal,
                          const Cache& cache) {
  standard.backward(dstandard, cache.standard_c);
  temporal.backward(dtemporal, cache.temporal_c);
}

void OffsetHead::zero_grad() {
  standard.zero_grad();
  temporal.zero_grad();
}

void OffsetHead::collect_params(const std::string& prefix,
                                std::vector<nn::Param>& out) {
  standard.collect_params(prefix + ".standard", out);
  temporal.collect_params(prefix + ".temporal", out);
}

void OffsetHead::collect_state(const std::string& prefix,
                               std::vector<nn::StateEntry>& out) {
  standard.collect_state(prefix + ".standard", out);
  temporal.collect_state(prefix + ".temporal", out);
}

MatX OffsetHead::build_input(const Scan& scan) {
  MatX x(scan.size(), 6);
  for (int i = 0; i < scan.size(); ++i) {
    const Point& p = scan.points[i];
    x.row(i) << p.x, p.y, p.rcs, p.doppler, p.x, p.y;
  }
  return x;
}

}  // namespace radar::nets
