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

#include "radar/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radar/rng.hpp"

namespace radar::nn {

GradCheckReport check_gradients(const std::vector<Param>& params,
                                const std::function<double(bool with_grad)>& eval,
                                double step, int max_probes_per_param,
                                std::uint64_t seed) {
  GradCheckReport report;
  Rng rng(seed);

  const double base = eval(true);
  if (!std::isfinite(base)) throw std::runtime_error("gradcheck: non-finite loss");
  std::vector<MatX> analytic;
  analytic.reserve(params.size());
  for (const Param& p : params) analytic.push_back(*p.grad);

  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    MatX& value = *params[pi].value;
    const Eigen::Index total = value.size();

    std::vector<Eigen::Index> probe_at;
    if (max_probes_per_param <= 0 || total <= max_probes_per_param) {
      probe_at.resize(total);
      for (Eigen::Index i = 0; i < total; ++i) probe_at[i] = i;
    } else {
      for (int i = 0; i < max_probes_per_param; ++i) {
        probe_at.push_back(rng.index(static_cast<int>(total)));
      }
      std::sort(probe_at.begin(), probe_at.end());
      probe_at.erase(std::unique(probe_at.begin(), probe_at.end()), probe_at.end());
    }

    for (Eigen::Index flat : probe_at) {
      double* entry = value.data() + flat;
      const double saved = *entry;
      *entry = saved + step;
      const double plus = eval(false);
      *entry = saved - step;
      const double minus = eval(false);
      *entry = saved;

      const double numeric = (plus - minus) / (2.0 * step);
      const double a = analytic[pi].data()[flat];
      const double abs_err = std::abs(a - numeric);
      const double rel_err = abs_err / std::max({1.0, std::abs(a), std::abs(numeric)});
      ++report.probes;
      report.max_abs_err = std::max(report.max_abs_err, abs_err);
      if (rel_err > report.max_rel_err) {
        report.max_rel_err = rel_err;
        report.worst_param = params[pi].name;
      }
    }
  }
  return report;
}

}  // namespace radar::nn
