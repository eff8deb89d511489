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

#include "radar/assoc/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace radar::assoc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path assignment with potentials; requires
// rows <= cols and assigns every row. 0-indexed row -> column map.
std::vector<int> solve_rectangular(const MatX& c) {
  const int n = static_cast<int>(c.rows());
  const int m = static_cast<int>(c.cols());
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> matched_row(m + 1, 0), way(m + 1, 0);

  for (int i = 1; i <= n; ++i) {
    matched_row[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = matched_row[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[matched_row[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (matched_row[j0] != 0);
    do {
      const int j1 = way[j0];
      matched_row[j0] = matched_row[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (matched_row[j] > 0) row_to_col[matched_row[j] - 1] = j - 1;
  }
  return row_to_col;
}

struct SubSolution {
  int cardinality = 0;
  double cost = 0.0;
  std::vector<std::pair<int, int>> pairs;
};

// Optimal assignment restricted to the given row/column subsets (original
// indices). Forbidden entries are priced out and stripped from the result.
SubSolution solve_subset(const MatX& cost, const BoolMat& forbidden,
                         const std::vector<int>& rows, const std::vector<int>& cols,
                         double big) {
  SubSolution sol;
  if (rows.empty() || cols.empty()) return sol;

  const bool transpose = rows.size() > cols.size();
  const std::vector<int>& r_idx = transpose ? cols : rows;
  const std::vector<int>& c_idx = transpose ? rows : cols;

  MatX sub(r_idx.size(), c_idx.size());
  for (std::size_t i = 0; i < r_idx.size(); ++i) {
    for (std::size_t j = 0; j < c_idx.size(); ++j) {
      const int r = transpose ? c_idx[j] : r_idx[i];
      const int c = transpose ? r_idx[i] : c_idx[j];
      sub(i, j) = forbidden(r, c) ? big : cost(r, c);
    }
  }

  const std::vector<int> row_to_col = solve_rectangular(sub);
  for (std::size_t i = 0; i < r_idx.size(); ++i) {
    const int j = row_to_col[i];
    if (j < 0) continue;
    const int r = transpose ? c_idx[j] : r_idx[i];
    const int c = transpose ? r_idx[i] : c_idx[j];
    if (forbidden(r, c)) continue;
    sol.pairs.emplace_back(r, c);
    sol.cost += cost(r, c);
    ++sol.cardinality;
  }
  return sol;
}

}  // namespace

Assignment hungarian(const Eigen::Ref<const MatX>& cost, const BoolMat& forbidden) {
  const int a = static_cast<int>(cost.rows());
  const int b = static_cast<int>(cost.cols());
  if (forbidden.rows() != a || forbidden.cols() != b) {
    throw std::invalid_argument("hungarian: mask shape mismatch");
  }
  Assignment result;
  if (a == 0 || b == 0) return result;

  double max_abs = 0.0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      if (forbidden(i, j)) continue;
      if (!std::isfinite(cost(i, j))) {
        throw std::invalid_argument("hungarian: non-finite allowed cost");
      }
      max_abs = std::max(max_abs, std::abs(cost(i, j)));
    }
  }
  const double big = (max_abs + 1.0) * (std::max(a, b) + 1.0) * 4.0;

  std::vector<int> rows(a), cols(b);
  for (int i = 0; i < a; ++i) rows[i] = i;
  for (int j = 0; j < b; ++j) cols[j] = j;

  const SubSolution base = solve_subset(cost, forbidden, rows, cols, big);
  int want_card = base.cardinality;
  double want_cost = base.cost;
  const double tol = 1e-9 * (1.0 + std::abs(base.cost));

  // Fix rows one at a time to the smallest column that preserves the
  // optimum; this yields the lexicographically smallest optimal assignment.
  std::vector<int> rem_cols = cols;
  std::vector<int> rem_rows = rows;
  for (int r = 0; r < a; ++r) {
    rem_rows.erase(std::find(rem_rows.begin(), rem_rows.end(), r));
    bool fixed = false;
    for (std::size_t cj = 0; cj < rem_cols.size(); ++cj) {
      const int c = rem_cols[cj];
      if (forbidden(r, c)) continue;
      std::vector<int> next_cols = rem_cols;
      next_cols.erase(next_cols.begin() + static_cast<std::ptrdiff_t>(cj));
      const SubSolution rest = solve_subset(cost, forbidden, rem_rows, next_cols, big);
      if (rest.cardinality + 1 == want_card &&
          std::abs(rest.cost + cost(r, c) - want_cost) <= tol) {
        result.pairs.emplace_back(r, c);
        result.total_cost += cost(r, c);
        want_card -= 1;
        want_cost -= cost(r, c);
        rem_cols = std::move(next_cols);
        fixed = true;
        break;
      }
    }
    // Not fixed: row r stays unmatched in the canonical solution.
    (void)fixed;
  }
  return result;
}

Assignment hungarian(const Eigen::Ref<const MatX>& cost) {
  return hungarian(cost, BoolMat::Constant(cost.rows(), cost.cols(), false));
}

}  // namespace radar::assoc
