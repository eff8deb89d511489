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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <vector>

#include "radar/assoc/dbscan.hpp"
#include "radar/rng.hpp"

using namespace radar;
using namespace radar::assoc;

namespace {

// Union-find over all pairs within eps: the oracle partition for min_pts=1.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> components_oracle(const std::vector<Vec2>& points, double eps) {
  UnionFind uf(static_cast<int>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if ((points[i] - points[j]).norm() <= eps) {
        uf.merge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  std::vector<int> roots(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) roots[i] = uf.find(static_cast<int>(i));
  return roots;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("two points within eps form one cluster") {
  const auto labels = dbscan({{0, 0}, {5, 0}}, 10.0, 1);
  CHECK(labels == std::vector<int>{0, 0});
}

TEST_CASE("two points beyond eps form two clusters") {
  const auto labels = dbscan({{0, 0}, {25, 0}}, 10.0, 1);
  CHECK(labels == std::vector<int>{0, 1});
}

TEST_CASE("a chain is density-connected into one cluster") {
  const auto labels = dbscan({{0, 0}, {8, 0}, {16, 0}}, 10.0, 1);
  CHECK(labels == std::vector<int>{0, 0, 0});
}

TEST_CASE("labels are assigned in first-seen order") {
  const auto labels = dbscan({{100, 0}, {0, 0}, {100, 1}, {0, 1}}, 5.0, 1);
  CHECK(labels == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("min_pts=1 equals eps-graph connected components (random sets)") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + rng.index(50);
    std::vector<Vec2> points;
    points.reserve(n);
    for (int i = 0; i < n; ++i) {
      points.push_back({rng.uniform(-40, 40), rng.uniform(-40, 40)});
    }
    const double eps = rng.uniform(2.0, 15.0);
    CHECK(same_partition(dbscan(points, eps, 1), components_oracle(points, eps)));
  }
}

TEST_CASE("min_pts above one marks isolated points as noise") {
  const auto labels = dbscan({{0, 0}, {1, 0}, {2, 0}, {50, 50}}, 3.0, 3);
  CHECK(labels[0] == 0);
  CHECK(labels[1] == 0);
  CHECK(labels[2] == 0);
  CHECK(labels[3] == kDbscanNoise);
}

TEST_CASE("invalid parameters throw") {
  CHECK_THROWS_AS(dbscan({{0, 0}}, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(dbscan({{0, 0}}, 1.0, 0), std::invalid_argument);
}
