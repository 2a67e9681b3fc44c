// Copyright 2026 The qstack Authors
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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "qstack/error.hpp"
#include "qstack/qec.hpp"

using namespace qstack;

namespace {

bool corrected(const DecodingGraph& g, const std::vector<int>& errors) {
  const auto hot = syndrome_of(g, errors);
  const DecodeResult r = decode(g, hot);
  if (syndrome_of(g, r.correction) != hot) return false;
  ErrorLog log(g);
  log.apply(errors);
  log.apply(r.correction);
  return !log.logical_flip();
}

}  // namespace

TEST_CASE("layout counts and site pattern") {
  for (int d : {3, 5, 7}) {
    const SurfaceCodeLayout l(d);
    int data = 0, x = 0, z = 0;
    for (int r = 0; r < l.width(); ++r)
      for (int c = 0; c < l.width(); ++c) {
        const SiteType s = l.site(r, c);
        if ((r + c) % 2 == 0) {
          CHECK(s == SiteType::Data);
          ++data;
        } else {
          CHECK(s == (r % 2 == 0 ? SiteType::XAncilla : SiteType::ZAncilla));
          (r % 2 == 0 ? x : z)++;
        }
      }
    CHECK(data == l.data_count());
    CHECK(x == l.x_ancilla_count());
    CHECK(z == l.z_ancilla_count());
  }
  CHECK_THROWS_AS(SurfaceCodeLayout(2), ValidationError);
}

TEST_CASE("horizontal edges join the X ancillas next to each data qubit") {
  const int d = 5;
  const DecodingGraph g = build_graph(d, 2);
  const SurfaceCodeLayout l(d);
  const int w = l.width();
  for (int q = 0; q < g.data_count(); ++q) {
    const auto [r, c] = g.data_sites[static_cast<std::size_t>(q)];
    std::multiset<int> expected;
    for (auto [dr, dc] : {std::pair{0, -1}, {0, 1}, {-1, 0}, {1, 0}}) {
      const int rr = r + dr, cc = c + dc;
      if (rr < 0 || cc < 0 || rr >= w || cc >= w || l.site(rr, cc) != SiteType::XAncilla) continue;
      expected.insert(g.vertex(rr / 2, (cc - 1) / 2, 0));
    }
    if (expected.size() == 1) expected.insert(g.boundary);
    REQUIRE(expected.size() == 2);
    const GraphEdge& e = g.edges[static_cast<std::size_t>(g.data_edges[static_cast<std::size_t>(q)])];
    CHECK(std::multiset<int>{e.u, e.v} == expected);
  }
}

TEST_CASE("a boundary-to-boundary chain is a logical operator") {
  const DecodingGraph g = build_graph(5, 1);
  std::vector<int> chain;
  for (int q = 0; q < g.data_count(); ++q)
    if (g.data_sites[static_cast<std::size_t>(q)][0] == 0) chain.push_back(g.data_edges[static_cast<std::size_t>(q)]);
  CHECK(syndrome_of(g, chain).empty());
  ErrorLog log(g);
  log.apply(chain);
  CHECK(log.logical_flip());
  log.apply(chain);
  CHECK(log.empty());
}

TEST_CASE("every single data error is corrected at d = 3") {
  const DecodingGraph g = build_graph(3, 1);
  CHECK(corrected(g, {}));
  for (int q = 0; q < g.data_count(); ++q) CHECK(corrected(g, {g.data_edges[static_cast<std::size_t>(q)]}));
}

TEST_CASE("every weight-two data error is corrected at d = 5") {
  const DecodingGraph g = build_graph(5, 1);
  int failures = 0;
  for (int a = 0; a < g.data_count(); ++a)
    for (int b = a + 1; b < g.data_count(); ++b)
      if (!corrected(g, {g.data_edges[static_cast<std::size_t>(a)], g.data_edges[static_cast<std::size_t>(b)]}))
        ++failures;
  CHECK(failures == 0);
}

TEST_CASE("single measurement errors are absorbed over repeated rounds") {
  const DecodingGraph g = build_graph(3, 3);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (g.edges[e].vertical()) CHECK(corrected(g, {static_cast<int>(e)}));
}

TEST_CASE("corrections reproduce the observed syndrome") {
  const DecodingGraph g = build_graph(5, 5);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const SyndromeHistory h = sample_errors(g, 0.02, 0.02, s);
    CHECK(syndrome_of(g, h.error_edges) == h.hot);
    const DecodeResult r = decode(g, h.hot);
    CHECK(syndrome_of(g, r.correction) == h.hot);
    CHECK(std::is_sorted(r.correction.begin(), r.correction.end()));
    if (h.hot.empty()) CHECK(r.correction.empty());
  }
}

TEST_CASE("logical failure rates") {
  CHECK(logical_failure_rate(3, 0.0, 500, 1).failures == 0);
  const RateEstimate d3 = logical_failure_rate(3, 0.01, 20000, 5, 2);
  const RateEstimate d5 = logical_failure_rate(5, 0.01, 20000, 5, 2);
  CHECK(d5.rate < d3.rate);
  CHECK(logical_failure_rate(3, 0.01, 3000, 5, 1).failures == logical_failure_rate(3, 0.01, 3000, 5, 4).failures);
  const Table t = logical_rate_table({3}, {0.01}, 100, 1);
  CHECK(t.columns == std::vector<std::string>{"d", "p", "shots", "p_log", "p_log_stderr"});
}

TEST_CASE("timeout rate under a work budget") {
  const auto unlimited = timeout_stats(3, 0.02, std::nullopt, 3000, 9);
  CHECK(unlimited.p_timeout == 0.0);
  CHECK(unlimited.inequality_holds);
  const auto none = timeout_stats(3, 0.02, 0, 3000, 9);
  std::size_t busy = 0;
  for (auto w : none.work) busy += w > 0;
  CHECK(none.p_timeout == doctest::Approx(double(busy) / 3000));
  CHECK_FALSE(none.inequality_holds);
  double prev = 1.0;
  for (std::uint64_t budget : {0, 10, 50, 100, 200, 400, 1000, 100000}) {
    const auto t = timeout_stats(3, 0.02, budget, 3000, 9);
    CHECK(t.p_timeout <= prev);
    prev = t.p_timeout;
  }
  CHECK(prev == 0.0);
}

TEST_CASE("simple quantum volume") {
  CHECK(simple_quantum_volume(100, 1e-6) == 1e8);
  CHECK(simple_quantum_volume(3, 0.3) == 9.0);
  for (double n : {10.0, 340.0})
    for (double p : {1e-3, 2.5e-7}) {
      const double v = simple_quantum_volume(n, p);
      CHECK(simple_quantum_volume(n, n / v) == v);
    }
  CHECK_THROWS_AS(simple_quantum_volume(10, 0.0), ValidationError);
}

TEST_CASE("cluster forest, parities and peeling stay consistent") {
  const DecodingGraph g = build_graph(5, 5);
  const int n = g.vertex_count();
  for (std::uint64_t s = 0; s < 300; ++s) {
    const SyndromeHistory h = sample_errors(g, 0.02, 0.02, 4000 + s);
    ClusterForest f = grow_clusters(g, h.hot);

    // Parent links reach a self-parented root without cycles.
    for (int v = 0; v < n; ++v) {
      int x = v, steps = 0;
      while (f.parent[static_cast<std::size_t>(x)] != x && steps <= n) {
        x = f.parent[static_cast<std::size_t>(x)];
        ++steps;
      }
      REQUIRE(steps <= n);
    }

    std::vector<int> hot_count(static_cast<std::size_t>(n), 0), members(static_cast<std::size_t>(n), 0);
    for (int v : h.hot) ++hot_count[static_cast<std::size_t>(f.find(v))];
    for (int v = 0; v < n; ++v) ++members[static_cast<std::size_t>(f.find(v))];
    const int boundary_root = f.find(g.boundary);
    for (int r = 0; r < n; ++r) {
      if (f.find(r) != r) continue;
      CHECK(f.size[static_cast<std::size_t>(r)] == members[static_cast<std::size_t>(r)]);
      CHECK(static_cast<bool>(f.touches_boundary[static_cast<std::size_t>(r)]) == (r == boundary_root));
      if (r != boundary_root) CHECK(f.parity[static_cast<std::size_t>(r)] == hot_count[static_cast<std::size_t>(r)] % 2);
      CHECK_FALSE(f.is_odd_root(r));
    }

    std::size_t grown = 0;
    for (std::uint8_t x : f.growth) grown += x;
    CHECK(grown <= 2 * g.edges.size());
    CHECK(f.work >= grown);

    const auto trees = spanning_forest(g, f);
    std::set<int> tree_edges;
    for (const auto& tree : trees)
      for (const TreeEdge& te : tree) {
        CHECK(f.growth[static_cast<std::size_t>(te.edge)] == 2);
        CHECK(f.find(te.child) == f.find(te.parent));
        tree_edges.insert(te.edge);
      }
    CHECK(tree_edges.size() == [&] {
      std::size_t total = 0;
      for (const auto& tree : trees) total += tree.size();
      return total;
    }());
    const std::vector<int> correction = peel(g, trees, h.hot);
    for (int e : correction) CHECK(tree_edges.count(e) == 1);
    CHECK(syndrome_of(g, correction) == h.hot);
  }
}

TEST_CASE("the decoder work tail grows with the error rate") {
  const std::vector<double> ps{0.002, 0.005, 0.01, 0.02};
  const std::uint64_t shots = 4000;
  std::vector<std::vector<std::uint64_t>> work;
  for (double p : ps) work.push_back(timeout_stats(5, p, std::nullopt, shots, 77).work);
  auto tail = [&](const std::vector<std::uint64_t>& w, std::uint64_t t) {
    return static_cast<double>(std::count_if(w.begin(), w.end(), [&](std::uint64_t x) { return x > t; })) /
           static_cast<double>(w.size());
  };
  for (std::size_t i = 1; i < ps.size(); ++i) {
    std::vector<std::uint64_t> sorted = work[i - 1];
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.5, 0.9, 0.99}) {
      const std::uint64_t t = sorted[static_cast<std::size_t>(q * (shots - 1))];
      const double lo = tail(work[i - 1], t), hi = tail(work[i], t);
      const double se = std::sqrt((lo * (1 - lo) + hi * (1 - hi)) / shots);
      CHECK(hi >= lo - 3.0 * se);
    }
  }
}
