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

#include "qstack/qec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qstack/error.hpp"
#include "qstack/parallel.hpp"

namespace qstack {

SurfaceCodeLayout::SurfaceCodeLayout(int distance) : d(distance) {
  require(d >= 3 && d % 2 == 1, "distance must be odd and >= 3");
}

SiteType SurfaceCodeLayout::site(int row, int col) const {
  require(row >= 0 && row < width() && col >= 0 && col < width(), "site out of range");
  if ((row + col) % 2 == 0) return SiteType::Data;
  return row % 2 == 0 ? SiteType::XAncilla : SiteType::ZAncilla;
}

int DecodingGraph::vertex(int row_index, int col_index, int round) const {
  return round * per_round + row_index * (d - 1) + col_index;
}

DecodingGraph build_graph(int d, int rounds) {
  const SurfaceCodeLayout layout(d);
  require(rounds >= 1, "rounds must be >= 1");
  DecodingGraph g;
  g.d = d;
  g.rounds = rounds;
  g.per_round = layout.x_ancilla_count();
  g.boundary = rounds * g.per_round;
  g.adjacency.resize(static_cast<std::size_t>(g.vertex_count()));

  const int w = layout.width();
  // X ancilla at (2i, 2j+1) maps to (i, j).
  auto ancilla = [&](int row, int col, int t) { return g.vertex(row / 2, (col - 1) / 2, t); };
  for (int r = 0; r < w; ++r)
    for (int c = 0; c < w; ++c) {
      if (layout.site(r, c) != SiteType::Data) continue;
      g.data_sites.push_back({r, c});
    }
  auto add_edge = [&](const GraphEdge& e) {
    const int id = static_cast<int>(g.edges.size());
    g.edges.push_back(e);
    g.adjacency[static_cast<std::size_t>(e.u)].push_back(id);
    if (e.v != e.u) g.adjacency[static_cast<std::size_t>(e.v)].push_back(id);
    return id;
  };
  for (int t = 0; t < rounds; ++t) {
    for (int q = 0; q < g.data_count(); ++q) {
      const auto [r, c] = g.data_sites[static_cast<std::size_t>(q)];
      int u, v;
      if (r % 2 == 0) {
        // Between the X ancillas to its left and right.
        u = c > 0 ? ancilla(r, c - 1, t) : g.boundary;
        v = c < w - 1 ? ancilla(r, c + 1, t) : g.boundary;
      } else {
        u = ancilla(r - 1, c, t);
        v = ancilla(r + 1, c, t);
      }
      if (u == g.boundary) std::swap(u, v);
      const int id = add_edge({u, v, t, q});
      if (t == 0) g.data_edges.push_back(id);
    }
  }
  for (int t = 0; t + 1 < rounds; ++t)
    for (int a = 0; a < g.per_round; ++a) add_edge({t * g.per_round + a, (t + 1) * g.per_round + a, t, -1});
  return g;
}

std::vector<int> syndrome_of(const DecodingGraph& graph, const std::vector<int>& edges) {
  std::vector<std::uint8_t> parity(static_cast<std::size_t>(graph.vertex_count()), 0);
  for (int e : edges) {
    const GraphEdge& ge = graph.edges[static_cast<std::size_t>(e)];
    parity[static_cast<std::size_t>(ge.u)] ^= 1;
    parity[static_cast<std::size_t>(ge.v)] ^= 1;
  }
  std::vector<int> hot;
  for (int v = 0; v < graph.boundary; ++v)
    if (parity[static_cast<std::size_t>(v)]) hot.push_back(v);
  return hot;
}

SyndromeHistory sample_errors(const DecodingGraph& graph, double p_data, double p_meas, Rng& rng) {
  require(p_data >= 0.0 && p_data <= 1.0, "p_data must be in [0, 1]");
  require(p_meas >= 0.0 && p_meas <= 1.0, "p_meas must be in [0, 1]");
  SyndromeHistory out;
  const int n_data = graph.data_count();
  for (int t = 0; t < graph.rounds; ++t) {
    for (int q = 0; q < n_data; ++q)
      if (rng.bernoulli(p_data)) out.error_edges.push_back(t * n_data + q);
  }
  // Vertical edges follow the horizontal ones, ordered by lower round.
  const int vertical_base = graph.rounds * n_data;
  for (int t = 0; t + 1 < graph.rounds; ++t)
    for (int a = 0; a < graph.per_round; ++a)
      if (rng.bernoulli(p_meas)) out.error_edges.push_back(vertical_base + t * graph.per_round + a);
  std::sort(out.error_edges.begin(), out.error_edges.end());
  out.hot = syndrome_of(graph, out.error_edges);
  return out;
}

SyndromeHistory sample_errors(const DecodingGraph& graph, double p_data, double p_meas, std::uint64_t seed) {
  Rng rng(seed);
  return sample_errors(graph, p_data, p_meas, rng);
}

int ClusterForest::find(int v) {
  ++work;
  auto idx = [](int x) { return static_cast<std::size_t>(x); };
  while (parent[idx(v)] != v) {
    parent[idx(v)] = parent[idx(parent[idx(v)])];
    v = parent[idx(v)];
  }
  return v;
}

namespace {

// Union by size; returns the surviving root.
int unite(ClusterForest& f, std::vector<std::vector<int>>& members, int a, int b) {
  ++f.work;
  auto idx = [](int x) { return static_cast<std::size_t>(x); };
  if (a == b) return a;
  if (f.size[idx(a)] < f.size[idx(b)] || (f.size[idx(a)] == f.size[idx(b)] && b < a)) std::swap(a, b);
  f.parent[idx(b)] = a;
  f.size[idx(a)] += f.size[idx(b)];
  f.parity[idx(a)] ^= f.parity[idx(b)];
  f.touches_boundary[idx(a)] |= f.touches_boundary[idx(b)];
  auto& into = members[idx(a)];
  auto& from = members[idx(b)];
  into.insert(into.end(), from.begin(), from.end());
  from.clear();
  from.shrink_to_fit();
  return a;
}

}  // namespace

ClusterForest grow_clusters(const DecodingGraph& graph, const std::vector<int>& hot) {
  const std::size_t n = static_cast<std::size_t>(graph.vertex_count());
  ClusterForest f;
  f.parent.resize(n);
  f.size.assign(n, 1);
  f.parity.assign(n, 0);
  f.touches_boundary.assign(n, 0);
  f.growth.assign(graph.edges.size(), 0);
  std::vector<std::vector<int>> members(n);
  for (std::size_t v = 0; v < n; ++v) {
    f.parent[v] = static_cast<int>(v);
    members[v] = {static_cast<int>(v)};
  }
  f.touches_boundary[static_cast<std::size_t>(graph.boundary)] = 1;
  for (int v : hot) {
    require(v >= 0 && v < graph.boundary, "hot vertex out of range");
    f.parity[static_cast<std::size_t>(v)] ^= 1;
  }

  std::vector<int> odd_roots;
  for (int v : hot)
    if (f.is_odd_root(v)) odd_roots.push_back(v);
  std::sort(odd_roots.begin(), odd_roots.end());
  odd_roots.erase(std::unique(odd_roots.begin(), odd_roots.end()), odd_roots.end());

  std::vector<int> fused;
  while (!odd_roots.empty()) {
    fused.clear();
    for (int root : odd_roots) {
      for (int v : members[static_cast<std::size_t>(root)]) {
        for (int e : graph.adjacency[static_cast<std::size_t>(v)]) {
          std::uint8_t& g = f.growth[static_cast<std::size_t>(e)];
          if (g >= 2) continue;
          ++g;
          ++f.work;
          if (g == 2) fused.push_back(e);
        }
      }
    }
    std::sort(fused.begin(), fused.end());
    fused.erase(std::unique(fused.begin(), fused.end()), fused.end());
    for (int e : fused) {
      const GraphEdge& ge = graph.edges[static_cast<std::size_t>(e)];
      unite(f, members, f.find(ge.u), f.find(ge.v));
    }
    std::vector<int> next;
    for (int root : odd_roots) {
      const int r = f.find(root);
      if (f.is_odd_root(r)) next.push_back(r);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    odd_roots.swap(next);
  }
  return f;
}

std::vector<std::vector<TreeEdge>> spanning_forest(const DecodingGraph& graph, ClusterForest& forest) {
  const std::size_t n = static_cast<std::size_t>(graph.vertex_count());
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<TreeEdge>> trees;
  std::vector<std::uint8_t> has_grown_edge(n, 0);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (forest.growth[e] < 2) continue;
    has_grown_edge[static_cast<std::size_t>(graph.edges[e].u)] = 1;
    has_grown_edge[static_cast<std::size_t>(graph.edges[e].v)] = 1;
  }
  // The boundary goes first so a cluster touching it is rooted there.
  std::vector<int> starts{graph.boundary};
  for (int v = 0; v < graph.boundary; ++v) starts.push_back(v);
  std::vector<std::pair<int, std::size_t>> stack;
  for (int start : starts) {
    if (seen[static_cast<std::size_t>(start)] || !has_grown_edge[static_cast<std::size_t>(start)]) continue;
    std::vector<TreeEdge> tree;
    seen[static_cast<std::size_t>(start)] = 1;
    stack.assign(1, {start, 0});
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& adj = graph.adjacency[static_cast<std::size_t>(v)];
      if (next == adj.size()) {
        stack.pop_back();
        continue;
      }
      const int e = adj[next++];
      if (forest.growth[static_cast<std::size_t>(e)] < 2) continue;
      const GraphEdge& ge = graph.edges[static_cast<std::size_t>(e)];
      const int other = ge.u == v ? ge.v : ge.u;
      if (seen[static_cast<std::size_t>(other)]) continue;
      seen[static_cast<std::size_t>(other)] = 1;
      tree.push_back({e, other, v});
      stack.push_back({other, 0});
    }
    trees.push_back(std::move(tree));
  }
  return trees;
}

std::vector<int> peel(const DecodingGraph& graph, const std::vector<std::vector<TreeEdge>>& trees,
                      const std::vector<int>& hot, std::uint64_t* work) {
  std::vector<std::uint8_t> defect(static_cast<std::size_t>(graph.vertex_count()), 0);
  for (int v : hot) defect[static_cast<std::size_t>(v)] ^= 1;
  std::vector<int> correction;
  for (const auto& tree : trees) {
    for (auto it = tree.rbegin(); it != tree.rend(); ++it) {
      if (work) ++*work;
      if (!defect[static_cast<std::size_t>(it->child)]) continue;
      correction.push_back(it->edge);
      defect[static_cast<std::size_t>(it->child)] = 0;
      defect[static_cast<std::size_t>(it->parent)] ^= 1;
    }
  }
  std::sort(correction.begin(), correction.end());
  return correction;
}

DecodeResult decode(const DecodingGraph& graph, const std::vector<int>& hot) {
  DecodeResult out;
  if (hot.empty()) return out;
  ClusterForest forest = grow_clusters(graph, hot);
  const auto trees = spanning_forest(graph, forest);
  out.work = forest.work;
  out.correction = peel(graph, trees, hot, &out.work);
  return out;
}

ErrorLog::ErrorLog(const DecodingGraph& graph)
    : graph_(&graph), flips_(static_cast<std::size_t>(graph.data_count()), 0) {}

void ErrorLog::apply(const std::vector<int>& edges) {
  for (int e : edges) {
    const GraphEdge& ge = graph_->edges[static_cast<std::size_t>(e)];
    if (!ge.vertical()) flips_[static_cast<std::size_t>(ge.data_qubit)] ^= 1;
  }
}

bool ErrorLog::empty() const {
  return std::none_of(flips_.begin(), flips_.end(), [](std::uint8_t f) { return f != 0; });
}

bool ErrorLog::logical_flip() const {
  std::uint8_t parity = 0;
  for (int q = 0; q < graph_->data_count(); ++q)
    if (graph_->on_left_cut(q)) parity ^= flips_[static_cast<std::size_t>(q)];
  return parity != 0;
}

namespace {

struct ShotOutcome {
  bool failed = false;
  std::uint64_t work = 0;
};

std::vector<ShotOutcome> run_shots(int d, double p, std::uint64_t shots, std::uint64_t seed, unsigned threads) {
  require(p >= 0.0 && p <= 1.0, "p must be in [0, 1]");
  require(shots >= 1, "shots must be >= 1");
  const DecodingGraph graph = build_graph(d, d);
  std::vector<ShotOutcome> out(shots);
  parallel_for(shots, threads, [&](std::size_t s) {
    Rng rng = Rng::stream(seed, {s});
    const SyndromeHistory h = sample_errors(graph, p, p, rng);
    const DecodeResult r = decode(graph, h.hot);
    ErrorLog log(graph);
    log.apply(h.error_edges);
    log.apply(r.correction);
    out[s] = {log.logical_flip(), r.work};
  });
  return out;
}

RateEstimate summarise(const std::vector<ShotOutcome>& shots) {
  RateEstimate r;
  r.shots = shots.size();
  for (const auto& s : shots) r.failures += s.failed;
  const double n = static_cast<double>(r.shots);
  r.rate = static_cast<double>(r.failures) / n;
  r.stderr_rate = std::sqrt(r.rate * (1.0 - r.rate) / n);
  return r;
}

}  // namespace

RateEstimate logical_failure_rate(int d, double p, std::uint64_t shots, std::uint64_t seed, unsigned threads) {
  return summarise(run_shots(d, p, shots, seed, threads));
}

TimeoutStats timeout_stats(int d, double p, std::optional<std::uint64_t> work_budget, std::uint64_t shots,
                           std::uint64_t seed, unsigned threads) {
  const auto outcomes = run_shots(d, p, shots, seed, threads);
  TimeoutStats t;
  t.work_budget = work_budget;
  t.logical = summarise(outcomes);
  std::uint64_t timeouts = 0;
  for (const auto& s : outcomes) {
    t.work.push_back(s.work);
    if (work_budget && s.work > *work_budget) ++timeouts;
  }
  t.p_timeout = static_cast<double>(timeouts) / static_cast<double>(outcomes.size());
  t.inequality_holds = t.p_timeout / 2.0 <= t.logical.rate;
  return t;
}

double simple_quantum_volume(double n_logical, double p_logical) {
  require(std::isfinite(n_logical) && n_logical >= 0.0, "n_logical must be >= 0");
  require(p_logical > 0.0 && p_logical <= 1.0, "p_logical must be in (0, 1]");
  return n_logical * std::floor(1.0 / p_logical);
}

Table logical_rate_table(const std::vector<int>& distances, const std::vector<double>& rates,
                         std::uint64_t shots, std::uint64_t seed, unsigned threads) {
  Table t({"d", "p", "shots", "p_log", "p_log_stderr"});
  for (int d : distances)
    for (double p : rates) {
      const RateEstimate r = logical_failure_rate(d, p, shots, seed, threads);
      t.add_row({double(d), p, double(r.shots), r.rate, r.stderr_rate});
    }
  return t;
}

}  // namespace qstack
