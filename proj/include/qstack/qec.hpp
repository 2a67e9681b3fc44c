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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qstack/rng.hpp"
#include "qstack/table.hpp"

namespace qstack {

enum class SiteType { Data, XAncilla, ZAncilla };

/// Distance-d surface code on a (2d-1) x (2d-1) grid. Data qubits sit where
/// row + col is even, X ancillas on even rows, Z ancillas on odd rows.
struct SurfaceCodeLayout {
  int d = 3;

  explicit SurfaceCodeLayout(int distance);
  int width() const { return 2 * d - 1; }
  SiteType site(int row, int col) const;
  int data_count() const { return d * d + (d - 1) * (d - 1); }
  int x_ancilla_count() const { return d * (d - 1); }
  int z_ancilla_count() const { return d * (d - 1); }
};

struct GraphEdge {
  int u = 0;
  int v = 0;           // may be the boundary vertex
  int round = 0;       // lower round for vertical edges
  int data_qubit = -1; // -1 for measurement-error (vertical) edges
  bool vertical() const { return data_qubit < 0; }
};

/// Decoding graph for the X ancillas: one layer per round plus a single
/// virtual boundary vertex.
struct DecodingGraph {
  int d = 3;
  int rounds = 1;
  int per_round = 0;  // ancilla vertices in one layer
  int boundary = 0;   // index of the virtual boundary vertex
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> adjacency;  // vertex -> incident edges
  std::vector<std::array<int, 2>> data_sites;  // data qubit -> (row, col)
  std::vector<int> data_edges;  // data qubit -> its edge in round 0

  int vertex_count() const { return boundary + 1; }
  int vertex(int row_index, int col_index, int round) const;
  /// Data qubits whose flip crosses the left boundary.
  bool on_left_cut(int data_qubit) const { return data_sites[static_cast<std::size_t>(data_qubit)][1] == 0; }
  int data_count() const { return static_cast<int>(data_sites.size()); }
};

DecodingGraph build_graph(int d, int rounds);

struct SyndromeHistory {
  std::vector<int> hot;          // sorted vertex ids, boundary excluded
  std::vector<int> error_edges;  // true error, for scoring
};

/// Phenomenological noise: every data qubit flips with p_data each round and
/// every syndrome bit is misread with p_meas, except in the last round.
SyndromeHistory sample_errors(const DecodingGraph& graph, double p_data, double p_meas, Rng& rng);
SyndromeHistory sample_errors(const DecodingGraph& graph, double p_data, double p_meas, std::uint64_t seed);

/// Vertices with odd incidence in `edges` (boundary excluded), sorted.
std::vector<int> syndrome_of(const DecodingGraph& graph, const std::vector<int>& edges);

struct ClusterForest {
  std::vector<int> parent;
  std::vector<int> size;
  std::vector<std::uint8_t> parity;
  std::vector<std::uint8_t> touches_boundary;
  std::vector<std::uint8_t> growth;  // per edge, in half steps: 0, 1 or 2
  std::uint64_t work = 0;

  int find(int v);
  bool is_odd_root(int root) const { return parity[static_cast<std::size_t>(root)] && !touches_boundary[static_cast<std::size_t>(root)]; }
};

ClusterForest grow_clusters(const DecodingGraph& graph, const std::vector<int>& hot);

struct TreeEdge {
  int edge = 0;
  int child = 0;
  int parent = 0;
};

/// One DFS tree per cluster over fully grown edges, in discovery order;
/// popping from the back visits every child before its parent edge.
std::vector<std::vector<TreeEdge>> spanning_forest(const DecodingGraph& graph, ClusterForest& forest);

std::vector<int> peel(const DecodingGraph& graph, const std::vector<std::vector<TreeEdge>>& trees,
                      const std::vector<int>& hot, std::uint64_t* work = nullptr);

struct DecodeResult {
  std::vector<int> correction;  // sorted edge ids
  std::uint64_t work = 0;       // half-edge growths + find/union calls + peeled edges
};

DecodeResult decode(const DecodingGraph& graph, const std::vector<int>& hot);

/// Accumulated data-qubit flips; applying the same edges twice cancels.
class ErrorLog {
 public:
  explicit ErrorLog(const DecodingGraph& graph);
  void apply(const std::vector<int>& edges);
  bool empty() const;
  /// Odd parity across the left cut means the residual chain spans the lattice.
  bool logical_flip() const;
  const std::vector<std::uint8_t>& flips() const { return flips_; }

 private:
  const DecodingGraph* graph_;
  std::vector<std::uint8_t> flips_;
};

struct RateEstimate {
  std::uint64_t shots = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  double stderr_rate = 0.0;
};

/// p_data = p_meas = p over d rounds.
RateEstimate logical_failure_rate(int d, double p, std::uint64_t shots, std::uint64_t seed,
                                  unsigned threads = 0);

struct TimeoutStats {
  std::optional<std::uint64_t> work_budget;  // empty means unlimited
  double p_timeout = 0.0;
  RateEstimate logical;
  bool inequality_holds = true;  // p_timeout / 2 <= p_log
  std::vector<std::uint64_t> work;  // per shot
};

TimeoutStats timeout_stats(int d, double p, std::optional<std::uint64_t> work_budget, std::uint64_t shots,
                           std::uint64_t seed, unsigned threads = 0);

/// n_logical * floor(1 / p_logical).
double simple_quantum_volume(double n_logical, double p_logical);

Table logical_rate_table(const std::vector<int>& distances, const std::vector<double>& rates,
                         std::uint64_t shots, std::uint64_t seed, unsigned threads = 0);

}  // namespace qstack
