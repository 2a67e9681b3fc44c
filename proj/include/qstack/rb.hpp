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

#include <cstdint>
#include <string>
#include <vector>

#include "qstack/sim.hpp"
#include "qstack/table.hpp"

namespace qstack {

struct RbConfig {
  int n_qubits = 1;
  std::vector<int> depths{1, 2, 5, 10, 20, 50, 100};
  int sequences_per_depth = 50;
  int reuse_factor = 1;  // shots per generated circuit
  NoiseModel noise;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  void validate() const;
};

struct SurvivalPoint {
  int m = 0;
  int n_circuits = 0;
  int shots_per_circuit = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

struct RbFit {
  double A = 0.0;
  double B = 0.0;
  double p = 1.0;
  double residual = 0.0;
  double p_stderr = 0.0;
  bool identifiable = true;
  std::string method;
};

struct RbFitReport {
  RbFit separable;
  RbFit log_linear;
};

/// Random Cliffords C_1..C_m followed by the inverse of their product.
Circuit generate_sequence(int n_qubits, int m, std::uint64_t seed);
Circuit generate_sequence(int n_qubits, int m, Rng& rng);

std::vector<SurvivalPoint> estimate_survival(const RbConfig& config);

/// Fits A + B p^m by separable least squares, plus log-linear as an
/// alternative. Needs at least three distinct depths.
RbFitReport fit_decay(const std::vector<int>& depths, const std::vector<double>& survival);
RbFitReport fit_decay(const std::vector<SurvivalPoint>& points);

Table survival_table(const std::vector<SurvivalPoint>& points);
Table fit_table(const RbFitReport& report);

}  // namespace qstack
