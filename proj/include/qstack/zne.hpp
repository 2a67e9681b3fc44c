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

enum class ScalingMethod { UnitaryFolding, ParameterScaling };

struct NoiseScaledEnsemble {
  Circuit base;
  ScalingMethod method = ScalingMethod::UnitaryFolding;
  std::vector<double> levels{1.0, 1.5, 2.0, 3.0, 5.0};
  int shots_per_level = 10000;
  double reference_variance = 0.01;  // sigma_0^2 for parameter scaling
  NoiseModel noise;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  void validate() const;
};

struct LevelEstimate {
  double lambda = 1.0;  // measured gate ratio (folding) or 1 + s^2/s0^2
  double nominal = 1.0;
  int shots = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

enum class ExtrapolationKind { Richardson, Linear, Polynomial, Exponential };

struct ExtrapolationMethod {
  ExtrapolationKind kind = ExtrapolationKind::Richardson;
  int degree = 2;  // Polynomial only
};

ExtrapolationMethod parse_extrapolation(const std::string& text);

struct ExtrapolationResult {
  ExtrapolationMethod method;
  std::string method_name;
  double e_zero = 0.0;
  std::vector<double> coefficients;  // model parameters
  double residual = 0.0;
  bool fell_back = false;  // exponential had no interior optimum; linear used
};

/// Inserts `blocks_per_layer` identity blocks (random Clifford then its
/// inverse, on the gate's qubits) after every gate.
Circuit fold_circuit(const Circuit& circuit, int blocks_per_layer, std::uint64_t seed);
Circuit fold_circuit(const Circuit& circuit, int blocks_per_layer, Rng& rng);

/// Adds identity blocks spread evenly over the gates until the gate count is
/// `level` times the base count in expectation (the last block is random).
Circuit fold_to_level(const Circuit& circuit, double level, Rng& rng);

/// Adds N(0, variance) to every rotation angle.
Circuit perturb_parameters(const Circuit& circuit, double variance, std::uint64_t seed);
Circuit perturb_parameters(const Circuit& circuit, double variance, Rng& rng);

/// Estimates the expectation of `observable` at each level, drawing a fresh
/// circuit realisation for every shot.
std::vector<LevelEstimate> collect(const NoiseScaledEnsemble& ensemble,
                                   const std::vector<Pauli>& observable);

ExtrapolationResult extrapolate(const std::vector<double>& lambdas,
                                const std::vector<double>& values, ExtrapolationMethod method);
ExtrapolationResult extrapolate(const std::vector<LevelEstimate>& levels,
                                ExtrapolationMethod method);

Table level_table(const std::vector<LevelEstimate>& levels);
Table extrapolation_table(const std::vector<ExtrapolationResult>& results);

}  // namespace qstack
