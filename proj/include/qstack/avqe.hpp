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
#include <map>
#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "qstack/rng.hpp"
#include "qstack/sim.hpp"
#include "qstack/table.hpp"

namespace qstack {

inline constexpr double kPi = 3.14159265358979323846;

/// Maps an angle into [-pi, pi].
double wrap_angle(double x);

struct GaussianPrior {
  double mu = 0.0;
  double sigma = kPi / 2.0;
};

struct AqpeConfig {
  double alpha = 0.0;
  double precision = 0.01;
  int batch_size = 1000;
  int max_iterations = 1000000;
  int min_accept = 10;
  int max_retries = 3;
  double inflation = 1.5;
  // Candidate/uniform pairs from a shifted lattice instead of independent draws.
  bool lattice_draws = true;
  // Accept with probability P(E|phi) / max over the batch rather than
  // P(E|phi); the posterior is unchanged but unlikely outcomes do not starve.
  bool scale_to_batch_max = true;
  // Posterior moments measured against the moments of the candidate batch
  // (exact prior when everything is accepted); off = plain sample moments.
  bool relative_moments = true;
  // Weight every candidate by its likelihood instead of counting only the
  // accepted ones; acceptance still decides starvation.
  bool weighted_moments = true;
  GaussianPrior prior;
  std::uint64_t seed = 0;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  int depth = 1;
  double theta = 0.0;
  int outcome = 0;
  int accepted = 0;
  double mu = 0.0;
  double sigma = 0.0;
  bool fallback = false;
};

struct AqpeRun {
  double mu = 0.0;
  double sigma = 0.0;
  int iterations = 0;
  bool converged = false;
  int sign = 1;  // collapse branch the oracle used
  std::map<int, int> depth_counts;  // M -> circuit evaluations at that depth
  std::vector<IterationRecord> history;
};

/// Probability of reading `outcome` from the phase-estimation circuit when
/// the register collapsed onto the eigenphase sign * phi.
double outcome_probability(int outcome, double phi, int depth, double theta, int sign = 1);

/// max(1, floor(sigma^-alpha + 1/2)).
int schedule_depth(double sigma, double alpha);

class MeasurementOracle {
 public:
  virtual ~MeasurementOracle() = default;
  /// Called once per run; fixes the collapse sign.
  virtual int begin_run(Rng& rng) = 0;
  virtual int measure(int depth, double theta, Rng& rng) = 0;
};

/// Samples outcomes from the exact likelihood. sign = 0 draws +/-1 per run.
class AnalyticOracle : public MeasurementOracle {
 public:
  explicit AnalyticOracle(double phi, int sign = 0);
  int begin_run(Rng& rng) override;
  int measure(int depth, double theta, Rng& rng) override;
  double phi() const { return phi_; }

 private:
  double phi_;
  int fixed_sign_;
  int sign_ = 1;
};

/// Derives the eigenphase of R Pi R^dag P R Pi R^dag P^dag from a dense
/// simulation of the preparation circuit, then runs the one-ancilla phase
/// estimation circuit under gate and readout noise.
class CircuitOracle : public MeasurementOracle {
 public:
  CircuitOracle(const Circuit& preparation, const std::vector<Pauli>& pauli, const NoiseModel& noise,
                int sign = 0);
  int begin_run(Rng& rng) override;
  int measure(int depth, double theta, Rng& rng) override;
  double phi() const { return phi_; }

 private:
  double phi_;
  NoiseModel noise_;
  int fixed_sign_;
  int sign_ = 1;
};

/// One rejection-filter update; returns the posterior and what happened.
std::pair<GaussianPrior, IterationRecord> aqpe_iteration(const GaussianPrior& prior,
                                                         const AqpeConfig& config,
                                                         MeasurementOracle& oracle, Rng& rng);

AqpeRun estimate_phase(const AqpeConfig& config, MeasurementOracle& oracle);

/// Measurements needed to reach precision p.
double n_measurements(double p, double alpha);
double alpha_max(double p, double d);
double n_min(double p, double d);

/// Gates for one circuit at depth M after a prep_gates-gate preparation.
double circuit_gates(int depth, int prep_gates);

struct GateTotals {
  double vqe = 0.0;
  double avqe = 0.0;
};

GateTotals gate_costs(double p, int prep_gates, const std::map<int, double>& depth_counts);

/// Per-depth median of evaluation counts over runs (depths absent from a run count as 0).
std::map<int, double> median_depth_counts(const std::vector<AqpeRun>& runs);

/// Independent seeded runs with the analytic oracle; run i uses seed+i and
/// the true phase `phi`.
std::vector<AqpeRun> simulate_runs(const AqpeConfig& config, double phi, int runs, unsigned threads = 0);

struct PauliTerm {
  double coefficient = 0.0;
  std::vector<Pauli> pauli;
};

struct EnergyEstimate {
  double energy = 0.0;
  bool converged = true;
};

/// Terms like "0.5 ZI; -0.25 XX", separated by ';' or newlines.
std::vector<PauliTerm> parse_hamiltonian(std::string_view text);

EnergyEstimate estimate_energy(const std::vector<PauliTerm>& hamiltonian, const Circuit& preparation,
                               const AqpeConfig& config);

Table history_table(const AqpeRun& run);

}  // namespace qstack
