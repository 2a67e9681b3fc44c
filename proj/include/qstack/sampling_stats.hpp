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
#include <optional>
#include <vector>

#include "qstack/table.hpp"

namespace qstack {

/// Shots X ~ Bernoulli(P) where the circuit-level success probability P has
/// mean `mu` and variance `sigma2`; k circuits each reused l times.
struct TwoLevelModel {
  double mu = 0.5;
  double sigma2 = 0.0;
  std::uint64_t k = 1;
  std::uint64_t l = 1;

  void validate() const;
  std::uint64_t total_shots() const { return k * l; }
};

/// Variance of the mean when k circuits are each run l times.
double var_scheme1(const TwoLevelModel& model);
/// Variance of the mean when every one of the n = k l shots uses a fresh circuit.
double var_scheme2(const TwoLevelModel& model);

struct SampleRequirement {
  bool feasible = true;
  std::uint64_t circuits = 0;
  std::uint64_t shots = 0;
};

/// Smallest n = l k whose scheme-1 standard deviation is at most `target`.
/// With `max_circuits`, reports infeasible if no k within the cap suffices.
SampleRequirement samples_required(double mu, double sigma2, std::uint64_t l, double target,
                                   std::optional<std::uint64_t> max_circuits = std::nullopt);

struct VarianceEstimate {
  double variance = 0.0;
  double bootstrap_stderr = 0.0;
};

struct MonteCarloVariance {
  VarianceEstimate scheme1;
  VarianceEstimate scheme2;
};

/// Replicates both estimators with Beta-distributed P matched to (mu, sigma2).
MonteCarloVariance monte_carlo_variance(const TwoLevelModel& model, std::uint64_t replications,
                                        std::uint64_t seed, unsigned threads = 0,
                                        int bootstrap_resamples = 50);

/// Beta shape parameters with the given mean and variance.
std::pair<double, double> beta_shape(double mu, double sigma2);

/// Required-sample curve over sigma2 and reuse counts l.
Table samples_required_table(double mu, double target, const std::vector<double>& sigma2s,
                             const std::vector<std::uint64_t>& reuse);

}  // namespace qstack
