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

#include "qstack/sampling_stats.hpp"

#include <cmath>
#include <random>

#include "qstack/error.hpp"
#include "qstack/parallel.hpp"
#include "qstack/rng.hpp"

namespace qstack {

void TwoLevelModel::validate() const {
  require(std::isfinite(mu) && mu >= 0.0 && mu <= 1.0, "mu must be in [0, 1]");
  require(std::isfinite(sigma2) && sigma2 >= 0.0, "sigma2 must be >= 0");
  require(mu * mu + sigma2 <= mu + 1e-15, "moments must satisfy mu^2 + sigma2 <= mu");
  require(k >= 1, "k must be >= 1");
  require(l >= 1, "l must be >= 1");
}

double var_scheme1(const TwoLevelModel& model) {
  model.validate();
  const double l = static_cast<double>(model.l);
  // Same as [mu - (mu^2 + s2)]/(lk) + s2/k, grouped so that l = 1 or s2 = 0
  // reproduces scheme 2 bit for bit.
  return ((model.mu - model.mu * model.mu) + (l - 1.0) * model.sigma2) / static_cast<double>(model.total_shots());
}

double var_scheme2(const TwoLevelModel& model) {
  model.validate();
  return (model.mu - model.mu * model.mu) / static_cast<double>(model.total_shots());
}

SampleRequirement samples_required(double mu, double sigma2, std::uint64_t l, double target,
                                   std::optional<std::uint64_t> max_circuits) {
  require(std::isfinite(target) && target > 0.0, "target accuracy must be > 0");
  TwoLevelModel model{mu, sigma2, 1, l};
  model.validate();
  const double per_circuit = (mu - mu * mu - sigma2) / static_cast<double>(l) + sigma2;
  const double t2 = target * target;
  auto ok = [&](std::uint64_t k) {
    model.k = k;
    return var_scheme1(model) <= t2;
  };
  auto k = static_cast<std::uint64_t>(std::max(1.0, std::ceil(per_circuit / t2)));
  // Guard the division against rounding in either direction.
  while (k > 1 && ok(k - 1)) --k;
  while (!ok(k)) ++k;
  SampleRequirement out;
  out.circuits = k;
  out.shots = k * l;
  if (max_circuits && k > *max_circuits) out.feasible = false;
  return out;
}

std::pair<double, double> beta_shape(double mu, double sigma2) {
  require(mu > 0.0 && mu < 1.0, "Beta matching needs mu in (0, 1)");
  require(sigma2 > 0.0 && sigma2 < mu * (1.0 - mu), "Beta matching needs 0 < sigma2 < mu(1-mu)");
  const double common = mu * (1.0 - mu) / sigma2 - 1.0;
  return {mu * common, (1.0 - mu) * common};
}

namespace {

double sample_variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

VarianceEstimate with_bootstrap(const std::vector<double>& values, int resamples, std::uint64_t seed) {
  VarianceEstimate out;
  out.variance = sample_variance(values);
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  std::vector<double> draw(values.size());
  for (int b = 0; b < resamples; ++b) {
    Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(b)});
    for (double& x : draw) x = values[rng.uniform_int(values.size())];
    stats[static_cast<std::size_t>(b)] = sample_variance(draw);
  }
  out.bootstrap_stderr = std::sqrt(sample_variance(stats));
  return out;
}

}  // namespace

MonteCarloVariance monte_carlo_variance(const TwoLevelModel& model, std::uint64_t replications,
                                        std::uint64_t seed, unsigned threads, int bootstrap_resamples) {
  model.validate();
  require(replications >= 2, "replications must be >= 2");
  require(bootstrap_resamples >= 2, "bootstrap_resamples must be >= 2");
  const bool random_p = model.sigma2 > 0.0;
  double a = 0.0, b = 0.0;
  if (random_p) std::tie(a, b) = beta_shape(model.mu, model.sigma2);
  auto draw_p = [&](Rng& rng) { return random_p ? rng.beta(a, b) : model.mu; };

  const double n = static_cast<double>(model.total_shots());
  std::vector<double> est1(replications), est2(replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, {0, r});
    std::uint64_t hits1 = 0;
    for (std::uint64_t c = 0; c < model.k; ++c) {
      std::binomial_distribution<std::uint64_t> shots(model.l, draw_p(rng));
      hits1 += shots(rng);
    }
    // A fresh P per shot leaves every shot marginally Bernoulli(mu) and
    // independent, so the scheme-2 total is Binomial(n, mu).
    std::binomial_distribution<std::uint64_t> fresh(model.total_shots(), model.mu);
    const std::uint64_t hits2 = fresh(rng);
    est1[r] = static_cast<double>(hits1) / n;
    est2[r] = static_cast<double>(hits2) / n;
  });
  MonteCarloVariance out;
  out.scheme1 = with_bootstrap(est1, bootstrap_resamples, Rng::splitmix64(seed ^ 1));
  out.scheme2 = with_bootstrap(est2, bootstrap_resamples, Rng::splitmix64(seed ^ 2));
  return out;
}

Table samples_required_table(double mu, double target, const std::vector<double>& sigma2s,
                             const std::vector<std::uint64_t>& reuse) {
  Table t({"sigma2", "l", "samples_required"});
  for (std::uint64_t l : reuse)
    for (double s2 : sigma2s) {
      const SampleRequirement r = samples_required(mu, s2, l, target);
      t.add_row({s2, static_cast<double>(l), static_cast<double>(r.shots)});
    }
  return t;
}

}  // namespace qstack
