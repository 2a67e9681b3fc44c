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
#include <map>
#include <utility>
#include <vector>

#include "qstack/clifford.hpp"
#include "qstack/error.hpp"
#include "qstack/rb.hpp"
#include "qstack/sampling_stats.hpp"
#include "rb_oracle.hpp"

using namespace qstack;

TEST_CASE("noiseless sequences return to the initial state") {
  for (int n : {1, 2})
    for (int m : {1, 7, 30}) {
      const Circuit c = generate_sequence(n, m, std::uint64_t(100 * n + m));
      StateVector psi(n);
      psi.apply(c);
      CHECK(psi.probability(0) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("separable fit recovers exact synthetic decays") {
  const std::vector<int> depths{1, 2, 5, 10, 20, 50, 100};
  for (auto [a, b, p] : {std::tuple{0.5, 0.5, 0.98}, {0.25, 0.7, 0.9}, {0.5, 0.45, 0.995}, {0.1, 0.8, 0.5}}) {
    std::vector<double> y;
    for (int m : depths) y.push_back(a + b * std::pow(p, m));
    const RbFitReport r = fit_decay(depths, y);
    CHECK(std::abs(r.separable.p - p) < 1e-6);
    CHECK(std::abs(r.separable.A - a) < 1e-5);
    CHECK(std::abs(r.separable.B - b) < 1e-5);
    CHECK(r.separable.identifiable);
  }
  // A = 0 makes the log-linear alternative exact as well.
  std::vector<double> y;
  for (int m : depths) y.push_back(0.9 * std::pow(0.97, m));
  CHECK(std::abs(fit_decay(depths, y).log_linear.p - 0.97) < 1e-9);
}

TEST_CASE("flat survival data is reported as unidentifiable") {
  const RbFitReport r = fit_decay({1, 2, 5, 10}, {0.7, 0.7, 0.7, 0.7});
  CHECK(r.separable.p == 1.0);
  CHECK_FALSE(r.separable.identifiable);
  const Table t = fit_table(r);
  CHECK(std::get<std::string>(t.rows[0][t.column_index("method")]).find("p_unidentifiable") != std::string::npos);
}

TEST_CASE("fit and config validation") {
  CHECK_THROWS_AS(fit_decay({1, 1, 2}, {0.9, 0.9, 0.8}), ValidationError);
  CHECK_THROWS_AS(fit_decay({1, 2, 3}, {0.9, 0.8}), ValidationError);
  RbConfig c;
  c.sequences_per_depth = 0;
  CHECK_THROWS_AS(estimate_survival(c), ValidationError);
  c = RbConfig{};
  c.depths = {};
  CHECK_THROWS_AS(estimate_survival(c), ValidationError);
}

TEST_CASE("survival estimates are deterministic and independent of thread count") {
  RbConfig c;
  c.depths = {1, 5, 20};
  c.sequences_per_depth = 20;
  c.reuse_factor = 5;
  c.noise.depolarizing_prob = 0.02;
  c.seed = 9;
  c.threads = 1;
  const auto a = estimate_survival(c);
  c.threads = 4;
  const auto b = estimate_survival(c);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean == b[i].mean);
    CHECK(a[i].stderr_mean == b[i].stderr_mean);
  }
  CHECK(survival_table(a).columns ==
        std::vector<std::string>{"m", "n_circuits", "shots_per_circuit", "survival_mean", "survival_stderr"});
}

TEST_CASE("noisy single-qubit decay matches the twirled channel oracle") {
  const double q = 0.01;
  RbConfig c;
  c.depths = {1, 2, 5, 10, 20, 50, 100};
  c.sequences_per_depth = 100;
  c.reuse_factor = 50;
  c.noise.depolarizing_prob = q;
  c.seed = 3;
  const RbFitReport r = fit_decay(estimate_survival(c));
  const double oracle = test::rb_decay_oracle(q);
  CHECK(std::abs(r.separable.p - oracle) < 0.01);
  CHECK(r.separable.p_stderr < 0.01);
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

}  // namespace

TEST_CASE("fresh circuits give no more variance than reused ones at equal shots") {
  // Two-qubit sequences compile to varying CNOT counts, so the per-circuit
  // survival probability has a visible spread.
  RbConfig c;
  c.n_qubits = 2;
  c.depths = {4};
  c.noise.depolarizing_prob = 0.03;
  const int reps = 300;
  std::vector<double> fresh, reused;
  for (int r = 0; r < reps; ++r) {
    c.seed = 7000 + static_cast<std::uint64_t>(r);
    c.sequences_per_depth = 200;
    c.reuse_factor = 1;
    fresh.push_back(estimate_survival(c)[0].mean);
    c.sequences_per_depth = 20;
    c.reuse_factor = 10;
    reused.push_back(estimate_survival(c)[0].mean);
  }
  const double v1 = sample_variance(fresh), v10 = sample_variance(reused);
  // Sample variances of near-normal means: relative SE sqrt(2 / (reps - 1)).
  const double rel = std::sqrt(2.0 / (reps - 1));
  CHECK(v1 <= v10 + 3.0 * rel * std::hypot(v1, v10));

  // Both agree with the two-level formulas fed by a high-reuse estimate of
  // the circuit mean and spread.
  c.seed = 1;
  c.sequences_per_depth = 2000;
  c.reuse_factor = 200;
  const SurvivalPoint wide = estimate_survival(c)[0];
  const double between = wide.stderr_mean * wide.stderr_mean * c.sequences_per_depth;
  TwoLevelModel m;
  m.mu = wide.mean;
  m.sigma2 = std::max(0.0, between - (m.mu - m.mu * m.mu - between) / (c.reuse_factor - 1));
  m.k = 20;
  m.l = 10;
  CHECK(std::abs(v10 - var_scheme1(m)) < 3.0 * rel * var_scheme1(m));
  CHECK(std::abs(v1 - var_scheme2(m)) < 3.0 * rel * var_scheme2(m));
  CHECK(var_scheme1(m) > var_scheme2(m));
}

TEST_CASE("fit error halves at four times the shots") {
  const double q = 0.02;
  const double truth = test::rb_decay_oracle(q);
  auto squared_errors = [&](int sequences) {
    std::vector<double> out;
    for (int r = 0; r < 60; ++r) {
      RbConfig c;
      c.depths = {1, 2, 5, 10, 20, 50};
      c.sequences_per_depth = sequences;
      c.reuse_factor = 1;
      c.noise.depolarizing_prob = q;
      c.seed = 300 + static_cast<std::uint64_t>(r);
      const double e = fit_decay(estimate_survival(c)).separable.p - truth;
      out.push_back(e * e);
    }
    return out;
  };
  auto mean_and_se = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    return std::pair{m, std::sqrt(sample_variance(v) / static_cast<double>(v.size()))};
  };
  const auto [m1, se1] = mean_and_se(squared_errors(100));
  const auto [m4, se4] = mean_and_se(squared_errors(400));
  const double ratio = std::sqrt(m4 / m1);
  // Delta method: relative SE of a root-mean-square is half that of the mean square.
  const double se_ratio = 0.5 * ratio * std::hypot(se1 / m1, se4 / m4);
  CHECK(std::abs(ratio - 0.5) < 3.0 * se_ratio);
}

TEST_CASE("readout errors move the amplitudes but not the decay") {
  RbConfig c;
  c.depths = {1, 2, 5, 10, 20, 50, 100};
  c.sequences_per_depth = 100;
  c.reuse_factor = 50;
  c.noise.depolarizing_prob = 0.01;
  c.seed = 42;
  const RbFit clean = fit_decay(estimate_survival(c)).separable;
  c.noise.measurement_flip_prob = 0.05;
  const RbFit spam = fit_decay(estimate_survival(c)).separable;
  CHECK(std::abs(spam.p - clean.p) < spam.p_stderr);
  CHECK(spam.A + spam.B < clean.A + clean.B);
}
