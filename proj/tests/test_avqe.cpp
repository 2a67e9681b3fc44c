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

#include "qstack/avqe.hpp"
#include "qstack/error.hpp"

using namespace qstack;

namespace {

class FixedOutcome : public MeasurementOracle {
 public:
  explicit FixedOutcome(int e) : e_(e) {}
  int begin_run(Rng&) override { return 1; }
  int measure(int, double, Rng&) override { return e_; }

 private:
  int e_;
};

// Posterior mean and sd of N(mu, s^2) times P(E | phi) by Simpson's rule on
// the unwrapped line.
std::pair<double, double> quadrature_posterior(double mu, double s, int e, int m, double theta) {
  const int n = 40000;
  const double lo = -12.0, hi = 12.0, h = (hi - lo) / n;
  double w0 = 0, w1 = 0, w2 = 0;
  for (int i = 0; i <= n; ++i) {
    const double z = lo + i * h;
    const double phi = mu + s * z;
    const double like = 0.5 * (1.0 + (e == 0 ? 1.0 : -1.0) * std::cos(m * (theta - phi)));
    const double wt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double f = wt * std::exp(-0.5 * z * z) * like;
    w0 += f;
    w1 += f * phi;
    w2 += f * phi * phi;
  }
  const double mean = w1 / w0;
  return {mean, std::sqrt(w2 / w0 - mean * mean)};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST_CASE("measurement count formula") {
  CHECK(n_measurements(0.1, 0.0) == doctest::Approx(198.0).epsilon(1e-12));
  CHECK(n_measurements(0.125, 0.0) == 126.0);
  CHECK(n_measurements(0.25, 0.0) == 30.0);
  for (double p : {0.1, 0.01, 1e-3, 1e-5}) {
    CHECK(n_measurements(p, 1.0) == doctest::Approx(4.0 * std::log(1.0 / p)).epsilon(1e-14));
    CHECK(std::abs(n_measurements(p, 1.0 - 1e-9) - n_measurements(p, 1.0)) < 1e-6);
    double prev = INFINITY;
    for (int i = 0; i <= 100; ++i) {
      const double v = n_measurements(p, i / 100.0);
      CHECK(v <= prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(n_measurements(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(n_measurements(0.1, 1.5), ValidationError);
}

TEST_CASE("depth-limited minimum") {
  CHECK(n_min(0.1, 1.0) == doctest::Approx(198.0).epsilon(1e-12));
  for (double p : {0.1, 0.01, 1e-3}) {
    CHECK(n_min(p, 2.0 / p) == doctest::Approx(4.0 * std::log(1.0 / p)).epsilon(1e-14));
    // Branches meet at pd = 1.
    CHECK(n_min(p, (1.0 - 1e-9) / p) == doctest::Approx(4.0 * std::log(1.0 / p)).epsilon(1e-6));
    CHECK(alpha_max(p, 1.0) == 0.0);
    CHECK(alpha_max(p, 1.0 / p) == doctest::Approx(1.0));
    CHECK(alpha_max(p, 10.0 / p) == 1.0);
    // With d = p^-alpha the minimum equals the unconstrained count at alpha.
    for (double a : {0.2, 0.5, 0.8})
      CHECK(n_min(p, std::pow(p, -a)) == doctest::Approx(n_measurements(p, a)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(n_min(0.1, 0.5), ValidationError);
}

TEST_CASE("depth schedule") {
  CHECK(schedule_depth(1.0, 0.5) == 1);
  CHECK(schedule_depth(0.01, 1.0) == 100);
  CHECK(schedule_depth(0.01, 0.5) == 10);
  CHECK(schedule_depth(0.01, 0.0) == 1);
  CHECK(schedule_depth(2.0, 1.0) == 1);
}

TEST_CASE("outcome probabilities") {
  for (double phi : {-2.0, 0.3, 1.7})
    for (int m : {1, 3, 10}) {
      const double p0 = outcome_probability(0, phi, m, 0.4);
      CHECK(p0 + outcome_probability(1, phi, m, 0.4) == doctest::Approx(1.0));
      CHECK(p0 == doctest::Approx(0.5 * (1.0 + std::cos(m * (0.4 - phi)))));
    }
  CHECK(outcome_probability(0, 0.5, 2, 0.1, -1) == doctest::Approx(0.5 * (1.0 + std::cos(2 * (0.1 + 0.5)))));
}

TEST_CASE("an always-zero oracle at theta = phi shrinks the posterior") {
  AqpeConfig cfg;
  cfg.alpha = 0.0;
  GaussianPrior prior{0.4, 0.8};
  FixedOutcome zero(0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto [post, rec] = aqpe_iteration(prior, cfg, zero, rng);
    CHECK(rec.depth == 1);
    CHECK(post.sigma < prior.sigma);
    CHECK_FALSE(rec.fallback);
  }
}

TEST_CASE("large batches reproduce the quadrature posterior") {
  for (int e : {0, 1})
    for (bool lattice : {true, false}) {
      AqpeConfig cfg;
      cfg.alpha = 1.0;
      cfg.batch_size = 1000000;
      cfg.lattice_draws = lattice;
      const GaussianPrior prior{0.3, 0.25};
      FixedOutcome oracle(e);
      Rng rng(11);
      const auto [post, rec] = aqpe_iteration(prior, cfg, oracle, rng);
      const auto [qm, qs] = quadrature_posterior(prior.mu, prior.sigma, e, rec.depth, rec.theta);
      CHECK(std::abs(post.mu - qm) < 0.01 * qs);
      CHECK(std::abs(post.sigma / qs - 1.0) < 0.01);
    }
}

TEST_CASE("runs are deterministic per seed") {
  AqpeConfig cfg;
  cfg.alpha = 0.5;
  cfg.precision = 0.05;
  cfg.seed = 21;
  AnalyticOracle a(1.1), b(1.1);
  const AqpeRun x = estimate_phase(cfg, a);
  const AqpeRun y = estimate_phase(cfg, b);
  CHECK(x.mu == y.mu);
  CHECK(x.iterations == y.iterations);
  CHECK(x.history.size() == y.history.size());
  CHECK(history_table(x).columns ==
        std::vector<std::string>{"iter", "M", "theta", "E", "accepted", "mu", "sigma"});
}

TEST_CASE("zero phase is recovered at alpha 0") {
  AqpeConfig cfg;
  cfg.alpha = 0.0;
  cfg.precision = 0.05;
  cfg.seed = 500;
  int good = 0;
  for (const auto& r : simulate_runs(cfg, 0.0, 100))
    if (std::abs(r.mu) < 0.1) ++good;
  CHECK(good >= 95);
}

TEST_CASE("deeper schedules need fewer iterations and sigma mostly shrinks") {
  std::vector<double> medians;
  for (double alpha : {0.0, 0.5, 1.0}) {
    AqpeConfig cfg;
    cfg.alpha = alpha;
    cfg.precision = 0.05;
    cfg.seed = 1000;
    std::vector<double> its, shrink_fraction;
    for (int i = 0; i < 50; ++i) {
      cfg.seed = 1000 + static_cast<std::uint64_t>(i);
      AnalyticOracle oracle(-0.9);
      const AqpeRun run = estimate_phase(cfg, oracle);
      its.push_back(run.iterations);
      int steps = 0, shrinking = 0;
      double prev = cfg.prior.sigma;
      for (const auto& h : run.history) {
        if (!h.fallback) {
          ++steps;
          if (h.sigma <= prev) ++shrinking;
        }
        prev = h.sigma;
      }
      shrink_fraction.push_back(steps ? double(shrinking) / steps : 1.0);
    }
    medians.push_back(median(its));
    CHECK(median(shrink_fraction) >= 0.9);
  }
  CHECK(medians[0] > medians[1]);
  CHECK(medians[1] > medians[2]);
}

TEST_CASE("gate accounting") {
  CHECK(circuit_gates(1, 10) == 4.0 * 11 + 13);
  const GateTotals g = gate_costs(1e-3, 10, {{1, 100.0}, {5, 20.0}});
  CHECK(g.vqe == doctest::Approx(11.0 / 1e-6));
  CHECK(g.avqe == doctest::Approx(100.0 * circuit_gates(1, 10) + 20.0 * circuit_gates(5, 10)));
  AqpeRun a, b, c;
  a.depth_counts = {{1, 10}, {2, 4}};
  b.depth_counts = {{1, 20}};
  c.depth_counts = {{1, 30}, {2, 6}};
  const auto med = median_depth_counts({a, b, c});
  CHECK(med.at(1) == 20.0);
  CHECK(med.at(2) == 4.0);
}

TEST_CASE("circuit oracle phase and statistics") {
  const Circuit prep = parse_circuit(2, "rx 0.7 0; h 1; cx 1 0; rz 0.3 1");
  StateVector psi(2);
  psi.apply(prep);
  for (const char* text : {"ZI", "XX", "YZ", "IZ"}) {
    const auto pauli = parse_pauli(text);
    const double expect = expectation(psi, pauli);
    CircuitOracle oracle(prep, pauli, NoiseModel{}, 1);
    CHECK(oracle.phi() == doctest::Approx(2.0 * std::acos(std::abs(expect))).epsilon(1e-9));
    Rng rng(4);
    oracle.begin_run(rng);
    const int shots = 20000;
    int zeros = 0;
    for (int i = 0; i < shots; ++i) zeros += oracle.measure(3, 0.2, rng) == 0;
    const double p0 = outcome_probability(0, oracle.phi(), 3, 0.2, 1);
    CHECK(std::abs(zeros / double(shots) - p0) < 4.0 * std::sqrt(p0 * (1 - p0) / shots) + 1e-9);
  }
}

TEST_CASE("energy estimate and hamiltonian parsing") {
  const auto h = parse_hamiltonian("0.5 Z; 0.3 Y\n-0.2 X");
  REQUIRE(h.size() == 3);
  CHECK(h[1].coefficient == 0.3);
  CHECK(h[2].pauli[0] == Pauli::X);
  CHECK_THROWS_AS(parse_hamiltonian("abc Z"), ValidationError);
  CHECK_THROWS_AS(parse_hamiltonian("0.5"), ValidationError);
  CHECK_THROWS_AS(parse_hamiltonian(" ; "), ValidationError);
  const Circuit prep = parse_circuit(1, "rx 0.7 0");
  StateVector psi(1);
  psi.apply(prep);
  double exact = 0.0;
  for (const auto& t : h) exact += t.coefficient * expectation(psi, t.pauli);
  AqpeConfig cfg;
  cfg.alpha = 1.0;
  cfg.precision = 0.005;
  cfg.seed = 3;
  const EnergyEstimate e = estimate_energy(h, prep, cfg);
  CHECK(e.converged);
  CHECK(std::abs(e.energy - exact) < 0.02);
}

TEST_CASE("depth usage follows the schedule exponent") {
  AqpeConfig cfg;
  cfg.precision = 0.01;
  cfg.seed = 70;
  cfg.alpha = 0.0;
  for (const auto& r : simulate_runs(cfg, 0.8, 5)) {
    REQUIRE(r.depth_counts.size() == 1);
    CHECK(r.depth_counts.begin()->first == 1);
    CHECK(r.depth_counts.begin()->second == r.iterations);
  }
  cfg.alpha = 1.0;
  const int grown = static_cast<int>(std::floor(1.0 / (2.0 * cfg.precision))) / 2;
  for (const auto& r : simulate_runs(cfg, 0.8, 5)) {
    CHECK(r.depth_counts.rbegin()->first >= grown);
    int total = 0;
    for (const auto& [m, n] : r.depth_counts) total += n;
    CHECK(total == r.iterations);
  }
}

TEST_CASE("measurement count does not grow with alpha") {
  for (double p : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    double prev = n_measurements(p, 0.0);
    for (int i = 1; i <= 100; ++i) {
      const double n = n_measurements(p, i / 100.0);
      CHECK(n <= prev);
      prev = n;
    }
  }
}
