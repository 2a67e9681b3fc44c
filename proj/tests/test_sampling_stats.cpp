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

#include <cmath>
#include <vector>
#include <tuple>

#include "qstack/error.hpp"
#include "qstack/sampling_stats.hpp"

using namespace qstack;

namespace {

// Exact variance of the pooled mean when each of k circuits draws P from the
// two-point law {mu - s, mu + s} (so Var P = s^2) and runs l shots. Brute force
// over the joint distribution of success counts.
double exact_two_point_variance(double mu, double s, int k, int l) {
  std::vector<double> dist{1.0};  // distribution of total successes
  for (int c = 0; c < k; ++c) {
    std::vector<double> per(static_cast<std::size_t>(l) + 1, 0.0);
    for (double p : {mu - s, mu + s})
      for (int x = 0; x <= l; ++x)
        per[static_cast<std::size_t>(x)] += 0.5 * std::tgamma(l + 1) / (std::tgamma(x + 1) * std::tgamma(l - x + 1)) *
                                            std::pow(p, x) * std::pow(1 - p, l - x);
    std::vector<double> next(dist.size() + static_cast<std::size_t>(l), 0.0);
    for (std::size_t a = 0; a < dist.size(); ++a)
      for (std::size_t b = 0; b < per.size(); ++b) next[a + b] += dist[a] * per[b];
    dist = next;
  }
  const double n = static_cast<double>(k) * l;
  double m1 = 0, m2 = 0;
  for (std::size_t t = 0; t < dist.size(); ++t) {
    const double f = t / n;
    m1 += dist[t] * f;
    m2 += dist[t] * f * f;
  }
  return m2 - m1 * m1;
}

}  // namespace

TEST_CASE("scheme-1 variance matches brute-force enumeration") {
  for (auto [mu, s, k, l] : std::vector<std::tuple<double, double, int, int>>{{0.5, 0.2, 2, 3}, {0.3, 0.1, 3, 4}, {0.8, 0.15, 1, 6}}) {
    const double exact = exact_two_point_variance(mu, s, k, l);
    TwoLevelModel m{mu, s * s, std::uint64_t(k), std::uint64_t(l)};
    CHECK(var_scheme1(m) == doctest::Approx(exact).epsilon(1e-12));
    // Fresh circuits per shot: same enumeration with l = 1 and k*l circuits.
    CHECK(var_scheme2(m) == doctest::Approx(exact_two_point_variance(mu, s, k * l, 1)).epsilon(1e-12));
  }
}

TEST_CASE("scheme inequality and its equality cases") {
  for (double mu : {0.2, 0.5, 0.9})
    for (double s2 : {0.0, 0.01, 0.05})
      for (std::uint64_t l : {1, 2, 10})
        for (std::uint64_t k : {1, 7}) {
          const TwoLevelModel m{mu, s2, k, l};
          const double v1 = var_scheme1(m), v2 = var_scheme2(m);
          if (s2 == 0.0 || l == 1)
            CHECK(v1 == doctest::Approx(v2).epsilon(1e-14));
          else
            CHECK(v1 > v2);
        }
}

TEST_CASE("samples required") {
  const SampleRequirement r = samples_required(0.5, 0.0, 1, 0.01);
  CHECK(r.shots == 2500);
  CHECK(r.feasible);
  // Minimal for any reuse count.
  for (double s2 : {0.0, 0.01, 0.05})
    for (std::uint64_t l : {1, 2, 3, 5, 10, 20}) {
      const auto q = samples_required(0.5, s2, l, 0.01);
      CHECK(q.shots == q.circuits * l);
      CHECK(var_scheme1({0.5, s2, q.circuits, l}) <= 1e-4);
      if (q.circuits > 1) CHECK(var_scheme1({0.5, s2, q.circuits - 1, l}) > 1e-4);
    }
  // Non-decreasing in sigma2 and l over the plotted grid.
  const std::vector<std::uint64_t> ls{1, 2, 5, 10};
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (int j = 0; j <= 20; ++j) {
      const double s2 = 0.001 * j;
      const auto here = samples_required(0.5, s2, ls[i], 0.01).shots;
      if (j > 0) CHECK(here >= samples_required(0.5, s2 - 0.001, ls[i], 0.01).shots);
      if (i > 0) CHECK(here >= samples_required(0.5, s2, ls[i - 1], 0.01).shots);
    }
  CHECK_FALSE(samples_required(0.5, 0.05, 1, 0.001, 100).feasible);
  CHECK_THROWS_AS(samples_required(0.5, 0.3, 1, 0.01), ValidationError);
  CHECK_THROWS_AS(samples_required(0.5, 0.0, 0, 0.01), ValidationError);
  CHECK_THROWS_AS(samples_required(0.5, 0.0, 1, 0.0), ValidationError);
  const Table t = samples_required_table(0.5, 0.01, {0.0, 0.01}, {1, 2});
  CHECK(t.columns == std::vector<std::string>{"sigma2", "l", "samples_required"});
  CHECK(t.rows.size() == 4);
}

TEST_CASE("beta matching reproduces the moments") {
  for (auto [mu, s2] : {std::pair{0.5, 0.01}, {0.2, 0.05}, {0.9, 0.001}}) {
    const auto [a, b] = beta_shape(mu, s2);
    CHECK(a / (a + b) == doctest::Approx(mu));
    CHECK(a * b / ((a + b) * (a + b) * (a + b + 1)) == doctest::Approx(s2));
  }
  CHECK_THROWS_AS(beta_shape(0.5, 0.25), ValidationError);
}

TEST_CASE("Monte Carlo replication agrees with the closed forms") {
  const TwoLevelModel m{0.4, 0.03, 5, 4};
  const auto mc = monte_carlo_variance(m, 100000, 17, 2);
  CHECK(std::abs(mc.scheme1.variance - var_scheme1(m)) < 3.0 * mc.scheme1.bootstrap_stderr);
  CHECK(std::abs(mc.scheme2.variance - var_scheme2(m)) < 3.0 * mc.scheme2.bootstrap_stderr);
  const auto again = monte_carlo_variance(m, 100000, 17, 1);
  CHECK(again.scheme1.variance == mc.scheme1.variance);
}
