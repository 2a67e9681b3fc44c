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
#include <numbers>

#include "qstack/error.hpp"
#include "qstack/sim.hpp"
#include "test_util.hpp"

using namespace qstack;

namespace {

using Rho = std::array<std::array<Complex, 2>, 2>;

// Single-qubit density-matrix evolution: unitary then depolarizing channel
// rho -> (1-q) rho + q/3 (X rho X + Y rho Y + Z rho Z).
Rho evolve_density(const Circuit& c, double q) {
  Rho rho{{{1.0, 0.0}, {0.0, 0.0}}};
  for (const Gate& g : c.gates) {
    const test::Matrix u = unitary_matrix(Circuit(1).add(g));
    Rho next{};
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            next[r][s] += test::at(u, 2, r, a) * rho[a][b] * std::conj(test::at(u, 2, s, b));
    // Pauli twirl: the three conjugations average to I*tr/2*... written out directly.
    const Complex p00 = next[0][0], p11 = next[1][1], p01 = next[0][1], p10 = next[1][0];
    const Complex x00 = p11, x11 = p00, x01 = p10, x10 = p01;
    const Complex y00 = p11, y11 = p00, y01 = -p10, y10 = -p01;
    const Complex z00 = p00, z11 = p11, z01 = -p01, z10 = -p10;
    rho[0][0] = (1 - q) * p00 + q / 3 * (x00 + y00 + z00);
    rho[1][1] = (1 - q) * p11 + q / 3 * (x11 + y11 + z11);
    rho[0][1] = (1 - q) * p01 + q / 3 * (x01 + y01 + z01);
    rho[1][0] = (1 - q) * p10 + q / 3 * (x10 + y10 + z10);
  }
  return rho;
}

}  // namespace

TEST_CASE("apply_gate matches textbook gate actions") {
  const double r = 1.0 / std::sqrt(2.0);
  SUBCASE("Hadamard on |0>") {
    StateVector s = apply_gate(StateVector(1), Gate::h(0));
    CHECK(s.amplitudes()[0].real() == doctest::Approx(r));
    CHECK(s.amplitudes()[1].real() == doctest::Approx(r));
  }
  SUBCASE("CNOT on |10> gives |11>") {
    // qubit 0 set, qubit 1 clear
    StateVector s = apply_gate(StateVector::basis(2, 0b01), Gate::cnot(0, 1));
    CHECK(s.probability(0b11) == doctest::Approx(1.0));
  }
  SUBCASE("RotationZ(pi) on |+> gives |-> up to phase") {
    StateVector s = apply_gate(apply_gate(StateVector(1), Gate::h(0)), Gate::rz(0, std::numbers::pi));
    const std::array<Complex, 2> minus{r, -r};
    CHECK(test::equal_up_to_phase(s.amplitudes(), minus));
  }
  SUBCASE("target out of range") {
    CHECK_THROWS_AS(apply_gate(StateVector(2), Gate::x(2)), ValidationError);
    CHECK_THROWS_AS(apply_gate(StateVector(2), Gate::cnot(0, 5)), ValidationError);
  }
}

TEST_CASE("register cap and circuit validation") {
  CHECK_THROWS_AS(StateVector(13), ValidationError);
  CHECK_THROWS_AS(Circuit(2).add(Gate::cnot(1, 1)).validate(), ValidationError);
  CHECK_THROWS_AS(Circuit(1).add(Gate::rz(0, std::nan(""))).validate(), ValidationError);
  CHECK_THROWS_AS((NoiseModel{1.5, 0.0}.validate()), ValidationError);
}

TEST_CASE("run_noisy basic outcomes") {
  CHECK(run_noisy(Circuit(3), {}, 17) == "000");
  CHECK(run_noisy(Circuit(1).add(Gate::x(0)), {}, 17) == "1");
  CHECK(run_noisy(Circuit(2).add(Gate::x(1)), {}, 3) == "01");
}

TEST_CASE("run_noisy is deterministic per seed") {
  const Circuit c = parse_circuit(3, "h 0; cx 0 1; rx 0.4 2; cz 1 2; h 2");
  const NoiseModel noise{0.1, 0.05};
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(run_noisy(c, noise, seed) == run_noisy(c, noise, seed));
}

TEST_CASE("expectation values") {
  const auto z = parse_pauli("Z");
  const auto x = parse_pauli("X");
  CHECK(expectation(StateVector(1), z) == doctest::Approx(1.0));
  CHECK(expectation(StateVector::basis(1, 1), z) == doctest::Approx(-1.0));
  CHECK(expectation(apply_gate(StateVector(1), Gate::h(0)), x) == doctest::Approx(1.0));
  CHECK_THROWS_AS(expectation(StateVector(2), z), ValidationError);
}

TEST_CASE("norm is preserved by random gate sequences") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_int(4));
    StateVector s(n);
    for (int k = 0; k < 200; ++k) {
      const int a = static_cast<int>(rng.uniform_int(n));
      int b = static_cast<int>(rng.uniform_int(n));
      const double theta = 6.0 * rng.uniform();
      switch (rng.uniform_int(n > 1 ? 10 : 8)) {
        case 0: s.apply(Gate::x(a)); break;
        case 1: s.apply(Gate::y(a)); break;
        case 2: s.apply(Gate::z(a)); break;
        case 3: s.apply(Gate::h(a)); break;
        case 4: s.apply(Gate::s(a)); break;
        case 5: s.apply(Gate::rz(a, theta)); break;
        case 6: s.apply(Gate::rx(a, theta)); break;
        case 7: s.apply(Gate::controlled_phase(a, 3, theta)); break;
        case 8: if (b == a) b = (a + 1) % n; s.apply(Gate::cnot(a, b)); break;
        default: if (b == a) b = (a + 1) % n; s.apply(Gate::cz(a, b)); break;
      }
    }
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
  }
}

TEST_CASE("zero-noise sampling matches Born probabilities") {
  const Circuit c = parse_circuit(2, "h 0; rx 1.1 1; cx 0 1; rz 0.3 0; h 1");
  StateVector exact(2);
  exact.apply(c);
  const int shots = 10000;
  std::array<int, 4> counts{};
  for (int i = 0; i < shots; ++i) {
    Rng rng = Rng::stream(5, {static_cast<std::uint64_t>(i)});
    ++counts[sample_shot(c, {}, rng)];
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = exact.probability(k);
    const double se = std::sqrt(p * (1 - p) / shots);
    CHECK(std::abs(counts[k] / double(shots) - p) <= 3 * se + 1e-12);
  }
}

TEST_CASE("identity circuit survival matches the density-matrix oracle") {
  // 100 Hadamards compose to the identity.
  Circuit c(1);
  for (int i = 0; i < 100; ++i) c.add(Gate::h(0));
  const double q = 0.01;
  const double oracle = evolve_density(c, q)[0][0].real();
  const int shots = 100000;
  int zeros = 0;
  for (int i = 0; i < shots; ++i) {
    Rng rng = Rng::stream(11, {static_cast<std::uint64_t>(i)});
    zeros += sample_shot(c, {q, 0.0}, rng) == 0;
  }
  const double mean = zeros / double(shots);
  const double se = std::sqrt(oracle * (1 - oracle) / shots);
  CHECK(std::abs(mean - oracle) < 3 * se);
  // The oracle agrees with the Bloch contraction (1 - 4q/3)^100.
  CHECK(oracle == doctest::Approx(0.5 * (1 + std::pow(1 - 4 * q / 3, 100))).epsilon(1e-12));
}

TEST_CASE("stochastic Pauli unraveling reproduces the depolarizing channel") {
  const Circuit c = parse_circuit(1, "h 0; rz 0.7 0; rx 0.4 0; s 0; h 0");
  const double q = 0.2;
  const Rho oracle = evolve_density(c, q);
  Rho empirical{};
  const int shots = 100000;
  for (int i = 0; i < shots; ++i) {
    Rng rng = Rng::stream(23, {static_cast<std::uint64_t>(i)});
    const StateVector s = run_trajectory(c, {q, 0.0}, rng);
    const auto a = s.amplitudes();
    for (int r = 0; r < 2; ++r)
      for (int k = 0; k < 2; ++k) empirical[r][k] += a[r] * std::conj(a[k]) / double(shots);
  }
  // Trace distance of a 2x2 Hermitian difference: |eigenvalues| / 2.
  const Complex d00 = empirical[0][0] - oracle[0][0];
  const Complex d01 = empirical[0][1] - oracle[0][1];
  const double trace_distance = std::sqrt(d00.real() * d00.real() + std::norm(d01));
  CHECK(trace_distance < 1e-2);
}

TEST_CASE("circuit text round trip") {
  const Circuit c = parse_circuit(3, "h 0; cx 0 1; rz 0.25 2\ncz 1 2; cphase 3 0.5 0; y 1; s 2");
  CHECK(c.size() == 7);
  const Circuit again = parse_circuit(3, to_text(c));
  CHECK(to_text(again) == to_text(c));
  CHECK_THROWS_AS(parse_circuit(2, "foo 1"), ValidationError);
  CHECK_THROWS_AS(parse_circuit(2, "cx 0"), ValidationError);
  CHECK_THROWS_AS(parse_circuit(2, "h 4"), ValidationError);
}
