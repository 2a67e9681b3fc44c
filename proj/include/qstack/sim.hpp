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
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qstack/rng.hpp"

namespace qstack {

using Complex = std::complex<double>;

/// Hard cap on simulated register size.
inline constexpr int kMaxQubits = 12;

enum class GateKind {
  PauliX,
  PauliY,
  PauliZ,
  Hadamard,
  Phase,
  CNOT,
  CZ,
  RotationZ,
  RotationX,
  // diag(1, exp(-i*M*theta)) on the phase-estimation control qubit.
  AncillaControlledPhase,
};

struct Gate {
  GateKind kind = GateKind::PauliX;
  std::array<int, 2> targets{0, -1};
  double angle = 0.0;
  int power = 1;  // M for AncillaControlledPhase

  int arity() const { return targets[1] < 0 ? 1 : 2; }
  bool is_parameterised() const {
    return kind == GateKind::RotationZ || kind == GateKind::RotationX ||
           kind == GateKind::AncillaControlledPhase;
  }

  static Gate x(int q) { return {GateKind::PauliX, {q, -1}}; }
  static Gate y(int q) { return {GateKind::PauliY, {q, -1}}; }
  static Gate z(int q) { return {GateKind::PauliZ, {q, -1}}; }
  static Gate h(int q) { return {GateKind::Hadamard, {q, -1}}; }
  static Gate s(int q) { return {GateKind::Phase, {q, -1}}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
  static Gate rz(int q, double theta) { return {GateKind::RotationZ, {q, -1}, theta}; }
  static Gate rx(int q, double theta) { return {GateKind::RotationX, {q, -1}, theta}; }
  static Gate controlled_phase(int q, int m, double theta) {
    return {GateKind::AncillaControlledPhase, {q, -1}, theta, m};
  }
};

struct Circuit {
  int n_qubits = 1;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  Circuit& add(const Gate& g) {
    gates.push_back(g);
    return *this;
  }
  Circuit& append(const Circuit& other);
  std::size_t size() const { return gates.size(); }

  /// Throws ValidationError if the register size or any gate is invalid.
  void validate() const;
};

/// Text form: gates separated by ';' or newlines, e.g.
/// "h 0; cx 0 1; rz 0.25 1; cphase 3 0.7 0".
Circuit parse_circuit(int n_qubits, std::string_view text);
std::string to_text(const Circuit& circuit);

struct NoiseModel {
  double depolarizing_prob = 0.0;
  double measurement_flip_prob = 0.0;

  void validate() const;
  bool is_noiseless() const {
    return depolarizing_prob == 0.0 && measurement_flip_prob == 0.0;
  }
};

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// One character per qubit, qubit 0 first, from {I,X,Y,Z}.
std::vector<Pauli> parse_pauli(std::string_view text);

class StateVector {
 public:
  explicit StateVector(int n_qubits);

  int n_qubits() const { return n_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }

  void apply(const Gate& gate);
  void apply(const Circuit& circuit);
  void apply_pauli(int qubit, Pauli p);

  double norm_squared() const;
  double probability(std::uint64_t basis_index) const { return std::norm(amps_[basis_index]); }

  /// Samples a computational-basis index from the Born distribution.
  std::uint64_t sample(Rng& rng) const;

  static StateVector basis(int n_qubits, std::uint64_t index);

 private:
  void check_target(int q) const;

  int n_;
  std::vector<Complex> amps_;
};

/// Returns a new state with `gate` applied.
StateVector apply_gate(StateVector state, const Gate& gate);

/// Exact <psi|P|psi>.
double expectation(const StateVector& state, std::span<const Pauli> pauli);

/// Runs the gates of `circuit` from |0...0> with stochastic Pauli noise and
/// returns the final trajectory state (no readout).
StateVector run_trajectory(const Circuit& circuit, const NoiseModel& noise, Rng& rng);

/// One noisy shot. Bit q of the result is the readout of qubit q.
std::uint64_t sample_shot(const Circuit& circuit, const NoiseModel& noise, Rng& rng);

/// One noisy shot measuring `pauli`; returns the +/-1 eigenvalue read out.
/// Gates carry depolarizing noise; the basis change before readout does not.
int sample_pauli(const Circuit& circuit, const NoiseModel& noise,
                 std::span<const Pauli> pauli, Rng& rng);

/// Seeded single shot rendered as a bitstring, qubit 0 first.
std::string run_noisy(const Circuit& circuit, const NoiseModel& noise, std::uint64_t seed);

/// Dense unitary of a circuit, column-major (column j = image of basis j).
std::vector<Complex> unitary_matrix(const Circuit& circuit);

}  // namespace qstack
