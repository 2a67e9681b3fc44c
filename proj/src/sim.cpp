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

#include "qstack/sim.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qstack/error.hpp"

namespace qstack {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int parse_int(const std::string& w) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  require(ec == std::errc() && ptr == w.data() + w.size(), "circuit text: bad integer '" + w + "'");
  return v;
}

double parse_double(const std::string& w) {
  try {
    std::size_t used = 0;
    const double v = std::stod(w, &used);
    require(used == w.size(), "circuit text: bad number '" + w + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ValidationError("circuit text: bad number '" + w + "'");
  }
}

}  // namespace

Circuit& Circuit::append(const Circuit& other) {
  require(other.n_qubits <= n_qubits, "appended circuit must fit the register");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  return *this;
}

void Circuit::validate() const {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits, "n_qubits must be in [1, 12]");
  for (const Gate& g : gates) {
    const int a = g.targets[0];
    require(a >= 0 && a < n_qubits, "gate target index out of range");
    if (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) {
      const int b = g.targets[1];
      require(b >= 0 && b < n_qubits, "gate target index out of range");
      require(a != b, "two-qubit gate targets must be distinct");
    } else {
      require(g.targets[1] < 0, "single-qubit gate given two targets");
    }
    if (g.is_parameterised()) require(std::isfinite(g.angle), "rotation angle must be finite");
    if (g.kind == GateKind::AncillaControlledPhase) require(g.power >= 1, "phase gate power M must be >= 1");
  }
}

Circuit parse_circuit(int n_qubits, std::string_view text) {
  Circuit c(n_qubits);
  std::string normalized(text);
  for (char& ch : normalized)
    if (ch == '\n') ch = ';';
  std::string_view rest = normalized;
  while (!rest.empty()) {
    const auto cut = rest.find(';');
    const std::string_view item = trim(rest.substr(0, cut));
    rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
    if (item.empty()) continue;
    auto w = split_words(item);
    std::string op = w[0];
    for (char& ch : op) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto want = [&](std::size_t n) {
      require(w.size() == n + 1, "circuit text: '" + op + "' expects " + std::to_string(n) + " arguments");
    };
    if (op == "x" || op == "y" || op == "z" || op == "h" || op == "s") {
      want(1);
      const int q = parse_int(w[1]);
      switch (op[0]) {
        case 'x': c.add(Gate::x(q)); break;
        case 'y': c.add(Gate::y(q)); break;
        case 'z': c.add(Gate::z(q)); break;
        case 'h': c.add(Gate::h(q)); break;
        default: c.add(Gate::s(q)); break;
      }
    } else if (op == "cx" || op == "cnot") {
      want(2);
      c.add(Gate::cnot(parse_int(w[1]), parse_int(w[2])));
    } else if (op == "cz") {
      want(2);
      c.add(Gate::cz(parse_int(w[1]), parse_int(w[2])));
    } else if (op == "rz" || op == "rx") {
      want(2);
      const double theta = parse_double(w[1]);
      const int q = parse_int(w[2]);
      c.add(op == "rz" ? Gate::rz(q, theta) : Gate::rx(q, theta));
    } else if (op == "cphase") {
      want(3);
      c.add(Gate::controlled_phase(parse_int(w[3]), parse_int(w[1]), parse_double(w[2])));
    } else {
      throw ValidationError("circuit text: unknown gate '" + op + "'");
    }
  }
  c.validate();
  return c;
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const Gate& g : circuit.gates) {
    if (!first) out << "; ";
    first = false;
    const int a = g.targets[0], b = g.targets[1];
    switch (g.kind) {
      case GateKind::PauliX: out << "x " << a; break;
      case GateKind::PauliY: out << "y " << a; break;
      case GateKind::PauliZ: out << "z " << a; break;
      case GateKind::Hadamard: out << "h " << a; break;
      case GateKind::Phase: out << "s " << a; break;
      case GateKind::CNOT: out << "cx " << a << ' ' << b; break;
      case GateKind::CZ: out << "cz " << a << ' ' << b; break;
      case GateKind::RotationZ: out << "rz " << g.angle << ' ' << a; break;
      case GateKind::RotationX: out << "rx " << g.angle << ' ' << a; break;
      case GateKind::AncillaControlledPhase:
        out << "cphase " << g.power << ' ' << g.angle << ' ' << a;
        break;
    }
  }
  return out.str();
}

void NoiseModel::validate() const {
  require(depolarizing_prob >= 0.0 && depolarizing_prob <= 1.0, "depolarizing_prob must be in [0, 1]");
  require(measurement_flip_prob >= 0.0 && measurement_flip_prob <= 1.0,
          "measurement_flip_prob must be in [0, 1]");
}

std::vector<Pauli> parse_pauli(std::string_view text) {
  std::vector<Pauli> out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (std::toupper(static_cast<unsigned char>(ch))) {
      case 'I': out.push_back(Pauli::I); break;
      case 'X': out.push_back(Pauli::X); break;
      case 'Y': out.push_back(Pauli::Y); break;
      case 'Z': out.push_back(Pauli::Z); break;
      default: throw ValidationError(std::string("pauli string: unknown symbol '") + ch + "'");
    }
  }
  return out;
}

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits, "n_qubits must be in [1, 12]");
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  require(index < s.amps_.size(), "basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

void StateVector::check_target(int q) const {
  require(q >= 0 && q < n_, "gate target index out of range");
}

void StateVector::apply_pauli(int qubit, Pauli p) {
  switch (p) {
    case Pauli::I: return;
    case Pauli::X: apply(Gate::x(qubit)); return;
    case Pauli::Y: apply(Gate::y(qubit)); return;
    case Pauli::Z: apply(Gate::z(qubit)); return;
  }
}

void StateVector::apply(const Gate& g) {
  const int a = g.targets[0];
  check_target(a);
  const std::size_t dim = amps_.size();
  const std::size_t ma = std::size_t{1} << a;

  auto one_qubit = [&](Complex u00, Complex u01, Complex u10, Complex u11) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & ma) continue;
      const Complex v0 = amps_[i], v1 = amps_[i | ma];
      amps_[i] = u00 * v0 + u01 * v1;
      amps_[i | ma] = u10 * v0 + u11 * v1;
    }
  };
  auto diagonal = [&](Complex d1) {
    for (std::size_t i = 0; i < dim; ++i)
      if (i & ma) amps_[i] *= d1;
  };

  switch (g.kind) {
    case GateKind::PauliX:
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & ma)) std::swap(amps_[i], amps_[i | ma]);
      return;
    case GateKind::PauliY:
      one_qubit(0.0, Complex{0, -1}, Complex{0, 1}, 0.0);
      return;
    case GateKind::PauliZ: diagonal(-1.0); return;
    case GateKind::Hadamard: one_qubit(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2); return;
    case GateKind::Phase: diagonal(Complex{0, 1}); return;
    case GateKind::RotationZ: {
      const Complex e0 = std::polar(1.0, -g.angle / 2), e1 = std::polar(1.0, g.angle / 2);
      for (std::size_t i = 0; i < dim; ++i) amps_[i] *= (i & ma) ? e1 : e0;
      return;
    }
    case GateKind::RotationX: {
      const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      one_qubit(c, Complex{0, -s}, Complex{0, -s}, c);
      return;
    }
    case GateKind::AncillaControlledPhase:
      diagonal(std::polar(1.0, -static_cast<double>(g.power) * g.angle));
      return;
    case GateKind::CNOT:
    case GateKind::CZ: {
      const int b = g.targets[1];
      check_target(b);
      require(a != b, "two-qubit gate targets must be distinct");
      const std::size_t mb = std::size_t{1} << b;
      for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & ma)) continue;
        if (g.kind == GateKind::CZ) {
          if (i & mb) amps_[i] = -amps_[i];
        } else if (!(i & mb)) {
          std::swap(amps_[i], amps_[i | mb]);
        }
      }
      return;
    }
  }
}

void StateVector::apply(const Circuit& circuit) {
  for (const Gate& g : circuit.gates) apply(g);
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amps_) total += std::norm(a);
  return total;
}

std::uint64_t StateVector::sample(Rng& rng) const {
  const double u = rng.uniform() * norm_squared();
  double acc = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    acc += std::norm(amps_[i]);
    if (u < acc) return i;
  }
  // Rounding can leave u just above the final partial sum.
  for (std::size_t i = amps_.size(); i-- > 0;)
    if (std::norm(amps_[i]) > 0.0) return i;
  return 0;
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

double expectation(const StateVector& state, std::span<const Pauli> pauli) {
  require(static_cast<int>(pauli.size()) == state.n_qubits(), "pauli string length must equal n_qubits");
  StateVector image = state;
  for (int q = 0; q < state.n_qubits(); ++q) image.apply_pauli(q, pauli[q]);
  Complex inner{0.0, 0.0};
  const auto a = state.amplitudes();
  const auto b = image.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) inner += std::conj(a[i]) * b[i];
  return inner.real();
}

namespace {

void run_gates_with_noise(StateVector& state, const Circuit& circuit, const NoiseModel& noise, Rng& rng) {
  const double q = noise.depolarizing_prob;
  for (const Gate& g : circuit.gates) {
    state.apply(g);
    if (q <= 0.0) continue;
    for (int k = 0; k < g.arity(); ++k) {
      if (rng.uniform() < q) {
        state.apply_pauli(g.targets[k], static_cast<Pauli>(1 + rng.uniform_int(3)));
      }
    }
  }
}

std::uint64_t read_out(const StateVector& state, const NoiseModel& noise, Rng& rng) {
  std::uint64_t bits = state.sample(rng);
  // Drawn even at zero flip probability so the rest of the stream does not
  // depend on the readout setting.
  for (int q = 0; q < state.n_qubits(); ++q)
    if (rng.uniform() < noise.measurement_flip_prob) bits ^= std::uint64_t{1} << q;
  return bits;
}

}  // namespace

StateVector run_trajectory(const Circuit& circuit, const NoiseModel& noise, Rng& rng) {
  StateVector state(circuit.n_qubits);
  run_gates_with_noise(state, circuit, noise, rng);
  return state;
}

std::uint64_t sample_shot(const Circuit& circuit, const NoiseModel& noise, Rng& rng) {
  StateVector state(circuit.n_qubits);
  run_gates_with_noise(state, circuit, noise, rng);
  return read_out(state, noise, rng);
}

int sample_pauli(const Circuit& circuit, const NoiseModel& noise, std::span<const Pauli> pauli, Rng& rng) {
  require(static_cast<int>(pauli.size()) == circuit.n_qubits, "pauli string length must equal n_qubits");
  StateVector state(circuit.n_qubits);
  run_gates_with_noise(state, circuit, noise, rng);
  std::uint64_t mask = 0;
  for (int q = 0; q < circuit.n_qubits; ++q) {
    switch (pauli[q]) {
      case Pauli::I: continue;
      case Pauli::X: state.apply(Gate::h(q)); break;
      case Pauli::Y:
        // S^dagger then H maps the Y eigenbasis onto Z.
        state.apply(Gate::z(q));
        state.apply(Gate::s(q));
        state.apply(Gate::h(q));
        break;
      case Pauli::Z: break;
    }
    mask |= std::uint64_t{1} << q;
  }
  const std::uint64_t bits = read_out(state, noise, rng);
  return (std::popcount(bits & mask) & 1) ? -1 : 1;
}

std::string run_noisy(const Circuit& circuit, const NoiseModel& noise, std::uint64_t seed) {
  circuit.validate();
  noise.validate();
  Rng rng(seed);
  const std::uint64_t bits = sample_shot(circuit, noise, rng);
  std::string out(static_cast<std::size_t>(circuit.n_qubits), '0');
  for (int q = 0; q < circuit.n_qubits; ++q)
    if (bits >> q & 1) out[static_cast<std::size_t>(q)] = '1';
  return out;
}

std::vector<Complex> unitary_matrix(const Circuit& circuit) {
  circuit.validate();
  const std::size_t dim = std::size_t{1} << circuit.n_qubits;
  std::vector<Complex> u(dim * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector s = StateVector::basis(circuit.n_qubits, j);
    s.apply(circuit);
    const auto col = s.amplitudes();
    std::copy(col.begin(), col.end(), u.begin() + static_cast<std::ptrdiff_t>(j * dim));
  }
  return u;
}

}  // namespace qstack
