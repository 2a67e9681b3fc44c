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

#include "qstack/clifford.hpp"

#include <bit>

#include "qstack/error.hpp"

namespace qstack {

namespace {

// i^k X^x Z^z with X^x and Z^z ordered products over qubits.
struct PhasedPauli {
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  int k = 0;
};

int popcount(std::uint32_t v) { return std::popcount(v); }

PhasedPauli to_phased(const PauliRow& p) {
  return {p.x, p.z, (2 * static_cast<int>(p.sign) + popcount(p.x & p.z)) & 3};
}

PauliRow to_row(const PhasedPauli& p) {
  const int k = (p.k - popcount(p.x & p.z)) & 3;
  // Products of Hermitian images stay Hermitian; k is 0 or 2 here.
  return {p.x, p.z, k == 2};
}

PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  return {a.x ^ b.x, a.z ^ b.z, (a.k + b.k + 2 * popcount(a.z & b.x)) & 3};
}

// Symplectic vectors packed as x bits [0, n) and z bits [n, 2n).
std::uint32_t pack(const PauliRow& p, int n) { return p.x | (p.z << n); }

PauliRow unpack(std::uint32_t v, int n) {
  const std::uint32_t mask = (1u << n) - 1;
  return {v & mask, (v >> n) & mask, false};
}

int symplectic_form(std::uint32_t u, std::uint32_t v, int n) {
  const std::uint32_t mask = (1u << n) - 1;
  const std::uint32_t ux = u & mask, uz = u >> n, vx = v & mask, vz = v >> n;
  return popcount((ux & vz) ^ (uz & vx)) & 1;
}

// GF(2) inverse of the 2n x 2n matrix whose row r is `rows[r]`.
std::vector<std::uint32_t> gf2_inverse(std::vector<std::uint32_t> rows, int dim) {
  std::vector<std::uint32_t> inv(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) inv[static_cast<std::size_t>(r)] = 1u << r;
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int r = col; r < dim; ++r)
      if (rows[static_cast<std::size_t>(r)] >> col & 1) {
        pivot = r;
        break;
      }
    require(pivot >= 0, "tableau matrix is singular");
    std::swap(rows[static_cast<std::size_t>(col)], rows[static_cast<std::size_t>(pivot)]);
    std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < dim; ++r) {
      if (r != col && (rows[static_cast<std::size_t>(r)] >> col & 1)) {
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(col)];
        inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(col)];
      }
    }
  }
  return inv;
}

}  // namespace

CliffordTableau::CliffordTableau(int n_qubits) : n_(n_qubits) {
  require(n_qubits >= 1 && n_qubits <= 16, "tableau qubit count must be in [1, 16]");
  rows_.resize(static_cast<std::size_t>(2 * n_));
  for (int q = 0; q < n_; ++q) {
    rows_[static_cast<std::size_t>(q)].x = 1u << q;
    rows_[static_cast<std::size_t>(n_ + q)].z = 1u << q;
  }
}

bool CliffordTableau::matrix_bit(int r, int col) const {
  const PauliRow& p = row(r);
  return col < n_ ? (p.x >> col & 1) : (p.z >> (col - n_) & 1);
}

bool CliffordTableau::is_symplectic() const {
  for (int i = 0; i < 2 * n_; ++i) {
    for (int j = 0; j < 2 * n_; ++j) {
      // X_a and Z_b anticommute exactly when a == b.
      const int expected = (i % n_ == j % n_ && (i < n_) != (j < n_)) ? 1 : 0;
      if (symplectic_form(pack(row(i), n_), pack(row(j), n_), n_) != expected) return false;
    }
  }
  return true;
}

PauliRow CliffordTableau::conjugate(const PauliRow& p) const {
  const PhasedPauli in = to_phased(p);
  PhasedPauli out{0, 0, in.k};
  for (int q = 0; q < n_; ++q)
    if (in.x >> q & 1) out = multiply(out, to_phased(image_x(q)));
  for (int q = 0; q < n_; ++q)
    if (in.z >> q & 1) out = multiply(out, to_phased(image_z(q)));
  return to_row(out);
}

std::uint64_t CliffordTableau::key() const {
  require(n_ <= kMaxSampledQubits, "tableau key supports n <= 3");
  std::uint64_t k = 0;
  for (int r = 0; r < 2 * n_; ++r) {
    const PauliRow& p = row(r);
    k = (k << (2 * n_ + 1)) | (static_cast<std::uint64_t>(pack(p, n_)) << 1) | (p.sign ? 1 : 0);
  }
  return k;
}

CliffordTableau CliffordTableau::hadamard(int n, int q) {
  CliffordTableau t(n);
  t.rows_[static_cast<std::size_t>(q)] = {0, 1u << q, false};
  t.rows_[static_cast<std::size_t>(n + q)] = {1u << q, 0, false};
  return t;
}

CliffordTableau CliffordTableau::phase(int n, int q) {
  CliffordTableau t(n);
  t.rows_[static_cast<std::size_t>(q)] = {1u << q, 1u << q, false};
  return t;
}

CliffordTableau CliffordTableau::cnot(int n, int control, int target) {
  CliffordTableau t(n);
  t.rows_[static_cast<std::size_t>(control)].x |= 1u << target;
  t.rows_[static_cast<std::size_t>(n + target)].z |= 1u << control;
  return t;
}

CliffordTableau CliffordTableau::from_circuit(const Circuit& circuit) {
  const int n = circuit.n_qubits;
  CliffordTableau t(n);
  auto then = [&](const CliffordTableau& g) { t = compose(t, g); };
  for (const Gate& g : circuit.gates) {
    const int a = g.targets[0], b = g.targets[1];
    switch (g.kind) {
      case GateKind::Hadamard: then(hadamard(n, a)); break;
      case GateKind::Phase: then(phase(n, a)); break;
      case GateKind::CNOT: then(cnot(n, a, b)); break;
      case GateKind::PauliZ:
        then(phase(n, a));
        then(phase(n, a));
        break;
      case GateKind::PauliX:
        then(hadamard(n, a));
        then(phase(n, a));
        then(phase(n, a));
        then(hadamard(n, a));
        break;
      case GateKind::PauliY: {
        // Y = iXZ; conjugation flips the signs of X and Z images.
        CliffordTableau y(n);
        y.rows_[static_cast<std::size_t>(a)].sign = true;
        y.rows_[static_cast<std::size_t>(n + a)].sign = true;
        then(y);
        break;
      }
      case GateKind::CZ:
        then(hadamard(n, b));
        then(cnot(n, a, b));
        then(hadamard(n, b));
        break;
      default:
        throw ValidationError("circuit contains a non-Clifford gate");
    }
  }
  return t;
}

CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b) {
  require(a.n_qubits() == b.n_qubits(), "compose: tableau dimensions differ");
  CliffordTableau out(a.n_qubits());
  for (int r = 0; r < 2 * a.n_qubits(); ++r) out.set_row(r, b.conjugate(a.row(r)));
  return out;
}

CliffordTableau invert(const CliffordTableau& a) {
  const int n = a.n_qubits();
  const int dim = 2 * n;
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) rows[static_cast<std::size_t>(r)] = pack(a.row(r), n);
  const std::vector<std::uint32_t> inv_rows = gf2_inverse(rows, dim);

  CliffordTableau inv(n);
  for (int r = 0; r < dim; ++r) inv.set_row(r, unpack(inv_rows[static_cast<std::size_t>(r)], n));

  // With zero phases, a followed by inv maps each generator to +/- itself.
  // Flipping the sign of inv's row j flips output row i iff a's row i
  // contains generator j, so the correction solves S delta = s over GF(2).
  const CliffordTableau trial = compose(a, inv);
  std::uint32_t s = 0;
  for (int r = 0; r < dim; ++r)
    if (trial.row(r).sign) s |= 1u << r;
  std::uint32_t delta = 0;
  for (int j = 0; j < dim; ++j)
    if (popcount(inv_rows[static_cast<std::size_t>(j)] & s) & 1) delta |= 1u << j;
  for (int j = 0; j < dim; ++j) {
    if (delta >> j & 1) {
      PauliRow p = inv.row(j);
      p.sign = !p.sign;
      inv.set_row(j, p);
    }
  }
  return inv;
}

CliffordTableau sample_uniform(int n, Rng& rng) {
  require(n >= 1 && n <= CliffordTableau::kMaxSampledQubits, "clifford sampling supports 1 <= n <= 3");
  const int dim = 2 * n;
  const std::uint32_t space = 1u << dim;
  std::vector<std::uint32_t> basis;  // a_0, b_0, a_1, b_1, ...
  CliffordTableau t(n);
  std::vector<std::uint32_t> candidates;
  candidates.reserve(space);

  auto orthogonal_to_basis = [&](std::uint32_t v) {
    for (std::uint32_t w : basis)
      if (symplectic_form(v, w, n)) return false;
    return true;
  };

  for (int q = 0; q < n; ++q) {
    candidates.clear();
    for (std::uint32_t v = 1; v < space; ++v)
      if (orthogonal_to_basis(v)) candidates.push_back(v);
    const std::uint32_t a = candidates[rng.uniform_int(candidates.size())];

    candidates.clear();
    for (std::uint32_t v = 1; v < space; ++v)
      if (orthogonal_to_basis(v) && symplectic_form(v, a, n) == 1) candidates.push_back(v);
    const std::uint32_t b = candidates[rng.uniform_int(candidates.size())];

    basis.push_back(a);
    basis.push_back(b);
    t.set_row(q, unpack(a, n));
    t.set_row(n + q, unpack(b, n));
  }
  for (int r = 0; r < dim; ++r) {
    PauliRow p = t.row(r);
    p.sign = rng.uniform_int(2) == 1;
    t.set_row(r, p);
  }
  return t;
}

CliffordTableau sample_uniform(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_uniform(n, rng);
}

namespace {

// Reduces a tableau to the identity by appending gates on the output side,
// recording each gate. The recorded sequence, inverted, implements the input.
class Reducer {
 public:
  explicit Reducer(CliffordTableau t) : t_(std::move(t)), n_(t_.n_qubits()) {}

  Circuit run() {
    for (int q = 0; q < n_; ++q) {
      set_x_pivot(q);
      clear_destabilizer_row(q);
      clear_stabilizer_row(q);
    }
    for (int q = 0; q < n_; ++q) {
      if (t_.image_x(q).sign) {  // Z
        s(q);
        s(q);
      }
      if (t_.image_z(q).sign) {  // X
        h(q);
        s(q);
        s(q);
        h(q);
      }
    }
    Circuit out(n_);
    for (auto it = recorded_.rbegin(); it != recorded_.rend(); ++it) {
      if (it->kind == GateKind::Phase) {
        out.add(*it).add(*it).add(*it);
      } else {
        out.add(*it);
      }
    }
    return out;
  }

 private:
  bool dx(int row, int q) const { return t_.image_x(row).x >> q & 1; }
  bool dz(int row, int q) const { return t_.image_x(row).z >> q & 1; }
  bool sx(int row, int q) const { return t_.image_z(row).x >> q & 1; }
  bool sz(int row, int q) const { return t_.image_z(row).z >> q & 1; }

  void h(int q) {
    t_ = compose(t_, CliffordTableau::hadamard(n_, q));
    recorded_.push_back(Gate::h(q));
  }
  void s(int q) {
    t_ = compose(t_, CliffordTableau::phase(n_, q));
    recorded_.push_back(Gate::s(q));
  }
  void cx(int c, int tq) {
    t_ = compose(t_, CliffordTableau::cnot(n_, c, tq));
    recorded_.push_back(Gate::cnot(c, tq));
  }
  void swap(int a, int b) {
    cx(a, b);
    cx(b, a);
    cx(a, b);
  }

  void set_x_pivot(int q) {
    if (dx(q, q)) return;
    for (int i = q + 1; i < n_; ++i) {
      if (dx(q, i)) {
        swap(i, q);
        return;
      }
    }
    for (int i = q; i < n_; ++i) {
      if (dz(q, i)) {
        h(i);
        if (i != q) swap(i, q);
        return;
      }
    }
  }

  void clear_destabilizer_row(int q) {
    for (int i = q + 1; i < n_; ++i)
      if (dx(q, i)) cx(q, i);
    bool any_z = false;
    for (int i = q; i < n_; ++i) any_z = any_z || dz(q, i);
    if (!any_z) return;
    if (!dz(q, q)) s(q);
    for (int i = q + 1; i < n_; ++i)
      if (dz(q, i)) cx(i, q);
    s(q);
  }

  void clear_stabilizer_row(int q) {
    for (int i = q + 1; i < n_; ++i)
      if (sz(q, i)) cx(i, q);
    bool any_x = false;
    for (int i = q; i < n_; ++i) any_x = any_x || sx(q, i);
    if (!any_x) return;
    h(q);
    for (int i = q + 1; i < n_; ++i)
      if (sx(q, i)) cx(q, i);
    if (sz(q, q)) s(q);
    h(q);
  }

  CliffordTableau t_;
  int n_;
  std::vector<Gate> recorded_;
};

}  // namespace

Circuit to_circuit(const CliffordTableau& a) {
  require(a.is_symplectic(), "to_circuit: tableau is not symplectic");
  return Reducer(a).run();
}

std::uint64_t clifford_group_order(int n) {
  require(n >= 1 && n <= 5, "group order supported for 1 <= n <= 5");
  std::uint64_t order = 1;
  for (int j = 1; j <= n; ++j) {
    const std::uint64_t four_j = std::uint64_t{1} << (2 * j);
    order *= (four_j - 1) * (four_j / 2);  // |Sp(2n,2)| = prod 2^{2j-1}(4^j - 1)
  }
  return order << (2 * n);
}

}  // namespace qstack
