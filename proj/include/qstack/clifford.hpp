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
#include <vector>

#include "qstack/rng.hpp"
#include "qstack/sim.hpp"

namespace qstack {

/// Hermitian Pauli operator (-1)^sign * P_0 (x) P_1 (x) ..., where qubit q
/// carries X, Z or Y according to bit q of `x` and `z` (both set = Y).
struct PauliRow {
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  bool sign = false;

  friend bool operator==(const PauliRow&, const PauliRow&) = default;
};

/// Stabilizer tableau of an n-qubit Clifford unitary C.
///
/// Row q holds C X_q C^dagger and row n+q holds C Z_q C^dagger. The bit
/// pattern of the rows is the 2n x 2n symplectic matrix over GF(2); the row
/// signs are the phase bits. Global phase is not represented.
class CliffordTableau {
 public:
  static constexpr int kMaxSampledQubits = 3;

  explicit CliffordTableau(int n_qubits);

  int n_qubits() const { return n_; }
  const PauliRow& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
  const PauliRow& image_x(int q) const { return row(q); }
  const PauliRow& image_z(int q) const { return row(n_ + q); }
  void set_row(int r, const PauliRow& p) { rows_[static_cast<std::size_t>(r)] = p; }

  /// Symplectic matrix entry: coefficient of generator `col` (X_0..X_{n-1},
  /// Z_0..Z_{n-1}) in row `r`.
  bool matrix_bit(int r, int col) const;

  /// True when the rows preserve the symplectic form.
  bool is_symplectic() const;

  /// C P C^dagger.
  PauliRow conjugate(const PauliRow& p) const;

  /// Packs matrix and phases into one integer (n <= 3); equal keys mean
  /// equal Clifford elements modulo global phase.
  std::uint64_t key() const;

  static CliffordTableau identity(int n) { return CliffordTableau(n); }
  static CliffordTableau hadamard(int n, int q);
  static CliffordTableau phase(int n, int q);
  static CliffordTableau cnot(int n, int control, int target);

  /// Tableau of a circuit built from Clifford gates only.
  static CliffordTableau from_circuit(const Circuit& circuit);

  friend bool operator==(const CliffordTableau&, const CliffordTableau&) = default;

 private:
  int n_;
  std::vector<PauliRow> rows_;
};

/// Uniformly random element of the n-qubit Clifford group, 1 <= n <= 3.
CliffordTableau sample_uniform(int n, Rng& rng);
CliffordTableau sample_uniform(int n, std::uint64_t seed);

/// Tableau of b∘a: `a` is applied first.
CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b);

CliffordTableau invert(const CliffordTableau& a);

/// Circuit over {H, S, CNOT} implementing the tableau up to global phase.
Circuit to_circuit(const CliffordTableau& a);

/// Order of the n-qubit Clifford group modulo global phase, |Sp(2n,2)| 4^n.
std::uint64_t clifford_group_order(int n);

}  // namespace qstack
