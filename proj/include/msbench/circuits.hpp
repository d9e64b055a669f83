// Copyright 2026 The msbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msbench/linalg.hpp"

// Two-qubit circuits over the native basis {RZ, SX, CNOT} (plus X for state
// preparation). Qubit 0 is the most significant bit of basis labels, so
// |q0 q1> = |10> is basis index 2 and a gate on qubit 0 lifts as G (x) I.

namespace msbench {

enum class GateKind { RZ, SX, X, CNOT };

class Gate {
 public:
  static Gate rz(int qubit, double angle);
  static Gate sx(int qubit);
  static Gate x(int qubit);
  static Gate cnot(int control, int target);

  GateKind kind() const { return kind_; }
  /// Acted qubit of a single-qubit gate.
  int qubit() const { return qubit_; }
  int control() const { return control_; }
  int target() const { return target_; }
  /// RZ angle in radians, as given (not reduced mod 2 pi).
  double angle() const { return angle_; }

  bool acts_on(int qubit) const;
  std::string name() const;

  friend bool operator==(const Gate &, const Gate &) = default;

 private:
  Gate(GateKind kind, int qubit, int control, int target, double angle);

  GateKind kind_;
  int qubit_;
  int control_;
  int target_;
  double angle_;
};

class Circuit {
 public:
  static constexpr int kNumQubits = 2;

  Circuit() = default;
  explicit Circuit(std::vector<Gate> gates);

  const std::vector<Gate> &gates() const { return gates_; }
  bool empty() const { return gates_.empty(); }
  std::size_t size() const { return gates_.size(); }

  Circuit &append(const Gate &gate);
  /// This circuit followed by `other`.
  Circuit then(const Circuit &other) const;

  std::size_t count(GateKind kind) const;

  friend bool operator==(const Circuit &, const Circuit &) = default;

 private:
  std::vector<Gate> gates_;
};

enum class TargetLabel { MS, CX, Custom };

std::string to_string(TargetLabel label);
TargetLabel parse_target_label(std::string_view text);

/// A labeled 4x4 unitary. Construction rejects ||U^dagger U - I||_F > 1e-10.
class TargetUnitary {
 public:
  TargetUnitary(TargetLabel label, ComplexMatrix matrix);

  TargetLabel label() const { return label_; }
  const ComplexMatrix &matrix() const { return matrix_; }

 private:
  TargetLabel label_;
  ComplexMatrix matrix_;
};

// Single-qubit gate matrices.
ComplexMatrix rz_matrix(double angle);
ComplexMatrix sx_matrix();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();

/// CNOT with qubit 0 as control in the |q0 q1> ordering.
ComplexMatrix cnot_matrix(int control = 0, int target = 1);

/// 4x4 matrix of a gate acting on the two-qubit register.
ComplexMatrix gate_unitary(const Gate &gate);

/// Ordered product of gate unitaries; gate 0 is applied first.
ComplexMatrix circuit_unitary(const Circuit &circuit);

/// (I + i X(x)X) / sqrt(2): 1/sqrt(2) on the diagonal, i/sqrt(2) on the
/// anti-diagonal.
TargetUnitary ms_unitary();
TargetUnitary cx_unitary();
TargetUnitary target_unitary(TargetLabel label);

/// min over phi of ||a - e^{i phi} b||_F.
double phase_aligned_distance(const ComplexMatrix &a, const ComplexMatrix &b);

struct MakhlinInvariants {
  Complex g1;
  double g2;
};

/// Local-equivalence invariants of a two-qubit unitary from the magic-basis
/// representation; equal invariants mean equal up to single-qubit gates.
MakhlinInvariants makhlin_invariants(const ComplexMatrix &u);

/// Single-CNOT realization of the MS unitary over {RZ, SX, CNOT}, equal to
/// ms_unitary() up to a global phase.
Circuit synthesize_ms_circuit();

/// [CNOT(0 -> 1)].
Circuit cx_circuit();

/// Builtin circuit for a target label ("ms" or "cx").
Circuit builtin_circuit(TargetLabel label);

}  // namespace msbench
