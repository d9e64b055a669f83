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

#include "msbench/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "msbench/errors.hpp"

namespace msbench {

namespace {

void check_qubit(int q) {
  if (q < 0 || q >= Circuit::kNumQubits) throw InvalidInput("qubit index out of range: " + std::to_string(q));
}

// Lift a single-qubit matrix onto the register.
ComplexMatrix lift(const ComplexMatrix &g, int qubit) {
  const auto id = ComplexMatrix::identity(2);
  return qubit == 0 ? kron(g, id) : kron(id, g);
}

}  // namespace

Gate::Gate(GateKind kind, int qubit, int control, int target, double angle)
    : kind_(kind), qubit_(qubit), control_(control), target_(target), angle_(angle) {}

Gate Gate::rz(int qubit, double angle) {
  check_qubit(qubit);
  if (!std::isfinite(angle)) throw InvalidInput("RZ angle must be finite");
  return Gate(GateKind::RZ, qubit, 0, 0, angle);
}

Gate Gate::sx(int qubit) {
  check_qubit(qubit);
  return Gate(GateKind::SX, qubit, 0, 0, 0.0);
}

Gate Gate::x(int qubit) {
  check_qubit(qubit);
  return Gate(GateKind::X, qubit, 0, 0, 0.0);
}

Gate Gate::cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw InvalidInput("CNOT control and target must differ");
  return Gate(GateKind::CNOT, 0, control, target, 0.0);
}

bool Gate::acts_on(int qubit) const {
  if (kind_ == GateKind::CNOT) return qubit == control_ || qubit == target_;
  return qubit == qubit_;
}

std::string Gate::name() const {
  switch (kind_) {
    case GateKind::RZ: return "rz";
    case GateKind::SX: return "sx";
    case GateKind::X: return "x";
    case GateKind::CNOT: return "cnot";
  }
  return "?";
}

Circuit::Circuit(std::vector<Gate> gates) : gates_(std::move(gates)) {}

Circuit &Circuit::append(const Gate &gate) {
  gates_.push_back(gate);
  return *this;
}

Circuit Circuit::then(const Circuit &other) const {
  Circuit out = *this;
  out.gates_.insert(out.gates_.end(), other.gates_.begin(), other.gates_.end());
  return out;
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind() == kind; }));
}

std::string to_string(TargetLabel label) {
  switch (label) {
    case TargetLabel::MS: return "ms";
    case TargetLabel::CX: return "cx";
    case TargetLabel::Custom: return "custom";
  }
  return "custom";
}

TargetLabel parse_target_label(std::string_view text) {
  if (text == "ms") return TargetLabel::MS;
  if (text == "cx") return TargetLabel::CX;
  if (text == "custom") return TargetLabel::Custom;
  throw InvalidInput("unknown target '" + std::string(text) + "' (expected ms or cx)");
}

TargetUnitary::TargetUnitary(TargetLabel label, ComplexMatrix matrix)
    : label_(label), matrix_(std::move(matrix)) {
  if (matrix_.rows() != 4 || matrix_.cols() != 4) throw InvalidInput("target unitary must be 4x4");
  if (unitarity_deviation(matrix_) > 1e-10) throw InvalidInput("target matrix is not unitary");
}

ComplexMatrix rz_matrix(double angle) {
  return {{std::polar(1.0, -angle / 2), 0.0}, {0.0, std::polar(1.0, angle / 2)}};
}

ComplexMatrix sx_matrix() {
  const Complex a{0.5, 0.5}, b{0.5, -0.5};
  return {{a, b}, {b, a}};
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{s, s}, {s, -s}};
}

ComplexMatrix cnot_matrix(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw InvalidInput("CNOT control and target must differ");
  ComplexMatrix m(4, 4);
  for (std::size_t basis = 0; basis < 4; ++basis) {
    // Bit of qubit q sits at position (1 - q) in the basis index.
    const std::size_t cbit = (basis >> (1 - control)) & 1u;
    const std::size_t image = cbit ? basis ^ (1u << (1 - target)) : basis;
    m(image, basis) = 1.0;
  }
  return m;
}

ComplexMatrix gate_unitary(const Gate &gate) {
  switch (gate.kind()) {
    case GateKind::RZ: return lift(rz_matrix(gate.angle()), gate.qubit());
    case GateKind::SX: return lift(sx_matrix(), gate.qubit());
    case GateKind::X: return lift(pauli_x(), gate.qubit());
    case GateKind::CNOT: return cnot_matrix(gate.control(), gate.target());
  }
  throw InvalidInput("unknown gate kind");
}

ComplexMatrix circuit_unitary(const Circuit &circuit) {
  ComplexMatrix u = ComplexMatrix::identity(4);
  for (const auto &g : circuit.gates()) u = matmul(gate_unitary(g), u);
  return u;
}

TargetUnitary ms_unitary() {
  const double s = 1.0 / std::numbers::sqrt2;
  const Complex is{0.0, s};
  return TargetUnitary(TargetLabel::MS, {{s, 0.0, 0.0, is},
                                         {0.0, s, is, 0.0},
                                         {0.0, is, s, 0.0},
                                         {is, 0.0, 0.0, s}});
}

TargetUnitary cx_unitary() { return TargetUnitary(TargetLabel::CX, cnot_matrix(0, 1)); }

TargetUnitary target_unitary(TargetLabel label) {
  switch (label) {
    case TargetLabel::MS: return ms_unitary();
    case TargetLabel::CX: return cx_unitary();
    case TargetLabel::Custom: break;
  }
  throw InvalidInput("custom targets have no builtin unitary");
}

double phase_aligned_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
  // ||a - e^{i phi} b||^2 = ||a||^2 + ||b||^2 - 2 Re(e^{i phi} <a, b>), minimized
  // when the phase cancels the argument of <a, b>.
  const double na = frobenius_norm(a), nb = frobenius_norm(b);
  const double overlap = std::abs(hs_inner(a, b));
  return std::sqrt(std::max(0.0, na * na + nb * nb - 2.0 * overlap));
}

MakhlinInvariants makhlin_invariants(const ComplexMatrix &u) {
  if (u.rows() != 4 || u.cols() != 4) throw InvalidInput("Makhlin invariants need a 4x4 matrix");
  if (unitarity_deviation(u) > 1e-8) throw InvalidInput("Makhlin invariants need a unitary input");

  const double s = 1.0 / std::numbers::sqrt2;
  const Complex is{0.0, s};
  const ComplexMatrix magic{{s, 0.0, 0.0, is}, {0.0, is, s, 0.0}, {0.0, is, -s, 0.0}, {s, 0.0, 0.0, -is}};

  const ComplexMatrix ub = matmul(matmul(magic.adjoint(), u), magic);
  const ComplexMatrix m = matmul(ub.transpose(), ub);

  // det(U) by cofactor expansion along the first row.
  auto det3 = [&](std::size_t skip_row, std::size_t skip_col) {
    std::size_t rs[3], cs[3];
    for (std::size_t i = 0, k = 0; i < 4; ++i)
      if (i != skip_row) rs[k++] = i;
    for (std::size_t i = 0, k = 0; i < 4; ++i)
      if (i != skip_col) cs[k++] = i;
    auto e = [&](int r, int c) { return u(rs[r], cs[c]); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  };
  Complex det = 0.0;
  for (std::size_t c = 0; c < 4; ++c) det += (c % 2 ? -1.0 : 1.0) * u(0, c) * det3(0, c);

  const Complex tr = m.trace();
  const Complex tr2 = matmul(m, m).trace();
  return {tr * tr / (16.0 * det), ((tr * tr - tr2) / (4.0 * det)).real()};
}

Circuit synthesize_ms_circuit() {
  // exp(i pi/4 XX) = (H(x)H) exp(i pi/4 ZZ) (H(x)H), and exp(i pi/4 ZZ) is CZ
  // dressed by RZ(-pi/2) on both qubits. Writing CZ as (I(x)H) CNOT (I(x)H)
  // and H ~ RZ(pi/2) SX RZ(pi/2), the pre-CNOT layer collapses to
  // RZ(pi/2) SX on qubit 0 and H RZ(-pi/2) H ~ RZ(pi) SX RZ(pi) on qubit 1.
  constexpr double half_pi = std::numbers::pi / 2;
  constexpr double pi = std::numbers::pi;
  return Circuit({
      Gate::rz(0, half_pi),
      Gate::sx(0),
      Gate::rz(1, pi),
      Gate::sx(1),
      Gate::rz(1, pi),
      Gate::cnot(0, 1),
      Gate::rz(0, half_pi),
      Gate::sx(0),
      Gate::rz(0, half_pi),
  });
}

Circuit cx_circuit() { return Circuit({Gate::cnot(0, 1)}); }

Circuit builtin_circuit(TargetLabel label) {
  switch (label) {
    case TargetLabel::MS: return synthesize_ms_circuit();
    case TargetLabel::CX: return cx_circuit();
    case TargetLabel::Custom: break;
  }
  throw InvalidInput("no builtin circuit for a custom target");
}

}  // namespace msbench
