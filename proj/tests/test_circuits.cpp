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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "msbench/circuits.hpp"
#include "msbench/errors.hpp"
#include "test_support.hpp"

namespace msbench {
namespace {

using std::numbers::pi;
using testing::max_abs_diff;

// (I + i XX) / sqrt(2), written out entry by entry.
ComplexMatrix ms_by_hand() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex is(0.0, s);
  return ComplexMatrix{{s, 0, 0, is}, {0, s, is, 0}, {0, is, s, 0}, {is, 0, 0, s}};
}

TEST(Gate, ValidatesOperands) {
  EXPECT_THROW(Gate::rz(2, 0.1), InvalidInput);
  EXPECT_THROW(Gate::rz(0, std::nan("")), InvalidInput);
  EXPECT_THROW(Gate::cnot(1, 1), InvalidInput);
  EXPECT_THROW(Gate::sx(-1), InvalidInput);
  EXPECT_NO_THROW(Gate::cnot(1, 0));
}

TEST(NativeGates, MatrixForms) {
  const ComplexMatrix sx = sx_matrix();
  EXPECT_LT(max_abs_diff(sx * sx, pauli_x()), 1e-15);
  const ComplexMatrix rz = rz_matrix(pi / 2);
  EXPECT_LT(std::abs(rz(0, 0) - std::exp(Complex(0.0, -pi / 4))), 1e-15);
  EXPECT_LT(std::abs(rz(1, 1) - std::exp(Complex(0.0, pi / 4))), 1e-15);
}

TEST(CircuitUnitary, QubitZeroIsMostSignificant) {
  Circuit c;
  c.append(Gate::x(0));
  EXPECT_LT(max_abs_diff(circuit_unitary(c), kron(pauli_x(), ComplexMatrix::identity(2))), 1e-15);
  const ComplexMatrix cx = cnot_matrix(0, 1);
  const ComplexMatrix expected{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  EXPECT_EQ(max_abs_diff(cx, expected), 0.0);
}

TEST(CircuitUnitary, FirstGateAppliedFirst) {
  Circuit c;
  c.append(Gate::sx(0)).append(Gate::rz(0, 0.3));
  const ComplexMatrix expected = kron(rz_matrix(0.3) * sx_matrix(), ComplexMatrix::identity(2));
  EXPECT_LT(max_abs_diff(circuit_unitary(c), expected), 1e-15);
}

TEST(Targets, MsMatchesHandWrittenMatrix) {
  EXPECT_LT(max_abs_diff(ms_unitary().matrix(), ms_by_hand()), 1e-15);
  EXPECT_LT(unitarity_deviation(ms_unitary().matrix()), 1e-14);
}

TEST(Targets, ParseLabels) {
  EXPECT_EQ(parse_target_label("ms"), TargetLabel::MS);
  EXPECT_EQ(parse_target_label("cx"), TargetLabel::CX);
  EXPECT_THROW(parse_target_label("foo"), InvalidInput);
  EXPECT_THROW(TargetUnitary(TargetLabel::Custom, ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), InvalidInput);
}

TEST(PhaseAlignedDistance, IgnoresGlobalPhase) {
  const ComplexMatrix u = ms_by_hand();
  EXPECT_LT(phase_aligned_distance(std::exp(Complex(0.0, 1.234)) * u, u), 1e-7);
  EXPECT_GT(phase_aligned_distance(cnot_matrix(), u), 0.1);
}

TEST(Makhlin, KnownClasses) {
  // Identity class: G1 = 1, G2 = 3. CNOT class: G1 = 0, G2 = 1.
  const auto id = makhlin_invariants(ComplexMatrix::identity(4));
  EXPECT_LT(std::abs(id.g1 - Complex(1.0, 0.0)), 1e-12);
  EXPECT_NEAR(id.g2, 3.0, 1e-12);
  for (const ComplexMatrix &u : {cnot_matrix(), ms_by_hand()}) {
    const auto inv = makhlin_invariants(u);
    EXPECT_LT(std::abs(inv.g1), 1e-12);
    EXPECT_NEAR(inv.g2, 1.0, 1e-12);
  }
}

TEST(Makhlin, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix k1 = kron(testing::random_unitary(2, rng), testing::random_unitary(2, rng));
    const ComplexMatrix k2 = kron(testing::random_unitary(2, rng), testing::random_unitary(2, rng));
    const ComplexMatrix u = testing::random_unitary(4, rng);
    const auto a = makhlin_invariants(u);
    const auto b = makhlin_invariants(k1 * u * k2);
    EXPECT_LT(std::abs(a.g1 - b.g1), 1e-9);
    EXPECT_NEAR(a.g2, b.g2, 1e-9);
  }
}

TEST(Synthesis, MsCircuitUsesOneCnotAndIsExact) {
  const Circuit c = synthesize_ms_circuit();
  EXPECT_EQ(c.count(GateKind::CNOT), 1u);
  EXPECT_LE(phase_aligned_distance(circuit_unitary(c), ms_unitary().matrix()), 1e-9);
  for (const Gate &g : c.gates()) EXPECT_NE(g.kind(), GateKind::X);
}

TEST(Synthesis, BuiltinCircuits) {
  EXPECT_EQ(builtin_circuit(TargetLabel::MS), synthesize_ms_circuit());
  const Circuit cx = builtin_circuit(TargetLabel::CX);
  ASSERT_EQ(cx.size(), 1u);
  EXPECT_LE(phase_aligned_distance(circuit_unitary(cx), cx_unitary().matrix()), 1e-12);
  EXPECT_THROW(builtin_circuit(TargetLabel::Custom), InvalidInput);
}

TEST(Synthesis, BellStateFromZeroZero) {
  const ComplexMatrix u = circuit_unitary(synthesize_ms_circuit());
  // Column 0 is U|00>; compare to (|00> + i|11>)/sqrt(2) up to global phase.
  const double s = 1.0 / std::sqrt(2.0);
  const Complex overlap = s * u(0, 0) + Complex(0.0, -s) * u(3, 0);
  EXPECT_NEAR(std::norm(overlap), 1.0, 1e-12);
}

TEST(Targets, MsEntriesAndBellOutput) {
  const ComplexMatrix u = ms_unitary().matrix();
  EXPECT_NEAR(u(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LT(std::abs(u(0, 3) - Complex(0.0, 1.0 / std::sqrt(2.0))), 1e-15);
  EXPECT_LT(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(4)), 1e-12);
}

TEST(CircuitUnitary, EmptyAndDoubleSx) {
  EXPECT_EQ(max_abs_diff(circuit_unitary(Circuit{}), ComplexMatrix::identity(4)), 0.0);
  Circuit c;
  c.append(Gate::sx(0)).append(Gate::sx(0));
  EXPECT_LT(phase_aligned_distance(circuit_unitary(c), kron(pauli_x(), ComplexMatrix::identity(2))), 1e-7);
}

TEST(CircuitUnitary, CnotTruthTable) {
  const ComplexMatrix u = circuit_unitary(cx_circuit());
  EXPECT_EQ(u(0, 0), Complex(1.0, 0.0));  // |00> -> |00>
  EXPECT_EQ(u(3, 2), Complex(1.0, 0.0));  // |10> -> |11>
  EXPECT_EQ(u(2, 3), Complex(1.0, 0.0));  // |11> -> |10>
}

TEST(Gate, AngleStoredUnreduced) { EXPECT_EQ(Gate::rz(0, 7.5).angle(), 7.5); }

TEST(Makhlin, SynthesizedCircuitMatchesCnotClass) {
  const auto a = makhlin_invariants(circuit_unitary(synthesize_ms_circuit()));
  const auto b = makhlin_invariants(cnot_matrix());
  EXPECT_LT(std::abs(a.g1 - b.g1), 1e-9);
  EXPECT_NEAR(a.g2, b.g2, 1e-9);
  EXPECT_THROW(makhlin_invariants(ComplexMatrix(4, 4)), InvalidInput);
}

}  // namespace
}  // namespace msbench
