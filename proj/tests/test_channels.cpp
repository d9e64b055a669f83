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

#include <cmath>

#include "msbench/channels.hpp"
#include "msbench/circuits.hpp"
#include "msbench/errors.hpp"
#include "msbench/simulator.hpp"
#include "test_support.hpp"

namespace msbench {
namespace {

using testing::max_abs_diff;

ComplexMatrix kraus_apply(const std::vector<ComplexMatrix> &ops, const ComplexMatrix &rho) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const auto &k : ops) out += k * rho * k.adjoint();
  return out;
}

TEST(PauliBasis, OrderingAndOrthogonality) {
  const auto basis = pauli_basis(2);
  ASSERT_EQ(basis.size(), 16u);
  // Index 1 is I (x) X, index 4 is X (x) I.
  EXPECT_EQ(max_abs_diff(basis[1], kron(ComplexMatrix::identity(2), pauli_x())), 0.0);
  EXPECT_EQ(max_abs_diff(basis[4], kron(pauli_x(), ComplexMatrix::identity(2))), 0.0);
  for (std::size_t m = 0; m < 16; ++m)
    for (std::size_t n = 0; n < 16; ++n)
      EXPECT_NEAR(std::abs(hs_inner(basis[m], basis[n])), m == n ? 4.0 : 0.0, 1e-12);
}

TEST(Choi, IdentityChannelIsMaximallyEntangledProjector) {
  const ComplexMatrix c = choi_matrix(identity_channel(2));
  // |Phi><Phi| with |Phi> = (|00> + |11>)/sqrt(2).
  const ComplexMatrix expected{{0.5, 0, 0, 0.5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0.5}};
  EXPECT_LT(max_abs_diff(c, expected), 1e-15);
  EXPECT_NEAR(c.trace().real(), 1.0, 1e-15);
  EXPECT_LT(tp_residual(c), 1e-15);
}

TEST(Chi, UnitaryPauliChannelIsSingleEntry) {
  const ComplexMatrix chi = chi_matrix(channel_from_unitary(kron(pauli_x(), pauli_z())));
  // X (x) Z is basis index 1 * 4 + 3.
  for (std::size_t m = 0; m < 16; ++m)
    for (std::size_t n = 0; n < 16; ++n)
      EXPECT_NEAR(std::abs(chi(m, n)), (m == 7 && n == 7) ? 1.0 : 0.0, 1e-12);
}

TEST(Chi, DepolarizingIsDiagonal) {
  // rho -> (1 - p) rho + p I/2 has chi = diag(1 - 3p/4, p/4, p/4, p/4).
  const double p = 0.3;
  std::vector<ComplexMatrix> ops{std::sqrt(1.0 - 3.0 * p / 4.0) * ComplexMatrix::identity(2),
                                 std::sqrt(p / 4.0) * pauli_x(), std::sqrt(p / 4.0) * pauli_y(),
                                 std::sqrt(p / 4.0) * pauli_z()};
  const ComplexMatrix chi = chi_matrix(QuantumChannel::from_kraus(ops));
  EXPECT_NEAR(chi(0, 0).real(), 1.0 - 3.0 * p / 4.0, 1e-12);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(chi(k, k).real(), p / 4.0, 1e-12);
  EXPECT_NEAR(std::abs(chi(0, 1)), 0.0, 1e-12);
}

TEST(Channels, RoundTripsAndAgreeOnApply) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t dim = trial % 2 ? 4 : 2;
    const auto ops = testing::random_kraus(dim, 1 + static_cast<std::size_t>(trial) % 5, rng);
    const QuantumChannel k = QuantumChannel::from_kraus(ops);
    const QuantumChannel c = convert(k, Representation::Choi);
    const QuantumChannel x = convert(k, Representation::Chi);
    EXPECT_LT(max_abs_diff(choi_to_chi(c.matrix()), x.matrix()), 1e-9);
    EXPECT_LT(max_abs_diff(chi_to_choi(x.matrix()), c.matrix()), 1e-9);
    const QuantumChannel back = QuantumChannel::from_kraus(kraus_operators(x));
    EXPECT_LT(max_abs_diff(choi_matrix(back), c.matrix()), 1e-9);

    const ComplexMatrix rho = testing::random_density(dim, rng);
    const ComplexMatrix expected = kraus_apply(ops, rho);
    EXPECT_LT(max_abs_diff(apply(k, rho), expected), 1e-9);
    EXPECT_LT(max_abs_diff(apply(c, rho), expected), 1e-9);
    EXPECT_LT(max_abs_diff(apply(x, rho), expected), 1e-9);
  }
}

TEST(Channels, RejectsInvalidInputs) {
  EXPECT_THROW(QuantumChannel::from_kraus({}), InvalidInput);
  EXPECT_THROW(QuantumChannel::from_kraus({0.5 * ComplexMatrix::identity(2)}), InvalidInput);
  ComplexMatrix not_psd = choi_matrix(identity_channel(2));
  not_psd(0, 0) -= 0.6;
  not_psd(1, 1) += 0.6;
  EXPECT_THROW(QuantumChannel::from_choi(not_psd), InvalidInput);
  EXPECT_THROW(QuantumChannel::from_choi(ComplexMatrix(3, 3)), InvalidInput);
  EXPECT_THROW(QuantumChannel::from_chi(2.0 * chi_matrix(identity_channel(2))), InvalidInput);
  EXPECT_THROW(apply(identity_channel(2), ComplexMatrix::identity(4)), InvalidInput);
  EXPECT_THROW(convert(identity_channel(2), Representation::Choi).kraus(), InvalidInput);
  EXPECT_THROW(identity_channel(2).matrix(), InvalidInput);
}

TEST(Channels, ComposeAndTensor) {
  std::mt19937_64 rng(77);
  const QuantumChannel a = testing::random_channel(2, rng);
  const QuantumChannel b = testing::random_channel(2, rng);
  const ComplexMatrix rho = testing::random_density(2, rng);
  EXPECT_LT(max_abs_diff(apply(compose(a, b), rho), apply(b, apply(a, rho))), 1e-12);

  const ComplexMatrix r0 = testing::random_density(2, rng), r1 = testing::random_density(2, rng);
  EXPECT_LT(max_abs_diff(apply(tensor(a, b), kron(r0, r1)), kron(apply(a, r0), apply(b, r1))), 1e-12);
  EXPECT_LT(max_abs_diff(apply(embed_single_qubit(a, 1), kron(r0, r1)), kron(r0, apply(a, r1))), 1e-12);
}

TEST(ProjectCptp, LeavesValidChoiUnchanged) {
  std::mt19937_64 rng(42);
  const ComplexMatrix c = choi_matrix(testing::random_channel(4, rng));
  EXPECT_LT(max_abs_diff(choi_matrix(project_cptp(c)), c), 1e-9);
}

TEST(ProjectCptp, RepairsPerturbedChoiAndIsIdempotent) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix raw = choi_matrix(testing::random_channel(4, rng));
    raw += 0.02 * hermitian_part(testing::random_gaussian(16, 16, rng));
    const ComplexMatrix once = choi_matrix(project_cptp(raw));
    EXPECT_GE(min_eigenvalue(once), -1e-9);
    EXPECT_LE(tp_residual(once), 1e-6);
    const ComplexMatrix twice = choi_matrix(project_cptp(once));
    EXPECT_LT(max_abs_diff(once, twice), 1e-6);
  }
}

TEST(ProjectCptp, ReportsNonConvergence) {
  std::mt19937_64 rng(44);
  ComplexMatrix raw = choi_matrix(testing::random_channel(4, rng));
  raw += 0.3 * hermitian_part(testing::random_gaussian(16, 16, rng));
  CptpProjectionOptions options;
  options.max_iterations = 1;
  options.step_tolerance = 0.0;
  try {
    project_cptp(raw, options);
    ADD_FAILURE() << "expected ConvergenceError";
  } catch (const ConvergenceError &e) {
    EXPECT_EQ(e.iterations(), 1);
    EXPECT_GT(e.residual(), 1e-6);
  }
}

QuantumChannel fully_depolarizing() {
  std::vector<ComplexMatrix> ops;
  for (const auto &p : pauli_basis(2)) ops.push_back(0.25 * p);
  return QuantumChannel::from_kraus(ops);
}

TEST(Choi, MsIsRankOne) {
  const HermitianEigen eig = hermitian_eig(choi_matrix(channel_from_unitary(ms_unitary().matrix())));
  EXPECT_NEAR(eig.values.back(), 1.0, 1e-12);
  for (std::size_t k = 0; k + 1 < eig.values.size(); ++k) EXPECT_NEAR(eig.values[k], 0.0, 1e-12);
}

TEST(Chi, XOnFirstQubit) {
  const ComplexMatrix chi = chi_matrix(channel_from_unitary(kron(pauli_x(), ComplexMatrix::identity(2))));
  EXPECT_NEAR(chi(4, 4).real(), 1.0, 1e-12);
  EXPECT_NEAR(frobenius_norm(chi), 1.0, 1e-12);
}

TEST(Convert, FullyDepolarizingClosedForm) {
  const QuantumChannel dep = fully_depolarizing();
  EXPECT_LT(max_abs_diff(choi_matrix(dep), (1.0 / 16.0) * ComplexMatrix::identity(16)), 1e-15);
  EXPECT_LT(max_abs_diff(chi_matrix(dep), (1.0 / 16.0) * ComplexMatrix::identity(16)), 1e-15);
  std::mt19937_64 rng(3);
  EXPECT_LT(max_abs_diff(apply(dep, testing::random_density(4, rng)), 0.25 * ComplexMatrix::identity(4)), 1e-15);
}

TEST(Convert, IdentityRoundTrip) {
  const QuantumChannel id = identity_channel(4);
  for (Representation to : {Representation::Choi, Representation::Chi}) {
    const QuantumChannel back = convert(convert(id, to), Representation::Kraus);
    EXPECT_LT(max_abs_diff(choi_matrix(back), choi_matrix(id)), 1e-12);
  }
}

TEST(Apply, MsOnZeroZero) {
  const ComplexMatrix out = apply(channel_from_unitary(ms_unitary().matrix()), basis_state("00"));
  EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-12);
  EXPECT_LT(std::abs(out(3, 0) - Complex(0.0, 0.5)), 1e-12);
  EXPECT_LT(max_abs_diff(apply(identity_channel(4), out), out), 1e-15);
  ComplexMatrix bad = basis_state("00");
  bad(0, 0) = 2.0;
  EXPECT_THROW(apply(identity_channel(4), bad), InvalidInput);
}

TEST(ProjectCptp, SmallTpPreservingPerturbation) {
  const ComplexMatrix ideal = choi_matrix(channel_from_unitary(ms_unitary().matrix()));
  std::mt19937_64 rng(8);
  // A Hermitian perturbation with zero output partial trace keeps TP exactly.
  ComplexMatrix h = hermitian_part(testing::random_gaussian(16, 16, rng));
  const std::array<std::size_t, 2> dims{4, 4};
  const std::array<std::size_t, 1> keep{0};
  h -= kron(partial_trace(h, keep, dims), 0.25 * ComplexMatrix::identity(4));
  const double eps = 1e-3;
  const ComplexMatrix out = choi_matrix(project_cptp(ideal + eps * h));
  EXPECT_LT(frobenius_distance(out, ideal), 10.0 * eps * frobenius_norm(h));
  EXPECT_GE(min_eigenvalue(out), -1e-9);
  EXPECT_LE(tp_residual(out), 1e-6);
}

TEST(ProjectCptp, ClipsNegativeEigenvalue) {
  std::mt19937_64 rng(10);
  const ComplexMatrix c = choi_matrix(testing::random_channel(4, rng));
  HermitianEigen eig = hermitian_eig(c);
  eig.values[0] = -0.01;
  const ComplexMatrix raw = hermitian_apply(eig, [](double x) { return x; });
  EXPECT_LT(min_eigenvalue(raw), -0.009);
  EXPECT_GE(min_eigenvalue(choi_matrix(project_cptp(raw))), -1e-9);
}

}  // namespace
}  // namespace msbench
