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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msbench/linalg.hpp"

// Conventions, for a channel E on a d-dimensional system:
//  * Choi matrices are "Choi states": C = (1/d) sum_ij |i><j| (x) E(|i><j|),
//    input factor first, so Tr C = 1 and trace preservation reads
//    d * Tr_out(C) = I.
//  * Process (chi) matrices expand E(rho) = sum_mn chi_mn P_m rho P_n^dagger
//    over unnormalized Pauli strings, which gives Tr chi = 1. Equivalently chi
//    is the Choi state written in the orthonormal basis vec(P_m)/sqrt(d).
//  * Pauli strings are indexed base 4 with qubit 0 most significant and the
//    digit order I, X, Y, Z.

namespace msbench {

enum class Representation { Kraus, Choi, Chi };

std::string to_string(Representation rep);
Representation parse_representation(std::string_view text);

inline constexpr double kKrausCompletenessTolerance = 1e-8;
inline constexpr double kChoiHermitianTolerance = 1e-8;
inline constexpr double kChoiPsdTolerance = 1e-8;
inline constexpr double kChoiTpTolerance = 1e-6;
inline constexpr double kChiTraceTolerance = 1e-8;

class QuantumChannel {
 public:
  /// Rejects sets violating sum K^dagger K = I beyond 1e-8.
  static QuantumChannel from_kraus(std::vector<ComplexMatrix> operators);
  /// Rejects matrices that are not Hermitian, PSD and TP Choi states.
  static QuantumChannel from_choi(ComplexMatrix choi);
  /// Rejects non-Hermitian chi or Tr chi != 1.
  static QuantumChannel from_chi(ComplexMatrix chi);

  Representation representation() const { return rep_; }
  /// Dimension d of the system the channel acts on.
  std::size_t dim() const { return dim_; }

  /// Kraus operators; throws unless the representation is Kraus.
  const std::vector<ComplexMatrix> &kraus() const;
  /// Choi or chi matrix; throws for a Kraus channel.
  const ComplexMatrix &matrix() const;

 private:
  QuantumChannel(Representation rep, std::size_t dim, std::vector<ComplexMatrix> kraus,
                 std::optional<ComplexMatrix> matrix);

  Representation rep_;
  std::size_t dim_;
  std::vector<ComplexMatrix> kraus_;
  std::optional<ComplexMatrix> matrix_;
};

/// Pauli strings on `num_qubits` qubits in base-4 index order.
std::vector<ComplexMatrix> pauli_basis(std::size_t num_qubits);

QuantumChannel identity_channel(std::size_t dim);
/// Kraus channel with the single operator `u`; rejects non-unitary input.
QuantumChannel channel_from_unitary(const ComplexMatrix &u);

QuantumChannel convert(const QuantumChannel &channel, Representation to);

ComplexMatrix choi_matrix(const QuantumChannel &channel);
ComplexMatrix chi_matrix(const QuantumChannel &channel);
std::vector<ComplexMatrix> kraus_operators(const QuantumChannel &channel);

/// Choi state <-> chi change of basis.
ComplexMatrix choi_to_chi(const ComplexMatrix &choi);
ComplexMatrix chi_to_choi(const ComplexMatrix &chi);

/// Checks rho is a density matrix (Hermitian, PSD to -1e-8, unit trace to
/// 1e-8); throws InvalidInput otherwise.
void validate_density_matrix(const ComplexMatrix &rho);

/// Applies the channel to a validated density matrix.
ComplexMatrix apply(const QuantumChannel &channel, const ComplexMatrix &rho);
/// Same map without validating rho.
ComplexMatrix apply_unchecked(const QuantumChannel &channel, const ComplexMatrix &rho);

/// `second` after `first`.
QuantumChannel compose(const QuantumChannel &first, const QuantumChannel &second);
/// a (x) b; a acts on the more significant factor.
QuantumChannel tensor(const QuantumChannel &a, const QuantumChannel &b);
/// Places a single-qubit channel on `qubit` of a two-qubit register.
QuantumChannel embed_single_qubit(const QuantumChannel &channel, int qubit);

/// ||d Tr_out(C) - I||_F for a Choi state C.
double tp_residual(const ComplexMatrix &choi);
double min_eigenvalue(const ComplexMatrix &hermitian);

struct CptpProjectionOptions {
  double step_tolerance = 1e-8;
  int max_iterations = 10000;
};

/// Projects a Hermitian Choi-state estimate onto the CPTP set by Dykstra's
/// alternating projections between the trace-preserving affine subspace and
/// the PSD cone (eigenvalue clipping at 0). Iterates until successive PSD
/// iterates move less than the step tolerance in Frobenius norm. Throws
/// ConvergenceError carrying the residual if the iteration budget runs out or
/// the final point misses the TP tolerance.
QuantumChannel project_cptp(const ComplexMatrix &raw_choi, const CptpProjectionOptions &options = {});

}  // namespace msbench
