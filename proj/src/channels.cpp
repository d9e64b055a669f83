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

#include "msbench/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msbench/circuits.hpp"
#include "msbench/errors.hpp"

namespace msbench {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t qubit_count(std::size_t dim) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

// Integer square root for Choi dimensions d^2.
std::size_t system_dim_of_choi(const ComplexMatrix &m) {
  if (!m.is_square()) throw InvalidInput("channel matrix must be square");
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (d * d != m.rows() || !is_power_of_two(d)) {
    throw InvalidInput("channel matrix dimension must be d^2 for a qubit system of dimension d");
  }
  return d;
}

// vec(K) with entry index i*d + o holding K(o, i), so that
// (I (x) K) sum_i |i>|i> = vec(K).
std::vector<Complex> vec_operator(const ComplexMatrix &k) {
  const std::size_t d = k.rows();
  std::vector<Complex> v(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t o = 0; o < d; ++o) v[i * d + o] = k(o, i);
  return v;
}

ComplexMatrix unvec_operator(const ComplexMatrix &vectors, std::size_t column, std::size_t d, double scale) {
  ComplexMatrix k(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t o = 0; o < d; ++o) k(o, i) = scale * vectors(i * d + o, column);
  return k;
}

// Columns vec(P_m)/sqrt(d).
ComplexMatrix pauli_change_of_basis(std::size_t d) {
  const auto paulis = pauli_basis(qubit_count(d));
  ComplexMatrix w(d * d, d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t m = 0; m < paulis.size(); ++m) {
    const auto v = vec_operator(paulis[m]);
    for (std::size_t r = 0; r < v.size(); ++r) w(r, m) = norm * v[r];
  }
  return w;
}

ComplexMatrix choi_from_kraus(const std::vector<ComplexMatrix> &ops) {
  const std::size_t d = ops.front().rows();
  ComplexMatrix c(d * d, d * d);
  for (const auto &k : ops) {
    const auto v = vec_operator(k);
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (v[r] == 0.0) continue;
      for (std::size_t s = 0; s < v.size(); ++s) c(r, s) += v[r] * std::conj(v[s]);
    }
  }
  c *= 1.0 / static_cast<double>(d);
  return c;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix &choi) {
  const std::size_t d = system_dim_of_choi(choi);
  const auto eig = hermitian_eig(choi);
  std::vector<ComplexMatrix> ops;
  const double cutoff = 1e-14;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    const double lambda = eig.values[k] * static_cast<double>(d);
    if (lambda <= cutoff) continue;
    ops.push_back(unvec_operator(eig.vectors, k, d, std::sqrt(lambda)));
  }
  if (ops.empty()) throw InvalidInput("Choi matrix has no positive spectrum");
  return ops;
}

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix> &ops, const ComplexMatrix &rho) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const auto &k : ops) out += matmul(matmul(k, rho), k.adjoint());
  return out;
}

// E(rho) = d Tr_in[(rho^T (x) I) C].
ComplexMatrix apply_choi(const ComplexMatrix &choi, const ComplexMatrix &rho) {
  const std::size_t d = rho.rows();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // Block (i, j) of C is E(|i><j|) / d.
      const Complex w = rho(i, j);
      if (w == 0.0) continue;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) out(a, b) += w * choi(i * d + a, j * d + b);
    }
  out *= static_cast<double>(d);
  return out;
}

ComplexMatrix apply_chi(const ComplexMatrix &chi, const ComplexMatrix &rho) {
  const auto paulis = pauli_basis(qubit_count(rho.rows()));
  ComplexMatrix out(rho.rows(), rho.cols());
  std::vector<ComplexMatrix> left;
  left.reserve(paulis.size());
  for (const auto &p : paulis) left.push_back(matmul(p, rho));
  for (std::size_t m = 0; m < paulis.size(); ++m)
    for (std::size_t n = 0; n < paulis.size(); ++n) {
      const Complex w = chi(m, n);
      if (std::abs(w) < 1e-300) continue;
      out += w * matmul(left[m], paulis[n].adjoint());
    }
  return out;
}

ComplexMatrix tp_projection(const ComplexMatrix &j, std::size_t d) {
  // Orthogonal projection onto {J : Tr_out J = I}: subtract (Tr_out J - I) (x) I / d.
  const std::size_t dims[] = {d, d};
  const std::size_t keep[] = {0};
  ComplexMatrix excess = partial_trace(j, keep, dims) - ComplexMatrix::identity(d);
  excess *= 1.0 / static_cast<double>(d);
  return j - kron(excess, ComplexMatrix::identity(d));
}

ComplexMatrix psd_projection(const ComplexMatrix &m) {
  const auto eig = hermitian_eig(hermitian_part(m));
  return hermitian_apply(eig, [](double x) { return x > 0.0 ? x : 0.0; });
}

}  // namespace

std::string to_string(Representation rep) {
  switch (rep) {
    case Representation::Kraus: return "kraus";
    case Representation::Choi: return "choi";
    case Representation::Chi: return "chi";
  }
  return "?";
}

Representation parse_representation(std::string_view text) {
  if (text == "kraus") return Representation::Kraus;
  if (text == "choi") return Representation::Choi;
  if (text == "chi") return Representation::Chi;
  throw InvalidInput("unknown channel representation '" + std::string(text) + "'");
}

QuantumChannel::QuantumChannel(Representation rep, std::size_t dim, std::vector<ComplexMatrix> kraus,
                               std::optional<ComplexMatrix> matrix)
    : rep_(rep), dim_(dim), kraus_(std::move(kraus)), matrix_(std::move(matrix)) {}

QuantumChannel QuantumChannel::from_kraus(std::vector<ComplexMatrix> operators) {
  if (operators.empty()) throw InvalidInput("Kraus set must not be empty");
  const std::size_t d = operators.front().rows();
  if (!is_power_of_two(d) || d < 2) throw InvalidInput("Kraus operators must act on qubits");
  ComplexMatrix sum(d, d);
  for (const auto &k : operators) {
    if (k.rows() != d || k.cols() != d) throw InvalidInput("Kraus operators must share a square shape");
    sum += matmul(k.adjoint(), k);
  }
  const double dev = frobenius_distance(sum, ComplexMatrix::identity(d));
  if (dev > kKrausCompletenessTolerance) {
    throw InvalidInput("Kraus set is not trace preserving (deviation " + std::to_string(dev) + ")");
  }
  return QuantumChannel(Representation::Kraus, d, std::move(operators), std::nullopt);
}

QuantumChannel QuantumChannel::from_choi(ComplexMatrix choi) {
  const std::size_t d = system_dim_of_choi(choi);
  if (hermiticity_deviation(choi) > kChoiHermitianTolerance) throw InvalidInput("Choi matrix is not Hermitian");
  const double lo = min_eigenvalue(choi);
  if (lo < -kChoiPsdTolerance) {
    throw InvalidInput("Choi matrix is not positive semidefinite (min eigenvalue " + std::to_string(lo) + ")");
  }
  const double tp = tp_residual(choi);
  if (tp > kChoiTpTolerance) {
    throw InvalidInput("Choi matrix is not trace preserving (residual " + std::to_string(tp) + ")");
  }
  return QuantumChannel(Representation::Choi, d, {}, std::move(choi));
}

QuantumChannel QuantumChannel::from_chi(ComplexMatrix chi) {
  const std::size_t d = system_dim_of_choi(chi);
  if (hermiticity_deviation(chi) > kChoiHermitianTolerance) throw InvalidInput("chi matrix is not Hermitian");
  if (std::abs(chi.trace() - 1.0) > kChiTraceTolerance) throw InvalidInput("chi matrix must have unit trace");
  return QuantumChannel(Representation::Chi, d, {}, std::move(chi));
}

const std::vector<ComplexMatrix> &QuantumChannel::kraus() const {
  if (rep_ != Representation::Kraus) throw InvalidInput("channel is not in Kraus form");
  return kraus_;
}

const ComplexMatrix &QuantumChannel::matrix() const {
  if (!matrix_) throw InvalidInput("Kraus channel has no matrix form; convert it first");
  return *matrix_;
}

std::vector<ComplexMatrix> pauli_basis(std::size_t num_qubits) {
  if (num_qubits == 0) throw InvalidInput("Pauli basis needs at least one qubit");
  const ComplexMatrix single[] = {ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()};
  std::vector<ComplexMatrix> out(single, single + 4);
  for (std::size_t q = 1; q < num_qubits; ++q) {
    std::vector<ComplexMatrix> next;
    next.reserve(out.size() * 4);
    for (const auto &p : out)
      for (const auto &s : single) next.push_back(kron(p, s));
    out = std::move(next);
  }
  return out;
}

QuantumChannel identity_channel(std::size_t dim) {
  return QuantumChannel::from_kraus({ComplexMatrix::identity(dim)});
}

QuantumChannel channel_from_unitary(const ComplexMatrix &u) {
  if (!u.is_square() || unitarity_deviation(u) > 1e-8) throw InvalidInput("channel_from_unitary needs a unitary");
  return QuantumChannel::from_kraus({u});
}

ComplexMatrix choi_to_chi(const ComplexMatrix &choi) {
  const std::size_t d = system_dim_of_choi(choi);
  const auto w = pauli_change_of_basis(d);
  return matmul(matmul(w.adjoint(), choi), w);
}

ComplexMatrix chi_to_choi(const ComplexMatrix &chi) {
  const std::size_t d = system_dim_of_choi(chi);
  const auto w = pauli_change_of_basis(d);
  return matmul(matmul(w, chi), w.adjoint());
}

ComplexMatrix choi_matrix(const QuantumChannel &channel) {
  switch (channel.representation()) {
    case Representation::Kraus: return choi_from_kraus(channel.kraus());
    case Representation::Choi: return channel.matrix();
    case Representation::Chi: return chi_to_choi(channel.matrix());
  }
  throw InvalidInput("unknown representation");
}

ComplexMatrix chi_matrix(const QuantumChannel &channel) {
  if (channel.representation() == Representation::Chi) return channel.matrix();
  return choi_to_chi(choi_matrix(channel));
}

std::vector<ComplexMatrix> kraus_operators(const QuantumChannel &channel) {
  if (channel.representation() == Representation::Kraus) return channel.kraus();
  return kraus_from_choi(choi_matrix(channel));
}

QuantumChannel convert(const QuantumChannel &channel, Representation to) {
  if (channel.representation() == to) return channel;
  switch (to) {
    case Representation::Kraus: return QuantumChannel::from_kraus(kraus_operators(channel));
    case Representation::Choi: return QuantumChannel::from_choi(choi_matrix(channel));
    case Representation::Chi: return QuantumChannel::from_chi(chi_matrix(channel));
  }
  throw InvalidInput("unknown representation");
}

void validate_density_matrix(const ComplexMatrix &rho) {
  if (!rho.is_square()) throw InvalidInput("density matrix must be square");
  if (hermiticity_deviation(rho) > 1e-8) throw InvalidInput("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-8) throw InvalidInput("density matrix must have unit trace");
  if (min_eigenvalue(rho) < -1e-8) throw InvalidInput("density matrix is not positive semidefinite");
}

ComplexMatrix apply_unchecked(const QuantumChannel &channel, const ComplexMatrix &rho) {
  if (rho.rows() != channel.dim() || rho.cols() != channel.dim()) {
    throw InvalidInput("state dimension does not match the channel");
  }
  switch (channel.representation()) {
    case Representation::Kraus: return apply_kraus(channel.kraus(), rho);
    case Representation::Choi: return apply_choi(channel.matrix(), rho);
    case Representation::Chi: return apply_chi(channel.matrix(), rho);
  }
  throw InvalidInput("unknown representation");
}

ComplexMatrix apply(const QuantumChannel &channel, const ComplexMatrix &rho) {
  validate_density_matrix(rho);
  return apply_unchecked(channel, rho);
}

QuantumChannel compose(const QuantumChannel &first, const QuantumChannel &second) {
  if (first.dim() != second.dim()) throw InvalidInput("cannot compose channels of different dimension");
  const auto a = kraus_operators(first);
  const auto b = kraus_operators(second);
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const auto &kb : b)
    for (const auto &ka : a) ops.push_back(matmul(kb, ka));
  return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel tensor(const QuantumChannel &a, const QuantumChannel &b) {
  const auto ka = kraus_operators(a);
  const auto kb = kraus_operators(b);
  std::vector<ComplexMatrix> ops;
  ops.reserve(ka.size() * kb.size());
  for (const auto &x : ka)
    for (const auto &y : kb) ops.push_back(kron(x, y));
  return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel embed_single_qubit(const QuantumChannel &channel, int qubit) {
  if (channel.dim() != 2) throw InvalidInput("embed_single_qubit needs a single-qubit channel");
  if (qubit != 0 && qubit != 1) throw InvalidInput("qubit index out of range");
  const auto id = identity_channel(2);
  return qubit == 0 ? tensor(channel, id) : tensor(id, channel);
}

double tp_residual(const ComplexMatrix &choi) {
  const std::size_t d = system_dim_of_choi(choi);
  const std::size_t dims[] = {d, d};
  const std::size_t keep[] = {0};
  ComplexMatrix reduced = partial_trace(choi, keep, dims);
  reduced *= static_cast<double>(d);
  return frobenius_distance(reduced, ComplexMatrix::identity(d));
}

double min_eigenvalue(const ComplexMatrix &hermitian) { return hermitian_eig(hermitian).values.front(); }

QuantumChannel project_cptp(const ComplexMatrix &raw_choi, const CptpProjectionOptions &options) {
  const std::size_t d = system_dim_of_choi(raw_choi);
  if (hermiticity_deviation(raw_choi) > 1e-6) throw InvalidInput("project_cptp input must be Hermitian");
  const double scale = static_cast<double>(d);

  // Work with the unnormalized Choi matrix J = d C whose TP set is Tr_out J = I.
  ComplexMatrix x = hermitian_part(raw_choi);
  x *= scale;
  ComplexMatrix tp_increment(d * d, d * d);
  ComplexMatrix psd_increment(d * d, d * d);

  double step = std::numeric_limits<double>::infinity();
  int iteration = 0;
  while (iteration < options.max_iterations) {
    ++iteration;
    const ComplexMatrix y = tp_projection(x + tp_increment, d);
    tp_increment = x + tp_increment - y;
    ComplexMatrix next = psd_projection(y + psd_increment);
    psd_increment = y + psd_increment - next;
    step = frobenius_distance(next, x);
    x = std::move(next);
    if (step < options.step_tolerance) break;
  }

  ComplexMatrix choi = x;
  choi *= 1.0 / scale;
  const double residual = tp_residual(choi);
  if (step >= options.step_tolerance) {
    throw ConvergenceError("CPTP projection did not converge", residual, iteration);
  }
  if (residual > kChoiTpTolerance) {
    throw ConvergenceError("CPTP projection stalled away from the TP set", residual, iteration);
  }
  return QuantumChannel::from_choi(std::move(choi));
}

}  // namespace msbench
