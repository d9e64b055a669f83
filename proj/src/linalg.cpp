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

#include "msbench/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "msbench/errors.hpp"

namespace msbench {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw InvalidInput("matrix entry count " + std::to_string(data_.size()) + " != " +
                       std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (!all_finite()) throw InvalidInput("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw InvalidInput("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_) throw InvalidInput("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw InvalidInput("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto &z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw InvalidInput("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix sum dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix difference dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scalar) {
  for (auto &z : data_) z *= scalar;
  return *this;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b); }

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) {
    throw InvalidInput("matmul dimension mismatch: " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == 0.0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == 0.0) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix &m) { return m.adjoint(); }
Complex trace(const ComplexMatrix &m) { return m.trace(); }

double frobenius_norm(const ComplexMatrix &m) {
  double s = 0.0;
  for (const auto &z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("distance dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("inner product dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::conj(a.entries()[i]) * b.entries()[i];
  return s;
}

double hermiticity_deviation(const ComplexMatrix &m) {
  if (!m.is_square()) throw InvalidInput("hermiticity of a non-square matrix");
  return frobenius_distance(m, m.adjoint());
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

double unitarity_deviation(const ComplexMatrix &m) {
  if (!m.is_square()) throw InvalidInput("unitarity of a non-square matrix");
  return frobenius_distance(matmul(m.adjoint(), m), ComplexMatrix::identity(m.rows()));
}

ComplexMatrix outer(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != 1 || b.cols() != 1) throw InvalidInput("outer product needs column vectors");
  return matmul(a, b.adjoint());
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
  if (!m.is_square()) throw InvalidInput("partial trace of a non-square matrix");
  if (dims.empty()) throw InvalidInput("partial trace needs at least one subsystem");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != m.rows() || std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end()) {
    throw InvalidInput("partial trace subsystem dimensions do not match the matrix");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw InvalidInput("invalid or repeated subsystem index");
    kept[k] = true;
  }

  std::size_t keep_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) keep_dim *= dims[s];

  // Split a full index into (kept index, traced index), both row-major over
  // their own subsystems in original order.
  auto split = [&](std::size_t index, std::size_t &kept_index, std::size_t &traced_index) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t s = dims.size(); s-- > 0;) {
      digits[s] = index % dims[s];
      index /= dims[s];
    }
    kept_index = 0;
    traced_index = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (kept[s]) kept_index = kept_index * dims[s] + digits[s];
      else traced_index = traced_index * dims[s] + digits[s];
    }
  };

  std::vector<std::size_t> kept_of(total), traced_of(total);
  for (std::size_t i = 0; i < total; ++i) split(i, kept_of[i], traced_of[i]);

  ComplexMatrix out(keep_dim, keep_dim);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c)
      if (traced_of[r] == traced_of[c]) out(kept_of[r], kept_of[c]) += m(r, c);
  return out;
}

HermitianEigen hermitian_eig(const ComplexMatrix &m) {
  if (!m.is_square()) throw InvalidInput("hermitian_eig needs a square matrix");
  const double dev = hermiticity_deviation(m);
  if (dev > kHermitianTolerance) {
    throw InvalidInput("hermitian_eig input is not Hermitian (deviation " + std::to_string(dev) + ")");
  }
  const std::size_t n = m.rows();
  Eigen::MatrixXcd h(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed", dev, 0);

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < n; ++r)
      out.vectors(r, k) = solver.eigenvectors()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
  }
  return out;
}

}  // namespace msbench
