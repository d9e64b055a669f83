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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace msbench {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense row-major complex matrix. Every matrix in the toolkit is at most
/// 16x16, so there are no sparse paths and no expression templates.
class ComplexMatrix {
 public:
  /// Zero matrix of the given shape.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major `entries`; all entries must be finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Nested row lists, e.g. {{1, 0}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// Column vector.
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;

  ComplexMatrix &operator+=(const ComplexMatrix &other);
  ComplexMatrix &operator-=(const ComplexMatrix &other);
  ComplexMatrix &operator*=(Complex scalar);

  bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &m);
Complex trace(const ComplexMatrix &m);

double frobenius_norm(const ComplexMatrix &m);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// Hilbert-Schmidt inner product Tr(a^dagger b).
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);

/// ||m - m^dagger||_F.
double hermiticity_deviation(const ComplexMatrix &m);
/// (m + m^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix &m);
/// ||m^dagger m - I||_F.
double unitarity_deviation(const ComplexMatrix &m);

/// Outer product |a><b| of two column vectors.
ComplexMatrix outer(const ComplexMatrix &a, const ComplexMatrix &b);

/// Trace out every subsystem not listed in `keep`. `dims` lists the
/// subsystem dimensions with the first entry the most significant factor.
ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

inline constexpr double kHermitianTolerance = 1e-8;

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
/// solving; deviations beyond `kHermitianTolerance` are rejected.
HermitianEigen hermitian_eig(const ComplexMatrix &m);

/// V f(Lambda) V^dagger for a Hermitian input.
template <typename F>
ComplexMatrix hermitian_apply(const HermitianEigen &eig, F &&f) {
  const std::size_t n = eig.vectors.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = eig.vectors(r, k) * fk;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(eig.vectors(c, k));
    }
  }
  return out;
}

}  // namespace msbench
