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

#include <cmath>
#include <random>
#include <vector>

#include "msbench/channels.hpp"
#include "msbench/linalg.hpp"

namespace msbench::testing {

inline ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(normal(rng), normal(rng));
  return m;
}

// Modified Gram-Schmidt on the columns.
inline ComplexMatrix orthonormalize_columns(ComplexMatrix m) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) proj += std::conj(m(r, j)) * m(r, k);
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, k) -= proj * m(r, j);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) norm += std::norm(m(r, k));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, k) /= norm;
  }
  return m;
}

inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64 &rng) {
  return orthonormalize_columns(random_gaussian(dim, dim, rng));
}

// Kraus operators cut from a random Stinespring isometry.
inline std::vector<ComplexMatrix> random_kraus(std::size_t dim, std::size_t rank, std::mt19937_64 &rng) {
  const ComplexMatrix v = orthonormalize_columns(random_gaussian(dim * rank, dim, rng));
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < rank; ++k) {
    ComplexMatrix op(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) op(r, c) = v(k * dim + r, c);
    ops.push_back(op);
  }
  return ops;
}

inline QuantumChannel random_channel(std::size_t dim, std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> rank(1, dim * dim);
  return QuantumChannel::from_kraus(random_kraus(dim, rank(rng), rng));
}

inline ComplexMatrix random_density(std::size_t dim, std::mt19937_64 &rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  return rho;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

}  // namespace msbench::testing
