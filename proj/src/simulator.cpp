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

#include "msbench/simulator.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "msbench/channels.hpp"
#include "msbench/errors.hpp"

namespace msbench {

namespace {

// Rotation taking the +1 eigenvector of the basis to |0>.
ComplexMatrix basis_rotation(Pauli basis) {
  switch (basis) {
    case Pauli::X: return hadamard();
    case Pauli::Y: {
      const ComplexMatrix s_dag{{1.0, 0.0}, {0.0, -kI}};
      return matmul(hadamard(), s_dag);
    }
    case Pauli::Z: return ComplexMatrix::identity(2);
    case Pauli::I: break;
  }
  throw InvalidInput("identity is not a measurement basis");
}

int bit_of(std::size_t outcome, int qubit) { return static_cast<int>((outcome >> (1 - qubit)) & 1u); }

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli parse_pauli(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: break;
  }
  throw InvalidInput(std::string("unknown Pauli '") + c + "'");
}

MeasurementSetting::MeasurementSetting(Pauli q0, Pauli q1) : bases_{q0, q1} {
  if (q0 == Pauli::I || q1 == Pauli::I) throw InvalidInput("measurement bases must be X, Y or Z");
}

MeasurementSetting MeasurementSetting::parse(std::string_view label) {
  if (label.size() != 2) throw InvalidInput("measurement setting must have two letters: '" + std::string(label) + "'");
  return MeasurementSetting(parse_pauli(label[0]), parse_pauli(label[1]));
}

std::vector<MeasurementSetting> MeasurementSetting::all() {
  std::vector<MeasurementSetting> out;
  for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z})
    for (Pauli b : {Pauli::X, Pauli::Y, Pauli::Z}) out.emplace_back(a, b);
  return out;
}

std::string MeasurementSetting::label() const { return {to_char(bases_[0]), to_char(bases_[1])}; }

std::size_t MeasurementSetting::index() const {
  auto digit = [](Pauli p) { return static_cast<std::size_t>(p) - 1; };
  return digit(bases_[0]) * 3 + digit(bases_[1]);
}

PauliObservable PauliObservable::parse(std::string_view label) {
  if (label.size() != 2) throw InvalidInput("observable must have two letters: '" + std::string(label) + "'");
  return {{parse_pauli(label[0]), parse_pauli(label[1])}};
}

std::string PauliObservable::label() const { return {to_char(factors[0]), to_char(factors[1])}; }

bool PauliObservable::compatible_with(const MeasurementSetting &setting) const {
  for (int q = 0; q < 2; ++q) {
    const Pauli f = factors[static_cast<std::size_t>(q)];
    if (f != Pauli::I && f != setting.basis(q)) return false;
  }
  return true;
}

std::string outcome_label(std::size_t outcome) {
  if (outcome > 3) throw InvalidInput("outcome index out of range");
  return {static_cast<char>('0' + bit_of(outcome, 0)), static_cast<char>('0' + bit_of(outcome, 1))};
}

std::size_t parse_outcome(std::string_view bits) {
  if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') || (bits[1] != '0' && bits[1] != '1')) {
    throw InvalidInput("bitstring must be two characters of 0/1: '" + std::string(bits) + "'");
  }
  return static_cast<std::size_t>((bits[0] - '0') * 2 + (bits[1] - '0'));
}

void CountsRecord::validate() const {
  if (shots == 0) throw InvalidInput("counts record needs a positive shot count");
  const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total != shots) throw InvalidInput("counts do not sum to the shot count");
}

Distribution CountsRecord::frequencies() const {
  validate();
  Distribution f{};
  for (std::size_t k = 0; k < 4; ++k) f[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
  return f;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0x9e3779b97f4a7c15ULL + 1));
}

ComplexMatrix basis_state(std::string_view bits) {
  const std::size_t k = parse_outcome(bits);
  ComplexMatrix rho(4, 4);
  rho(k, k) = 1.0;
  return rho;
}

ComplexMatrix evolve(const Circuit &circuit, const ComplexMatrix &rho, const NoiseModel *noise) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidInput("evolve needs a 4x4 density matrix");
  ComplexMatrix state = rho;
  for (const auto &gate : circuit.gates()) {
    const ComplexMatrix u = gate_unitary(gate);
    state = matmul(matmul(u, state), u.adjoint());
    if (noise)
      for (const auto &ch : noise->after(gate)) state = apply_unchecked(ch, state);
  }
  return hermitian_part(state);
}

Distribution outcome_distribution(const ComplexMatrix &rho, const MeasurementSetting &setting,
                                  const ConfusionMatrix *confusion) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidInput("outcome_distribution needs a 4x4 density matrix");
  const ComplexMatrix r = kron(basis_rotation(setting.basis(0)), basis_rotation(setting.basis(1)));
  const ComplexMatrix rotated = matmul(matmul(r, rho), r.adjoint());

  Distribution p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = std::max(0.0, rotated(k, k).real());
  const double total = p[0] + p[1] + p[2] + p[3];
  for (auto &x : p) x /= total;

  if (!confusion) return p;
  Distribution observed{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) observed[j] += p[i] * (*confusion)[i][j];
  return observed;
}

Counts sample_counts(const Distribution &dist, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw InvalidInput("shots must be positive");
  Distribution p = dist;
  for (auto &x : p) {
    if (!std::isfinite(x) || x < -1e-9) throw InvalidInput("distribution has a negative or non-finite entry");
    if (x < 0.0) x = 0.0;
  }
  const double total = p[0] + p[1] + p[2] + p[3];
  if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("distribution must sum to 1");
  for (auto &x : p) x /= total;

  std::array<double, 4> cdf{};
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  std::size_t last = 3;
  while (p[last] == 0.0) --last;
  for (std::size_t k = last; k < 4; ++k) cdf[k] = 1.0;

  std::mt19937_64 engine(splitmix64(seed));
  Counts counts{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53 uniform bits in [0, 1).
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    std::size_t k = 0;
    while (u >= cdf[k]) ++k;
    ++counts[k];
  }
  return counts;
}

double expectation(const Distribution &dist, const MeasurementSetting &setting, const PauliObservable &observable) {
  if (!observable.compatible_with(setting)) {
    throw InvalidInput("observable " + observable.label() + " is not measurable in setting " + setting.label());
  }
  double e = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    int parity = 0;
    for (int q = 0; q < 2; ++q)
      if (observable.factors[static_cast<std::size_t>(q)] != Pauli::I) parity ^= bit_of(k, q);
    e += parity ? -dist[k] : dist[k];
  }
  return e;
}

double expectation(const CountsRecord &record, const PauliObservable &observable) {
  return expectation(record.frequencies(), record.setting, observable);
}

}  // namespace msbench
