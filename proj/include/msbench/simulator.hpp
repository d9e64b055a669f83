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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msbench/circuits.hpp"
#include "msbench/linalg.hpp"
#include "msbench/noise.hpp"

namespace msbench {

enum class Pauli { I, X, Y, Z };

char to_char(Pauli p);
Pauli parse_pauli(char c);

/// Measurement bases for qubits 0 and 1; each is X, Y or Z.
class MeasurementSetting {
 public:
  MeasurementSetting(Pauli q0, Pauli q1);
  /// Two-letter label such as "XZ".
  static MeasurementSetting parse(std::string_view label);
  /// The nine settings {X, Y, Z}^2 in lexicographic order.
  static std::vector<MeasurementSetting> all();

  Pauli basis(int qubit) const { return bases_[static_cast<std::size_t>(qubit)]; }
  std::string label() const;
  /// Position in all().
  std::size_t index() const;

  friend bool operator==(const MeasurementSetting &, const MeasurementSetting &) = default;

 private:
  std::array<Pauli, 2> bases_;
};

/// Two-qubit Pauli observable, identity factors allowed ("ZI", "XY").
struct PauliObservable {
  std::array<Pauli, 2> factors;

  static PauliObservable parse(std::string_view label);
  std::string label() const;
  /// Whether the non-identity factors match the setting.
  bool compatible_with(const MeasurementSetting &setting) const;
};

/// Outcome probabilities indexed by the bitstring q0 q1 read as binary.
using Distribution = std::array<double, 4>;
using Counts = std::array<std::uint64_t, 4>;

/// "00", "01", "10" or "11".
std::string outcome_label(std::size_t outcome);
std::size_t parse_outcome(std::string_view bits);

struct CountsRecord {
  MeasurementSetting setting{Pauli::Z, Pauli::Z};
  Counts counts{};
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  /// Throws unless shots > 0 and the counts sum to shots.
  void validate() const;
  Distribution frequencies() const;
};

/// Identifier of the sampling algorithm; recorded in every output file.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64-seed/inverse-cdf/v1";

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);
/// Per-experiment seed from a master seed and two indices.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

/// |bits><bits| for a two-character bitstring.
ComplexMatrix basis_state(std::string_view bits);

/// Applies each gate's unitary followed by its noise channels, in order.
ComplexMatrix evolve(const Circuit &circuit, const ComplexMatrix &rho, const NoiseModel *noise = nullptr);

/// Probabilities after rotating each qubit into its measurement basis and
/// applying the optional readout confusion.
Distribution outcome_distribution(const ComplexMatrix &rho, const MeasurementSetting &setting,
                                  const ConfusionMatrix *confusion = nullptr);

/// Multinomial draw of `shots` outcomes. Deterministic for a given seed and
/// kRngAlgorithm. Entries below -1e-9 are rejected; smaller negatives are
/// clipped to zero before renormalizing.
Counts sample_counts(const Distribution &dist, std::uint64_t shots, std::uint64_t seed);

/// Parity-weighted expectation; identity factors marginalize their bit.
double expectation(const Distribution &dist, const MeasurementSetting &setting,
                   const PauliObservable &observable);
double expectation(const CountsRecord &record, const PauliObservable &observable);

}  // namespace msbench
