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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msbench/channels.hpp"
#include "msbench/circuits.hpp"
#include "msbench/noise.hpp"
#include "msbench/simulator.hpp"

namespace msbench {

enum class PrepState { Zero, One, Plus, PlusI };

/// Product input state for qubits 0 and 1.
struct PreparationLabel {
  std::array<PrepState, 2> states{PrepState::Zero, PrepState::Zero};

  /// The sixteen labels {0, 1, +, +i}^2 in lexicographic order.
  static std::vector<PreparationLabel> all();
  /// Per-qubit labels "0", "1", "+", "+i".
  static PreparationLabel parse(std::string_view q0, std::string_view q1);
  std::string label(int qubit) const;
  std::size_t index() const;

  friend bool operator==(const PreparationLabel &, const PreparationLabel &) = default;
};

/// Native-gate prefix taking |00> to the labeled state (up to phase).
Circuit preparation_circuit(const PreparationLabel &prep);
/// Ideal density matrix of the labeled state.
ComplexMatrix preparation_state(const PreparationLabel &prep);

struct Experiment {
  PreparationLabel prep;
  MeasurementSetting setting;
  Circuit circuit;  // preparation prefix followed by the circuit under test
};

/// 16 preparations x 9 settings, ordered by preparation then setting.
std::vector<Experiment> design_experiments(const Circuit &circuit);

struct TomographyRecord {
  PreparationLabel prep;
  MeasurementSetting setting{Pauli::Z, Pauli::Z};
  /// Present for shot-sampled data.
  std::optional<CountsRecord> counts;
  /// Exact probabilities, or empirical frequencies when sampled.
  Distribution probabilities{};
};

struct TomographyDataset {
  /// Circuit under test; absent when a bare channel was characterized.
  std::optional<Circuit> circuit;
  std::string process_label;
  std::string noise_fingerprint = "none";
  /// Shots per setting; absent for exact probabilities.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  /// Ordered by (prep index, setting index).
  std::vector<TomographyRecord> records;

  bool exact() const { return !shots.has_value(); }
  /// Throws unless the 16 x 9 grid is complete with uniform shot counts.
  void validate() const;
  const TomographyRecord &at(const PreparationLabel &prep, const MeasurementSetting &setting) const;
};

/// Runs every experiment; `shots` absent means exact probabilities.
/// Per-experiment seeds are derive_seed(seed, prep index, setting index).
TomographyDataset run_qpt(const Circuit &circuit, const NoiseModel *noise, std::optional<std::uint64_t> shots,
                          std::uint64_t seed);
/// QPT of a bare two-qubit channel on ideally prepared inputs.
TomographyDataset run_qpt(const QuantumChannel &process, std::optional<std::uint64_t> shots, std::uint64_t seed);

/// Least-squares state estimate for one preparation: all 16 Pauli
/// expectations, identity-containing ones averaged over the three settings
/// that measure them.
ComplexMatrix estimate_output_state(const TomographyDataset &dataset, const PreparationLabel &prep);

/// Linear inversion to a Hermitian Choi-state estimate using the dual frame
/// of the ideal input states. No positivity is enforced.
ComplexMatrix linear_inversion_choi(const TomographyDataset &dataset);

/// Linear inversion followed by project_cptp.
QuantumChannel reconstruct_channel(const TomographyDataset &dataset, const CptpProjectionOptions &options = {});

/// (Tr sqrt(sqrt(A) B sqrt(A)))^2 between the Choi states of two channels.
double process_fidelity(const QuantumChannel &a, const QuantumChannel &b);

/// (d F + 1) / (d + 1).
double average_gate_fidelity(double process_fidelity, std::size_t dim = 4);

/// Exact-probability QPT of `circuit` under `noise`, scored against the
/// circuit's own ideal unitary.
double exact_qpt_fidelity(const Circuit &circuit, const NoiseModel *noise);

}  // namespace msbench
