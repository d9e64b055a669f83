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
#include <optional>
#include <string>
#include <vector>

#include "msbench/channels.hpp"
#include "msbench/circuits.hpp"

namespace msbench {

/// Calibration record for one physical qubit. Infinite T1/T2 disable the
/// corresponding decay; frequency and anharmonicity are carried as metadata.
struct QubitCalibration {
  int id = 0;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double readout_error = 0.0;
  /// Asymmetric overrides: P(read 1 | prepared 0) and P(read 0 | prepared 1).
  std::optional<double> prob_meas1_prep0;
  std::optional<double> prob_meas0_prep1;
  std::optional<double> frequency_ghz;
  std::optional<double> anharmonicity_ghz;

  friend bool operator==(const QubitCalibration &, const QubitCalibration &) = default;
};

struct GateDurations {
  double rz_ns = 0.0;
  double sx_ns = 35.0;
  double cnot_ns = 300.0;
  /// X pulses default to the SX duration.
  std::optional<double> x_ns;

  double duration_ns(GateKind kind) const;

  friend bool operator==(const GateDurations &, const GateDurations &) = default;
};

struct DeviceCalibration {
  std::vector<QubitCalibration> qubits;
  GateDurations durations;
  double p_dep = 0.0;
  /// Physical qubit ids used as logical qubits 0 and 1; defaults to the
  /// first two records.
  std::optional<std::array<int, 2>> layout;

  /// Throws InvalidInput on T1/T2 <= 0, T2 > 2 T1, probabilities outside
  /// [0, 1], negative durations, duplicate ids or fewer than two qubits.
  void validate() const;

  const QubitCalibration &qubit(int id) const;
  std::array<int, 2> logical_qubits() const;

  friend bool operator==(const DeviceCalibration &, const DeviceCalibration &) = default;
};

/// Two qubits with no decay, no readout error and p_dep = 0.
DeviceCalibration ideal_calibration();

/// Row-stochastic map from true to observed outcomes: entry [i][j] is
/// P(read j | true i) with outcomes indexed as |q0 q1>.
using ConfusionMatrix = std::array<std::array<double, 4>, 4>;

/// Amplitude damping with gamma = 1 - exp(-t/T1) followed by pure dephasing
/// at rate 1/T2 - 1/(2 T1), for a gate of `duration_ns` nanoseconds.
QuantumChannel damping_channel(double t1_us, double t2_us, double duration_ns);

/// rho -> (1 - p) rho + p I/d on 1 or 2 qubits, as a Pauli Kraus set.
QuantumChannel depolarizing_channel(double p, int arity);

/// Tensor product of symmetric (or overridden) per-qubit confusions for the
/// physical qubits `qubits`, the first acting as logical qubit 0.
ConfusionMatrix confusion_matrix(const DeviceCalibration &calibration, std::array<int, 2> qubits);

class NoiseModel {
 public:
  /// Channels applied after `gate`, in order, on the two-qubit register.
  const std::vector<QuantumChannel> &after(const Gate &gate) const;
  const ConfusionMatrix &confusion() const { return confusion_; }
  /// Content hash of the calibration the model was built from.
  const std::string &fingerprint() const { return fingerprint_; }

 private:
  friend NoiseModel build_noise_model(const DeviceCalibration &calibration);

  // Indexed by [single-qubit kind][logical qubit]; RZ, SX, X.
  std::array<std::array<std::vector<QuantumChannel>, 2>, 3> single_;
  std::vector<QuantumChannel> cnot_;
  ConfusionMatrix confusion_{};
  std::string fingerprint_;
};

/// Damping after every gate on the acted qubits, depolarizing after each
/// CNOT, confusion at readout. Identity channels are omitted.
NoiseModel build_noise_model(const DeviceCalibration &calibration);

struct DepolarizingFit {
  double p_dep = 0.0;
  double fidelity = 0.0;
  int evaluations = 0;
};

/// Bisects p_dep in [0, 1] until the exact-probability QPT fidelity of
/// `circuit` against its own ideal unitary is within `tolerance` of
/// `target_fidelity`. Throws UnachievableTarget if the p_dep = 0 fidelity is
/// already below the target.
DepolarizingFit fit_depolarizing(double target_fidelity, const Circuit &circuit,
                                 const DeviceCalibration &calibration, double tolerance = 1e-6);

}  // namespace msbench
