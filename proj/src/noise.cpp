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

#include "msbench/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "msbench/errors.hpp"
#include "msbench/json_io.hpp"

namespace msbench {

namespace {

void check_probability(double p, const char *what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput(std::string(what) + " must lie in [0, 1]");
}

void check_coherence(double t1_us, double t2_us) {
  if (!(t1_us > 0.0) || !(t2_us > 0.0)) throw InvalidInput("T1 and T2 must be positive");
  if (std::isfinite(t2_us) && t2_us > 2.0 * t1_us * (1.0 + 1e-12)) {
    throw InvalidInput("unphysical coherence: T2 = " + std::to_string(t2_us) + " us exceeds 2 T1 = " +
                       std::to_string(2.0 * t1_us) + " us");
  }
  if (!std::isfinite(t2_us) && std::isfinite(t1_us)) {
    throw InvalidInput("unphysical coherence: infinite T2 with finite T1");
  }
}

bool is_identity_channel(const QuantumChannel &ch) {
  const auto &ops = ch.kraus();
  return ops.size() == 1 && frobenius_distance(ops.front(), ComplexMatrix::identity(ch.dim())) < 1e-15;
}

std::size_t single_index(GateKind kind) {
  switch (kind) {
    case GateKind::RZ: return 0;
    case GateKind::SX: return 1;
    case GateKind::X: return 2;
    case GateKind::CNOT: break;
  }
  throw InvalidInput("not a single-qubit gate kind");
}

}  // namespace

double GateDurations::duration_ns(GateKind kind) const {
  switch (kind) {
    case GateKind::RZ: return rz_ns;
    case GateKind::SX: return sx_ns;
    case GateKind::X: return x_ns.value_or(sx_ns);
    case GateKind::CNOT: return cnot_ns;
  }
  return 0.0;
}

void DeviceCalibration::validate() const {
  if (qubits.size() < 2) throw InvalidInput("calibration needs at least two qubits");
  std::set<int> ids;
  for (const auto &q : qubits) {
    if (!ids.insert(q.id).second) throw InvalidInput("duplicate qubit id " + std::to_string(q.id));
    check_coherence(q.t1_us, q.t2_us);
    check_probability(q.readout_error, "readout_error");
    if (q.prob_meas1_prep0) check_probability(*q.prob_meas1_prep0, "prob_meas1_prep0");
    if (q.prob_meas0_prep1) check_probability(*q.prob_meas0_prep1, "prob_meas0_prep1");
  }
  for (double d : {durations.rz_ns, durations.sx_ns, durations.cnot_ns, durations.x_ns.value_or(0.0)}) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidInput("gate durations must be finite and non-negative");
  }
  check_probability(p_dep, "p_dep");
  if (layout) {
    if ((*layout)[0] == (*layout)[1]) throw InvalidInput("layout qubits must differ");
    for (int id : *layout)
      if (!ids.count(id)) throw InvalidInput("layout names unknown qubit " + std::to_string(id));
  }
}

const QubitCalibration &DeviceCalibration::qubit(int id) const {
  auto it = std::find_if(qubits.begin(), qubits.end(), [id](const QubitCalibration &q) { return q.id == id; });
  if (it == qubits.end()) throw InvalidInput("no calibration for qubit " + std::to_string(id));
  return *it;
}

std::array<int, 2> DeviceCalibration::logical_qubits() const {
  if (layout) return *layout;
  if (qubits.size() < 2) throw InvalidInput("calibration needs at least two qubits");
  return {qubits[0].id, qubits[1].id};
}

DeviceCalibration ideal_calibration() {
  const double inf = std::numeric_limits<double>::infinity();
  DeviceCalibration cal;
  cal.qubits = {QubitCalibration{0, inf, inf, 0.0, {}, {}, {}, {}},
                QubitCalibration{1, inf, inf, 0.0, {}, {}, {}, {}}};
  return cal;
}

QuantumChannel damping_channel(double t1_us, double t2_us, double duration_ns) {
  check_coherence(t1_us, t2_us);
  if (!(duration_ns >= 0.0)) throw InvalidInput("duration must be non-negative");
  const double t_us = duration_ns * 1e-3;

  const double gamma = std::isfinite(t1_us) ? -std::expm1(-t_us / t1_us) : 0.0;
  double dephasing_rate = 0.0;  // 1/T_phi
  if (std::isfinite(t2_us)) dephasing_rate = 1.0 / t2_us - (std::isfinite(t1_us) ? 0.5 / t1_us : 0.0);
  dephasing_rate = std::max(0.0, dephasing_rate);
  // Off-diagonal decay exp(-t/T_phi); the exponent is 0 * inf at t = inf with
  // no dephasing, so treat that case explicitly.
  const double coherence = dephasing_rate == 0.0 ? 1.0 : std::exp(-t_us * dephasing_rate);

  std::vector<ComplexMatrix> amp = {{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}},
                                    {{0.0, std::sqrt(gamma)}, {0.0, 0.0}}};
  std::vector<ComplexMatrix> phase = {{{1.0, 0.0}, {0.0, coherence}},
                                      {{0.0, 0.0}, {0.0, std::sqrt(std::max(0.0, 1.0 - coherence * coherence))}}};

  std::vector<ComplexMatrix> ops;
  for (const auto &p : phase)
    for (const auto &a : amp) {
      ComplexMatrix k = matmul(p, a);
      if (frobenius_norm(k) > 0.0) ops.push_back(std::move(k));
    }
  return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel depolarizing_channel(double p, int arity) {
  check_probability(p, "depolarizing probability");
  if (arity != 1 && arity != 2) throw InvalidInput("depolarizing arity must be 1 or 2");
  const auto paulis = pauli_basis(static_cast<std::size_t>(arity));
  const double n = static_cast<double>(paulis.size());
  // (1 - p) rho + p I/d = (1 - p + p/d^2) rho + (p/d^2) sum_{P != I} P rho P.
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt(1.0 - p + p / n) * paulis[0]);
  if (p > 0.0)
    for (std::size_t k = 1; k < paulis.size(); ++k) ops.push_back(std::sqrt(p / n) * paulis[k]);
  return QuantumChannel::from_kraus(std::move(ops));
}

ConfusionMatrix confusion_matrix(const DeviceCalibration &calibration, std::array<int, 2> qubits) {
  std::array<std::array<std::array<double, 2>, 2>, 2> single{};
  for (int k = 0; k < 2; ++k) {
    const auto &q = calibration.qubit(qubits[static_cast<std::size_t>(k)]);
    check_probability(q.readout_error, "readout_error");
    const double flip0 = q.prob_meas1_prep0.value_or(q.readout_error);
    const double flip1 = q.prob_meas0_prep1.value_or(q.readout_error);
    single[static_cast<std::size_t>(k)] = {{{1.0 - flip0, flip0}, {flip1, 1.0 - flip1}}};
  }
  ConfusionMatrix m{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = single[0][i >> 1][j >> 1] * single[1][i & 1][j & 1];
  return m;
}

const std::vector<QuantumChannel> &NoiseModel::after(const Gate &gate) const {
  if (gate.kind() == GateKind::CNOT) return cnot_;
  return single_[single_index(gate.kind())][static_cast<std::size_t>(gate.qubit())];
}

NoiseModel build_noise_model(const DeviceCalibration &calibration) {
  calibration.validate();
  const auto logical = calibration.logical_qubits();
  NoiseModel model;

  auto damping_on = [&](int qubit, GateKind kind) {
    const auto &q = calibration.qubit(logical[static_cast<std::size_t>(qubit)]);
    return embed_single_qubit(damping_channel(q.t1_us, q.t2_us, calibration.durations.duration_ns(kind)), qubit);
  };

  for (GateKind kind : {GateKind::RZ, GateKind::SX, GateKind::X}) {
    for (int qubit = 0; qubit < 2; ++qubit) {
      auto ch = damping_on(qubit, kind);
      if (!is_identity_channel(ch)) model.single_[single_index(kind)][static_cast<std::size_t>(qubit)].push_back(ch);
    }
  }
  for (int qubit = 0; qubit < 2; ++qubit) {
    auto ch = damping_on(qubit, GateKind::CNOT);
    if (!is_identity_channel(ch)) model.cnot_.push_back(std::move(ch));
  }
  if (calibration.p_dep > 0.0) model.cnot_.push_back(depolarizing_channel(calibration.p_dep, 2));

  model.confusion_ = confusion_matrix(calibration, logical);
  model.fingerprint_ = calibration_fingerprint(calibration);
  return model;
}

}  // namespace msbench
