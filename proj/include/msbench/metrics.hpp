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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msbench/noise.hpp"
#include "msbench/simulator.hpp"

namespace msbench {

struct ScalingRow {
  int gates = 0;
  double success = 1.0;  // (1 - epsilon)^gates
};

struct BenchmarkReport {
  std::string gate_label;
  /// "exact" or "shots".
  std::string backend = "exact";
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  std::string noise_fingerprint = "none";
  std::optional<double> process_fidelity;
  std::optional<double> average_gate_fidelity;
  std::optional<double> success_probability;
  /// 1 - success_probability.
  std::optional<double> infidelity;
  std::vector<ScalingRow> scaling;
  std::string timestamp;

  /// Probabilities in [0, 1] and infidelity consistent with success.
  void validate() const;
};

/// (p00 + p11) from ZZ counts; rejects any other setting.
double success_probability(const CountsRecord &zz_counts);
/// (p01 + p10) from ZZ counts.
double leakage_probability(const CountsRecord &zz_counts);

/// (n, (1 - epsilon)^n) for n = 1..n_max.
std::vector<ScalingRow> scaling_table(double epsilon, int n_max);

/// Sets success probability, infidelity and a scaling table of `n_max` rows.
void attach_success(BenchmarkReport &report, double success, int n_max = 20);

struct FidelityDelta {
  std::string first;
  std::string second;
  double signed_delta = 0.0;  // first - second
  double delta = 0.0;         // |first - second|
};

struct GateComparison {
  std::vector<BenchmarkReport> reports;
  std::vector<FidelityDelta> deltas;  // every pair i < j
};

/// Needs at least two reports that all carry a process fidelity.
GateComparison compare_gates(const std::vector<BenchmarkReport> &reports);
/// "<gate>/<backend>" label used in comparison tables.
std::string report_key(const BenchmarkReport &report);

struct QubitVariation {
  int id = 0;
  double t1_percent = 0.0;
  double t2_percent = 0.0;
  double readout_percent = 0.0;
  double quality_a = 0.0;
  double quality_b = 0.0;
};

struct StabilityReport {
  std::vector<QubitVariation> qubits;
  double mean_t1_percent = 0.0;
  double mean_t2_percent = 0.0;
  double mean_readout_percent = 0.0;
  /// Pearson correlation of the per-qubit quality scores of the two snapshots.
  double correlation = 0.0;
  std::string quality_score_definition;
};

/// |a - b| / ((a + b) / 2) * 100; 0 when both are 0.
double percent_variation(double a, double b);
/// Throws when either sample has zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);
/// Mean of the z-scored T1, T2 and negated readout error of each qubit.
std::vector<double> quality_scores(const DeviceCalibration &calibration);

/// Compares two snapshots of the same qubit set; rejects mismatched ids.
StabilityReport stability_analysis(const DeviceCalibration &a, const DeviceCalibration &b);

std::string to_csv(const BenchmarkReport &report);
std::string to_csv(const GateComparison &comparison);
std::string to_csv(const StabilityReport &report);

}  // namespace msbench
