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

#include "msbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "msbench/errors.hpp"

namespace msbench {

namespace {

void require_zz(const CountsRecord &counts) {
  if (counts.setting.label() != "ZZ") {
    throw InvalidInput("success probability needs ZZ-setting counts, got " + counts.setting.label());
  }
  counts.validate();
}

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

std::string format_double(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

std::vector<double> zscores(const std::vector<double> &x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  std::vector<double> z(x.size(), 0.0);
  if (sd > 0.0)
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - mean) / sd;
  return z;
}

}  // namespace

void BenchmarkReport::validate() const {
  for (const auto &p : {process_fidelity, average_gate_fidelity, success_probability, infidelity}) {
    if (p && !in_unit_interval(*p)) throw InvalidInput("report probabilities must lie in [0, 1]");
  }
  if (success_probability.has_value() != infidelity.has_value()) {
    throw InvalidInput("success probability and infidelity come together");
  }
  if (success_probability && std::abs(*infidelity - (1.0 - *success_probability)) > 1e-12) {
    throw InvalidInput("infidelity must equal 1 - success probability");
  }
}

double success_probability(const CountsRecord &zz_counts) {
  require_zz(zz_counts);
  return static_cast<double>(zz_counts.counts[0] + zz_counts.counts[3]) / static_cast<double>(zz_counts.shots);
}

double leakage_probability(const CountsRecord &zz_counts) {
  require_zz(zz_counts);
  return static_cast<double>(zz_counts.counts[1] + zz_counts.counts[2]) / static_cast<double>(zz_counts.shots);
}

std::vector<ScalingRow> scaling_table(double epsilon, int n_max) {
  if (!in_unit_interval(epsilon)) throw InvalidInput("epsilon must lie in [0, 1]");
  if (n_max < 1) throw InvalidInput("scaling table needs n_max >= 1");
  std::vector<ScalingRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) rows.push_back({n, std::pow(1.0 - epsilon, n)});
  return rows;
}

void attach_success(BenchmarkReport &report, double success, int n_max) {
  if (!in_unit_interval(success)) throw InvalidInput("success probability must lie in [0, 1]");
  report.success_probability = success;
  report.infidelity = 1.0 - success;
  report.scaling = scaling_table(*report.infidelity, n_max);
}

std::string report_key(const BenchmarkReport &report) { return report.gate_label + "/" + report.backend; }

GateComparison compare_gates(const std::vector<BenchmarkReport> &reports) {
  if (reports.size() < 2) throw InvalidInput("comparison needs at least two reports");
  for (const auto &r : reports)
    if (!r.process_fidelity) throw InvalidInput("report " + report_key(r) + " has no process fidelity");
  GateComparison out{reports, {}};
  for (std::size_t i = 0; i < reports.size(); ++i)
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      const double d = *reports[i].process_fidelity - *reports[j].process_fidelity;
      out.deltas.push_back({report_key(reports[i]), report_key(reports[j]), d, std::abs(d)});
    }
  return out;
}

double percent_variation(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("percent variation needs finite values");
  const double mean = 0.5 * (a + b);
  if (mean == 0.0) {
    if (a == b) return 0.0;
    throw InvalidInput("percent variation undefined for values of opposite sign with zero mean");
  }
  return std::abs(a - b) / std::abs(mean) * 100.0;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("correlation needs two equal samples of size >= 2");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw InvalidInput("correlation undefined for a constant sample");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> quality_scores(const DeviceCalibration &calibration) {
  std::vector<double> t1, t2, readout;
  for (const auto &q : calibration.qubits) {
    if (!std::isfinite(q.t1_us) || !std::isfinite(q.t2_us)) {
      throw InvalidInput("quality scores need finite T1 and T2");
    }
    t1.push_back(q.t1_us);
    t2.push_back(q.t2_us);
    readout.push_back(-q.readout_error);
  }
  const auto z1 = zscores(t1), z2 = zscores(t2), zr = zscores(readout);
  std::vector<double> out(t1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (z1[i] + z2[i] + zr[i]) / 3.0;
  return out;
}

StabilityReport stability_analysis(const DeviceCalibration &a, const DeviceCalibration &b) {
  a.validate();
  b.validate();
  std::set<int> ids_a, ids_b;
  for (const auto &q : a.qubits) ids_a.insert(q.id);
  for (const auto &q : b.qubits) ids_b.insert(q.id);
  if (ids_a != ids_b) throw InvalidInput("calibration snapshots cover different qubit sets");

  // Score both snapshots over the same qubit order.
  DeviceCalibration b_aligned = b;
  for (std::size_t i = 0; i < a.qubits.size(); ++i) b_aligned.qubits[i] = b.qubit(a.qubits[i].id);
  const auto qa = quality_scores(a);
  const auto qb = quality_scores(b_aligned);

  StabilityReport report;
  report.quality_score_definition =
      "toolkit-defined: mean of within-snapshot z-scores of T1, T2 and negated readout error";
  for (std::size_t i = 0; i < a.qubits.size(); ++i) {
    const auto &x = a.qubits[i];
    const auto &y = b_aligned.qubits[i];
    report.qubits.push_back({x.id, percent_variation(x.t1_us, y.t1_us), percent_variation(x.t2_us, y.t2_us),
                             percent_variation(x.readout_error, y.readout_error), qa[i], qb[i]});
  }
  const double n = static_cast<double>(report.qubits.size());
  for (const auto &q : report.qubits) {
    report.mean_t1_percent += q.t1_percent / n;
    report.mean_t2_percent += q.t2_percent / n;
    report.mean_readout_percent += q.readout_percent / n;
  }
  report.correlation = pearson_correlation(qa, qb);
  return report;
}

std::string to_csv(const BenchmarkReport &report) {
  std::ostringstream out;
  out << "gate,backend,metric,n,value\n";
  const std::string prefix = report.gate_label + "," + report.backend + ",";
  if (report.process_fidelity) out << prefix << "process_fidelity,," << format_double(*report.process_fidelity) << "\n";
  if (report.average_gate_fidelity)
    out << prefix << "average_gate_fidelity,," << format_double(*report.average_gate_fidelity) << "\n";
  if (report.success_probability)
    out << prefix << "success_probability,," << format_double(*report.success_probability) << "\n";
  if (report.infidelity) out << prefix << "infidelity,," << format_double(*report.infidelity) << "\n";
  for (const auto &row : report.scaling) out << prefix << "scaling," << row.gates << "," << format_double(row.success) << "\n";
  return out.str();
}

std::string to_csv(const GateComparison &comparison) {
  std::ostringstream out;
  out << "first,second,fidelity_first,fidelity_second,signed_delta,delta\n";
  for (const auto &d : comparison.deltas) {
    auto fid = [&](const std::string &key) {
      for (const auto &r : comparison.reports)
        if (report_key(r) == key) return *r.process_fidelity;
      return 0.0;
    };
    out << d.first << "," << d.second << "," << format_double(fid(d.first)) << "," << format_double(fid(d.second))
        << "," << format_double(d.signed_delta) << "," << format_double(d.delta) << "\n";
  }
  return out.str();
}

std::string to_csv(const StabilityReport &report) {
  std::ostringstream out;
  out << "qubit,t1_percent,t2_percent,readout_percent,quality_a,quality_b\n";
  for (const auto &q : report.qubits) {
    out << q.id << "," << format_double(q.t1_percent) << "," << format_double(q.t2_percent) << ","
        << format_double(q.readout_percent) << "," << format_double(q.quality_a) << ","
        << format_double(q.quality_b) << "\n";
  }
  return out.str();
}

}  // namespace msbench
