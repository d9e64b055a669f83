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

#include "msbench/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "msbench/errors.hpp"

namespace msbench {

namespace {

const Json &field(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json &j, const char *key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw InvalidInput(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> get_optional(const Json &j, const char *key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<T>(j, key);
}

// null or absent means unbounded.
double get_time(const Json &j, const char *key) {
  // Explicit null means the qubit does not decay; a missing field is an error.
  if (j.is_object() && j.contains(key) && j.at(key).is_null()) return std::numeric_limits<double>::infinity();
  return get<double>(j, key);
}

Json time_to_json(double t) { return std::isfinite(t) ? Json(t) : Json(nullptr); }

Json distribution_to_json(const Distribution &p) {
  Json out = Json::object();
  for (std::size_t k = 0; k < 4; ++k) out[outcome_label(k)] = p[k];
  return out;
}

Distribution distribution_from_json(const Json &j) {
  Distribution p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = get<double>(j, outcome_label(k).c_str());
  return p;
}

}  // namespace

Json to_json(const ComplexMatrix &m) {
  Json data = Json::array();
  for (const auto &z : m.entries()) data.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json &j) {
  const auto rows = get<std::size_t>(j, "rows");
  const auto cols = get<std::size_t>(j, "cols");
  const auto &data = field(j, "data");
  if (!data.is_array()) throw InvalidInput("matrix data must be an array");
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const auto &z : data) {
    if (!z.is_array() || z.size() != 2) throw InvalidInput("complex entries must be [re, im] pairs");
    entries.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

Json to_json(const Circuit &c) {
  Json out = Json::array();
  for (const auto &g : c.gates()) {
    switch (g.kind()) {
      case GateKind::RZ: out.push_back({{"kind", "rz"}, {"qubit", g.qubit()}, {"angle", g.angle()}}); break;
      case GateKind::SX: out.push_back({{"kind", "sx"}, {"qubit", g.qubit()}}); break;
      case GateKind::X: out.push_back({{"kind", "x"}, {"qubit", g.qubit()}}); break;
      case GateKind::CNOT: out.push_back({{"kind", "cnot"}, {"control", g.control()}, {"target", g.target()}}); break;
    }
  }
  return out;
}

Circuit circuit_from_json(const Json &j) {
  if (!j.is_array()) throw InvalidInput("circuit JSON must be an array of gates");
  Circuit c;
  for (const auto &g : j) {
    const auto kind = get<std::string>(g, "kind");
    if (kind == "rz") c.append(Gate::rz(get<int>(g, "qubit"), get<double>(g, "angle")));
    else if (kind == "sx") c.append(Gate::sx(get<int>(g, "qubit")));
    else if (kind == "x") c.append(Gate::x(get<int>(g, "qubit")));
    else if (kind == "cnot") c.append(Gate::cnot(get<int>(g, "control"), get<int>(g, "target")));
    else throw InvalidInput("unknown gate kind '" + kind + "'");
  }
  return c;
}

Json to_json(const QuantumChannel &ch) {
  Json out{{"representation", to_string(ch.representation())}, {"dim", ch.dim()}};
  switch (ch.representation()) {
    case Representation::Kraus: {
      Json ops = Json::array();
      for (const auto &k : ch.kraus()) ops.push_back(to_json(k));
      out["operators"] = std::move(ops);
      break;
    }
    case Representation::Choi:
      out["normalization"] = "trace-one";
      out["matrix"] = to_json(ch.matrix());
      break;
    case Representation::Chi:
      out["basis"] = "pauli";
      out["normalization"] = "trace-one";
      out["matrix"] = to_json(ch.matrix());
      break;
  }
  return out;
}

QuantumChannel channel_from_json(const Json &j) {
  const auto rep = parse_representation(get<std::string>(j, "representation"));
  switch (rep) {
    case Representation::Kraus: {
      std::vector<ComplexMatrix> ops;
      for (const auto &k : field(j, "operators")) ops.push_back(matrix_from_json(k));
      return QuantumChannel::from_kraus(std::move(ops));
    }
    case Representation::Choi: {
      const auto norm = get_optional<std::string>(j, "normalization").value_or("trace-one");
      if (norm != "trace-one") throw InvalidInput("unsupported Choi normalization '" + norm + "'");
      return QuantumChannel::from_choi(matrix_from_json(field(j, "matrix")));
    }
    case Representation::Chi: return QuantumChannel::from_chi(matrix_from_json(field(j, "matrix")));
  }
  throw InvalidInput("unknown representation");
}

Json to_json(const DeviceCalibration &cal) {
  Json qubits = Json::array();
  for (const auto &q : cal.qubits) {
    Json r{{"id", q.id}, {"t1_us", time_to_json(q.t1_us)}, {"t2_us", time_to_json(q.t2_us)},
           {"readout_error", q.readout_error}};
    if (q.prob_meas1_prep0) r["prob_meas1_prep0"] = *q.prob_meas1_prep0;
    if (q.prob_meas0_prep1) r["prob_meas0_prep1"] = *q.prob_meas0_prep1;
    if (q.frequency_ghz) r["frequency_ghz"] = *q.frequency_ghz;
    if (q.anharmonicity_ghz) r["anharmonicity_ghz"] = *q.anharmonicity_ghz;
    qubits.push_back(std::move(r));
  }
  Json durations{{"rz", cal.durations.rz_ns}, {"sx", cal.durations.sx_ns}, {"cnot", cal.durations.cnot_ns}};
  if (cal.durations.x_ns) durations["x"] = *cal.durations.x_ns;
  Json out{{"qubits", std::move(qubits)}, {"durations_ns", std::move(durations)}, {"p_dep", cal.p_dep}};
  if (cal.layout) out["layout"] = *cal.layout;
  return out;
}

DeviceCalibration calibration_from_json(const Json &j) {
  DeviceCalibration cal;
  const auto &qubits = field(j, "qubits");
  if (!qubits.is_array()) throw InvalidInput("calibration 'qubits' must be an array");
  for (const auto &q : qubits) {
    QubitCalibration r;
    r.id = get<int>(q, "id");
    r.t1_us = get_time(q, "t1_us");
    r.t2_us = get_time(q, "t2_us");
    r.readout_error = get<double>(q, "readout_error");
    r.prob_meas1_prep0 = get_optional<double>(q, "prob_meas1_prep0");
    r.prob_meas0_prep1 = get_optional<double>(q, "prob_meas0_prep1");
    r.frequency_ghz = get_optional<double>(q, "frequency_ghz");
    r.anharmonicity_ghz = get_optional<double>(q, "anharmonicity_ghz");
    cal.qubits.push_back(r);
  }
  if (j.contains("durations_ns")) {
    const auto &d = j.at("durations_ns");
    cal.durations.rz_ns = get_optional<double>(d, "rz").value_or(cal.durations.rz_ns);
    cal.durations.sx_ns = get_optional<double>(d, "sx").value_or(cal.durations.sx_ns);
    cal.durations.cnot_ns = get_optional<double>(d, "cnot").value_or(cal.durations.cnot_ns);
    cal.durations.x_ns = get_optional<double>(d, "x");
  }
  cal.p_dep = get_optional<double>(j, "p_dep").value_or(0.0);
  if (auto layout = get_optional<std::array<int, 2>>(j, "layout")) cal.layout = *layout;
  cal.validate();
  return cal;
}

std::string fingerprint_text(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string calibration_fingerprint(const DeviceCalibration &cal) { return fingerprint_text(to_json(cal).dump()); }

Json to_json(const CountsRecord &rec) {
  Json counts = Json::object();
  for (std::size_t k = 0; k < 4; ++k) counts[outcome_label(k)] = rec.counts[k];
  return {{"setting", rec.setting.label()}, {"shots", rec.shots}, {"seed", rec.seed}, {"counts", std::move(counts)}};
}

CountsRecord counts_from_json(const Json &j) {
  CountsRecord rec;
  rec.setting = MeasurementSetting::parse(get<std::string>(j, "setting"));
  rec.shots = get<std::uint64_t>(j, "shots");
  rec.seed = get_optional<std::uint64_t>(j, "seed").value_or(0);
  const auto &counts = field(j, "counts");
  for (std::size_t k = 0; k < 4; ++k) rec.counts[k] = get_optional<std::uint64_t>(counts, outcome_label(k).c_str()).value_or(0);
  rec.validate();
  return rec;
}

Json to_json(const TomographyDataset &ds) {
  Json records = Json::array();
  for (const auto &rec : ds.records) {
    Json r = rec.counts ? to_json(*rec.counts) : Json{{"setting", rec.setting.label()}};
    r["preparation"] = {rec.prep.label(0), rec.prep.label(1)};
    if (!rec.counts) r["probabilities"] = distribution_to_json(rec.probabilities);
    records.push_back(std::move(r));
  }
  Json out{{"format", kDatasetFormat},
           {"process", ds.process_label},
           {"noise_fingerprint", ds.noise_fingerprint},
           {"mode", ds.exact() ? "exact" : "shots"},
           {"seed", ds.seed},
           {"rng_algorithm", kRngAlgorithm},
           {"records", std::move(records)}};
  if (ds.circuit) out["circuit"] = to_json(*ds.circuit);
  if (ds.shots) out["shots"] = *ds.shots;
  return out;
}

TomographyDataset dataset_from_json(const Json &j) {
  const auto format = get<std::string>(j, "format");
  if (format != kDatasetFormat) throw InvalidInput("unsupported dataset format '" + format + "'");
  TomographyDataset ds;
  ds.process_label = get_optional<std::string>(j, "process").value_or("circuit");
  ds.noise_fingerprint = get_optional<std::string>(j, "noise_fingerprint").value_or("none");
  ds.seed = get_optional<std::uint64_t>(j, "seed").value_or(0);
  if (j.contains("circuit")) ds.circuit = circuit_from_json(j.at("circuit"));
  const auto mode = get<std::string>(j, "mode");
  if (mode == "shots") ds.shots = get<std::uint64_t>(j, "shots");
  else if (mode != "exact") throw InvalidInput("dataset mode must be 'exact' or 'shots'");

  for (const auto &r : field(j, "records")) {
    TomographyRecord rec;
    const auto &prep = field(r, "preparation");
    if (!prep.is_array() || prep.size() != 2) throw InvalidInput("preparation must be a pair of labels");
    rec.prep = PreparationLabel::parse(prep[0].get<std::string>(), prep[1].get<std::string>());
    rec.setting = MeasurementSetting::parse(get<std::string>(r, "setting"));
    if (ds.shots) {
      rec.counts = counts_from_json(r);
      rec.probabilities = rec.counts->frequencies();
    } else {
      rec.probabilities = distribution_from_json(field(r, "probabilities"));
    }
    ds.records.push_back(std::move(rec));
  }
  std::sort(ds.records.begin(), ds.records.end(), [](const TomographyRecord &a, const TomographyRecord &b) {
    return a.prep.index() * 9 + a.setting.index() < b.prep.index() * 9 + b.setting.index();
  });
  ds.validate();
  return ds;
}

Json to_json(const BenchmarkReport &report) {
  Json out{{"gate", report.gate_label},
           {"backend", {{"kind", report.backend}, {"seed", report.seed}, {"noise_fingerprint", report.noise_fingerprint}}},
           {"timestamp", report.timestamp}};
  if (report.shots) out["backend"]["shots"] = *report.shots;
  if (report.shots) out["backend"]["rng_algorithm"] = kRngAlgorithm;
  if (report.process_fidelity) out["process_fidelity"] = *report.process_fidelity;
  if (report.average_gate_fidelity) out["average_gate_fidelity"] = *report.average_gate_fidelity;
  if (report.success_probability) out["success_probability"] = *report.success_probability;
  if (report.infidelity) out["infidelity"] = *report.infidelity;
  if (!report.scaling.empty()) {
    Json rows = Json::array();
    for (const auto &row : report.scaling) rows.push_back({{"n", row.gates}, {"success", row.success}});
    out["scaling"] = std::move(rows);
  }
  return out;
}

Json to_json(const GateComparison &comparison) {
  Json reports = Json::array();
  for (const auto &r : comparison.reports) reports.push_back(to_json(r));
  Json deltas = Json::array();
  for (const auto &d : comparison.deltas)
    deltas.push_back({{"first", d.first}, {"second", d.second}, {"signed_delta", d.signed_delta}, {"delta", d.delta}});
  return {{"reports", std::move(reports)}, {"deltas", std::move(deltas)}};
}

Json to_json(const StabilityReport &report) {
  Json qubits = Json::array();
  for (const auto &q : report.qubits) {
    qubits.push_back({{"id", q.id},
                      {"t1_percent", q.t1_percent},
                      {"t2_percent", q.t2_percent},
                      {"readout_percent", q.readout_percent},
                      {"quality_a", q.quality_a},
                      {"quality_b", q.quality_b}});
  }
  return {{"qubits", std::move(qubits)},
          {"mean_percent_variation",
           {{"t1", report.mean_t1_percent}, {"t2", report.mean_t2_percent}, {"readout", report.mean_readout_percent}}},
          {"quality_correlation", report.correlation},
          {"quality_score_definition", report.quality_score_definition}};
}

Json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw InvalidInput("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path &path, const Json &j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::filesystem::path &path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace msbench
