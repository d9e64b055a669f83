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

#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "msbench/circuits.hpp"
#include "msbench/errors.hpp"
#include "msbench/json_io.hpp"
#include "msbench/metrics.hpp"
#include "msbench/noise.hpp"
#include "msbench/simulator.hpp"
#include "msbench/tomography.hpp"

namespace msbench::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedCalibration {
  std::string path;
  DeviceCalibration calibration;
  std::string fingerprint;
};

// Everything needed to write a run manifest.
struct RunContext {
  std::string command;
  std::vector<std::string> arguments;
  Json flags = Json::object();
  std::optional<std::uint64_t> seed;
  std::map<std::string, LoadedCalibration> calibrations;
  std::vector<std::string> outputs;
};

fs::path resolve_out(const std::string &path) {
  fs::path p(path);
  if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir && p.is_relative()) return fs::path(dir) / p;
  return p;
}

// result.json -> result.dataset.json
fs::path sibling(const fs::path &out, const std::string &suffix) {
  fs::path p = out;
  p.replace_extension(suffix);
  return p;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

bool is_builtin(const std::string &name) { return name == "ms" || name == "cx"; }

Circuit load_circuit(const std::string &source) {
  if (is_builtin(source)) return builtin_circuit(parse_target_label(source));
  const Json j = read_json_file(source);
  // Accept a bare gate array or the output of `decompose`.
  return circuit_from_json(j.is_object() ? j.at("circuit") : j);
}

std::string circuit_label(const std::string &source) { return is_builtin(source) ? source : fs::path(source).stem().string(); }

LoadedCalibration load_calibration(const std::string &path) {
  LoadedCalibration loaded{path, calibration_from_json(read_json_file(path)), ""};
  loaded.fingerprint = calibration_fingerprint(loaded.calibration);
  return loaded;
}

void write_manifest(const RunContext &ctx, const fs::path &out_path) {
  Json calibrations = Json::object();
  for (const auto &[flag, cal] : ctx.calibrations)
    calibrations[flag] = {{"path", cal.path}, {"fingerprint", cal.fingerprint}};
  Json manifest{{"command", ctx.command},
                {"arguments", ctx.arguments},
                {"flags", ctx.flags},
                {"rng_algorithm", kRngAlgorithm},
                {"calibrations", std::move(calibrations)},
                {"toolkit_version", MSBENCH_VERSION},
                {"outputs", ctx.outputs}};
  manifest["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
  write_json_file(out_path, manifest);
}

int cmd_decompose(RunContext &ctx, const std::string &target, const std::string &out, std::ostream &os) {
  const TargetLabel label = parse_target_label(target);
  const Circuit circuit = builtin_circuit(label);
  const TargetUnitary unitary = target_unitary(label);
  const double distance = phase_aligned_distance(circuit_unitary(circuit), unitary.matrix());
  const bool ok = distance <= 1e-9;
  const auto inv = makhlin_invariants(circuit_unitary(circuit));

  Json result{{"target", target},
              {"circuit", to_json(circuit)},
              {"gate_count", circuit.size()},
              {"cnot_count", circuit.count(GateKind::CNOT)},
              {"phase_aligned_distance", distance},
              {"makhlin_invariants", {{"g1", {inv.g1.real(), inv.g1.imag()}}, {"g2", inv.g2}}},
              {"verified", ok}};
  os << "target " << target << ": " << circuit.size() << " gates, " << circuit.count(GateKind::CNOT)
     << " CNOT, phase-aligned distance " << std::scientific << std::setprecision(3) << distance
     << (ok ? " (ok)" : " (FAILED)") << "\n";
  if (!out.empty()) {
    const fs::path path = resolve_out(out);
    write_json_file(path, result);
    ctx.outputs.push_back(path.string());
    write_manifest(ctx, sibling(path, ".manifest.json"));
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_state(RunContext &ctx, const std::string &circuit_arg, const std::string &input, std::uint64_t shots,
              std::uint64_t seed, const std::string &noise_path, const std::string &out, std::ostream &os) {
  if (input.size() != 2 || input.find_first_not_of("01") != std::string::npos) {
    throw UsageError("--input must be a two-qubit bitstring such as 00, got '" + input + "'");
  }
  if (shots == 0) throw UsageError("--shots must be positive");
  const Circuit circuit = load_circuit(circuit_arg);

  std::optional<NoiseModel> noise;
  if (!noise_path.empty()) {
    auto cal = load_calibration(noise_path);
    noise = build_noise_model(cal.calibration);
    ctx.calibrations["--noise"] = std::move(cal);
  }

  Circuit prep;
  for (int q = 0; q < 2; ++q)
    if (input[static_cast<std::size_t>(q)] == '1') prep.append(Gate::x(q));
  const ComplexMatrix rho = evolve(prep.then(circuit), basis_state("00"), noise ? &*noise : nullptr);
  const MeasurementSetting zz(Pauli::Z, Pauli::Z);
  const Distribution dist = outcome_distribution(rho, zz, noise ? &noise->confusion() : nullptr);

  CountsRecord counts;
  counts.setting = zz;
  counts.shots = shots;
  counts.seed = seed;
  counts.counts = sample_counts(dist, shots, seed);
  counts.validate();

  BenchmarkReport report;
  report.gate_label = circuit_label(circuit_arg);
  report.backend = "shots";
  report.shots = shots;
  report.seed = seed;
  report.noise_fingerprint = noise ? noise->fingerprint() : "none";
  report.timestamp = utc_timestamp();
  attach_success(report, success_probability(counts));
  report.validate();

  Json probs = Json::object();
  for (std::size_t k = 0; k < 4; ++k) probs[outcome_label(k)] = dist[k];
  Json result{{"input", input},
              {"counts", to_json(counts)},
              {"exact_probabilities", std::move(probs)},
              {"success_probability", *report.success_probability},
              {"leakage", leakage_probability(counts)},
              {"infidelity", *report.infidelity},
              {"rng_algorithm", kRngAlgorithm},
              {"report", to_json(report)}};

  os << "state experiment " << report.gate_label << " on |" << input << ">, " << shots << " shots, seed " << seed
     << "\n";
  for (std::size_t k = 0; k < 4; ++k) os << "  " << outcome_label(k) << ": " << counts.counts[k] << "\n";
  os << std::fixed << std::setprecision(4) << "  P_succ = " << *report.success_probability
     << "  leakage = " << leakage_probability(counts) << "  epsilon = " << *report.infidelity << "\n";

  if (!out.empty()) {
    const fs::path path = resolve_out(out);
    write_json_file(path, result);
    write_text_file(sibling(path, ".csv"), to_csv(report));
    ctx.outputs = {path.string(), sibling(path, ".csv").string()};
    write_manifest(ctx, sibling(path, ".manifest.json"));
  }
  return kExitOk;
}

int finish_qpt(RunContext &ctx, const TomographyDataset &ds, const std::string &gate_label, TargetLabel target,
               const std::string &out, std::ostream &os) {
  const QuantumChannel channel = reconstruct_channel(ds);
  const QuantumChannel ideal = channel_from_unitary(target_unitary(target).matrix());
  const double fidelity = process_fidelity(channel, ideal);
  const ComplexMatrix choi = choi_matrix(channel);
  const bool ok = min_eigenvalue(choi) >= -1e-9 && tp_residual(choi) <= 1e-6;

  BenchmarkReport report;
  report.gate_label = gate_label;
  report.backend = ds.exact() ? "exact" : "shots";
  report.shots = ds.shots;
  report.seed = ds.seed;
  report.noise_fingerprint = ds.noise_fingerprint;
  report.process_fidelity = fidelity;
  report.average_gate_fidelity = average_gate_fidelity(fidelity);
  report.timestamp = utc_timestamp();
  report.validate();

  os << "QPT " << gate_label << " vs " << to_string(target) << " ("
     << (ds.exact() ? std::string("exact probabilities") : std::to_string(*ds.shots) + " shots/setting") << ")\n"
     << std::fixed << std::setprecision(6) << "  process fidelity      " << fidelity << "\n"
     << "  average gate fidelity " << *report.average_gate_fidelity << "\n"
     << "  CPTP check            " << (ok ? "ok" : "FAILED") << "\n";

  if (!out.empty()) {
    const fs::path path = resolve_out(out);
    Json result{{"target", to_string(target)},
                {"process_fidelity", fidelity},
                {"average_gate_fidelity", *report.average_gate_fidelity},
                {"cptp_verified", ok},
                {"channel", to_json(QuantumChannel::from_choi(choi))},
                {"chi", to_json(choi_to_chi(choi))},
                {"report", to_json(report)}};
    write_json_file(path, result);
    write_text_file(sibling(path, ".csv"), to_csv(report));
    ctx.outputs.insert(ctx.outputs.begin(), {path.string(), sibling(path, ".csv").string()});
    write_manifest(ctx, sibling(path, ".manifest.json"));
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_qpt(RunContext &ctx, const std::string &circuit_arg, std::optional<std::uint64_t> shots, std::uint64_t seed,
            const std::string &noise_path, const std::string &target, const std::string &out, std::ostream &os) {
  const Circuit circuit = load_circuit(circuit_arg);
  const std::string target_name = !target.empty() ? target : (is_builtin(circuit_arg) ? circuit_arg : "ms");
  const TargetLabel label = parse_target_label(target_name);

  std::optional<NoiseModel> noise;
  if (!noise_path.empty()) {
    auto cal = load_calibration(noise_path);
    noise = build_noise_model(cal.calibration);
    ctx.calibrations["--noise"] = std::move(cal);
  }
  const TomographyDataset ds = run_qpt(circuit, noise ? &*noise : nullptr, shots, seed);
  if (!out.empty()) {
    const fs::path dataset_path = sibling(resolve_out(out), ".dataset.json");
    write_json_file(dataset_path, to_json(ds));
    ctx.outputs.push_back(dataset_path.string());
  }
  return finish_qpt(ctx, ds, circuit_label(circuit_arg), label, out, os);
}

int cmd_reconstruct(RunContext &ctx, const std::string &dataset_path, const std::string &target,
                    const std::string &out, std::ostream &os) {
  const TomographyDataset ds = dataset_from_json(read_json_file(dataset_path));
  const TargetLabel label = parse_target_label(target.empty() ? "ms" : target);
  return finish_qpt(ctx, ds, fs::path(dataset_path).stem().string(), label, out, os);
}

int cmd_fit_noise(RunContext &ctx, double target_fidelity, const std::string &circuit_arg,
                  const std::string &calib_path, const std::string &out, std::ostream &os) {
  const Circuit circuit = load_circuit(circuit_arg);
  DeviceCalibration cal = ideal_calibration();
  if (!calib_path.empty()) {
    auto loaded = load_calibration(calib_path);
    cal = loaded.calibration;
    ctx.calibrations["--calib"] = std::move(loaded);
  }
  const DepolarizingFit fit = fit_depolarizing(target_fidelity, circuit, cal);
  cal.p_dep = fit.p_dep;

  os << "fitted p_dep = " << std::setprecision(8) << fit.p_dep << " (exact-QPT fidelity " << std::setprecision(6)
     << fit.fidelity << ", target " << target_fidelity << ", " << fit.evaluations << " evaluations)\n";
  if (!out.empty()) {
    const fs::path path = resolve_out(out);
    Json result = to_json(cal);
    result["fit"] = {{"target_fidelity", target_fidelity},
                     {"achieved_fidelity", fit.fidelity},
                     {"evaluations", fit.evaluations},
                     {"circuit", circuit_label(circuit_arg)}};
    write_json_file(path, result);
    ctx.outputs.push_back(path.string());
    write_manifest(ctx, sibling(path, ".manifest.json"));
  }
  return kExitOk;
}

int cmd_stability(RunContext &ctx, const std::string &path_a, const std::string &path_b, const std::string &out,
                  std::ostream &os) {
  auto a = load_calibration(path_a);
  auto b = load_calibration(path_b);
  const StabilityReport report = stability_analysis(a.calibration, b.calibration);
  ctx.calibrations["--calib-a"] = std::move(a);
  ctx.calibrations["--calib-b"] = std::move(b);

  os << std::fixed << std::setprecision(2) << "mean variation: T1 " << report.mean_t1_percent << "%, T2 "
     << report.mean_t2_percent << "%, readout " << report.mean_readout_percent << "%\n"
     << std::setprecision(4) << "quality correlation r = " << report.correlation << " ("
     << report.quality_score_definition << ")\n";
  if (!out.empty()) {
    const fs::path path = resolve_out(out);
    write_json_file(path, to_json(report));
    write_text_file(sibling(path, ".csv"), to_csv(report));
    ctx.outputs = {path.string(), sibling(path, ".csv").string()};
    write_manifest(ctx, sibling(path, ".manifest.json"));
  }
  return kExitOk;
}

int cmd_replay(const std::string &manifest_path, std::ostream &os, std::ostream &es) {
  const Json manifest = read_json_file(manifest_path);
  for (const auto &[flag, entry] : manifest.at("calibrations").items()) {
    const auto current = load_calibration(entry.at("path").get<std::string>());
    if (current.fingerprint != entry.at("fingerprint").get<std::string>()) {
      es << "error: calibration " << entry.at("path").get<std::string>() << " (" << flag
         << ") changed since the manifest was written\n";
      return kExitFailure;
    }
  }
  const auto args = manifest.at("arguments").get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "replay") throw UsageError("a manifest cannot replay another replay");
  return run(args, os, es);
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Molmer-Sorensen gate benchmarking toolkit"};
  app.name("msbench");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MSBENCH_VERSION));

  auto *decompose = app.add_subcommand("decompose", "Print and verify a native-basis circuit for a target gate");
  std::string target = "ms", out_path;
  decompose->add_option("--target", target, "Target gate")->check(CLI::IsMember({"ms", "cx"}));
  decompose->add_option("--out", out_path, "Output JSON path");

  auto *state = app.add_subcommand("state", "Direct |input> -> ZZ state measurement");
  std::string circuit_arg = "ms", input = "00", noise_path;
  std::uint64_t shots = 13000, seed = kDefaultSeed;
  state->add_option("--circuit", circuit_arg, "Builtin circuit (ms, cx) or circuit JSON path");
  state->add_option("--input", input, "Input bitstring q0q1");
  state->add_option("--shots", shots, "Number of shots");
  state->add_option("--seed", seed, "RNG seed");
  state->add_option("--noise", noise_path, "Calibration JSON for the noise model");
  state->add_option("--out", out_path, "Output JSON path");

  auto *qpt = app.add_subcommand("qpt", "Two-qubit process tomography");
  std::uint64_t qpt_shots = 4000;
  bool exact = false;
  std::string qpt_target;
  qpt->add_option("--circuit", circuit_arg, "Builtin circuit (ms, cx) or circuit JSON path");
  auto *shots_opt = qpt->add_option("--shots", qpt_shots, "Shots per measurement setting");
  auto *exact_flag = qpt->add_flag("--exact", exact, "Use exact probabilities instead of sampling");
  shots_opt->excludes(exact_flag);
  qpt->add_option("--seed", seed, "RNG seed");
  qpt->add_option("--noise", noise_path, "Calibration JSON for the noise model");
  qpt->add_option("--target", qpt_target, "Ideal gate to score against")->check(CLI::IsMember({"ms", "cx"}));
  qpt->add_option("--out", out_path, "Output JSON path");

  auto *reconstruct = app.add_subcommand("reconstruct", "Reconstruct a channel from a saved QPT dataset");
  std::string dataset_path;
  reconstruct->add_option("--dataset", dataset_path, "Dataset JSON written by qpt")->required();
  reconstruct->add_option("--target", qpt_target, "Ideal gate to score against")->check(CLI::IsMember({"ms", "cx"}));
  reconstruct->add_option("--out", out_path, "Output JSON path");

  auto *fit = app.add_subcommand("fit-noise", "Fit the two-qubit depolarizing probability to a fidelity");
  double target_fidelity = 1.0;
  std::string calib_path;
  fit->add_option("--target-fidelity", target_fidelity, "Process fidelity to reach")->required();
  fit->add_option("--circuit", circuit_arg, "Builtin circuit (ms, cx) or circuit JSON path");
  fit->add_option("--calib", calib_path, "Starting calibration JSON (default: ideal qubits)");
  fit->add_option("--out", out_path, "Output calibration JSON path");

  auto *stability = app.add_subcommand("stability", "Compare two calibration snapshots");
  std::string calib_a, calib_b;
  stability->add_option("--calib-a", calib_a, "First calibration JSON")->required();
  stability->add_option("--calib-b", calib_b, "Second calibration JSON")->required();
  stability->add_option("--out", out_path, "Output JSON path");

  auto *replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_path;
  replay->add_option("--manifest", manifest_path, "Manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion &) {
    out << MSBENCH_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  RunContext ctx;
  ctx.arguments = args;
  try {
    if (decompose->parsed()) {
      ctx.command = "decompose";
      ctx.flags = {{"target", target}, {"out", out_path}};
      return cmd_decompose(ctx, target, out_path, out);
    }
    if (state->parsed()) {
      ctx.command = "state";
      ctx.seed = seed;
      ctx.flags = {{"circuit", circuit_arg}, {"input", input}, {"shots", shots},
                   {"seed", seed},            {"noise", noise_path}, {"out", out_path}};
      return cmd_state(ctx, circuit_arg, input, shots, seed, noise_path, out_path, out);
    }
    if (qpt->parsed()) {
      ctx.command = "qpt";
      ctx.seed = seed;
      if (!exact && qpt_shots == 0) throw UsageError("--shots must be positive");
      ctx.flags = {{"circuit", circuit_arg}, {"shots", exact ? Json(nullptr) : Json(qpt_shots)},
                   {"exact", exact},          {"seed", seed},
                   {"noise", noise_path},     {"target", qpt_target},
                   {"out", out_path}};
      return cmd_qpt(ctx, circuit_arg, exact ? std::nullopt : std::optional<std::uint64_t>(qpt_shots), seed,
                     noise_path, qpt_target, out_path, out);
    }
    if (reconstruct->parsed()) {
      ctx.command = "reconstruct";
      ctx.flags = {{"dataset", dataset_path}, {"target", qpt_target}, {"out", out_path}};
      return cmd_reconstruct(ctx, dataset_path, qpt_target, out_path, out);
    }
    if (fit->parsed()) {
      ctx.command = "fit-noise";
      ctx.flags = {{"target_fidelity", target_fidelity}, {"circuit", circuit_arg}, {"calib", calib_path},
                   {"out", out_path}};
      return cmd_fit_noise(ctx, target_fidelity, circuit_arg, calib_path, out_path, out);
    }
    if (stability->parsed()) {
      ctx.command = "stability";
      ctx.flags = {{"calib_a", calib_a}, {"calib_b", calib_b}, {"out", out_path}};
      return cmd_stability(ctx, calib_a, calib_b, out_path, out);
    }
    if (replay->parsed()) return cmd_replay(manifest_path, out, err);
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnachievableTarget &e) {
    err << "error: unachievable target: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace msbench::cli
