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

#include "msbench/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "msbench/errors.hpp"

namespace msbench {

namespace {

constexpr std::size_t kNumPreparations = 16;
constexpr std::size_t kNumSettings = 9;

ComplexMatrix single_qubit_state(PrepState s) {
  const double r = 1.0 / std::numbers::sqrt2;
  std::vector<Complex> amp;
  switch (s) {
    case PrepState::Zero: amp = {1.0, 0.0}; break;
    case PrepState::One: amp = {0.0, 1.0}; break;
    case PrepState::Plus: amp = {r, r}; break;
    case PrepState::PlusI: amp = {r, Complex(0.0, r)}; break;
  }
  const auto v = ComplexMatrix::column(amp);
  return outer(v, v);
}

void append_prep(Circuit &c, PrepState s, int qubit) {
  constexpr double half_pi = std::numbers::pi / 2;
  switch (s) {
    case PrepState::Zero: break;
    case PrepState::One: c.append(Gate::x(qubit)); break;
    case PrepState::Plus:
    case PrepState::PlusI:
      // Hadamard as RZ(pi/2) SX RZ(pi/2); S as RZ(pi/2).
      c.append(Gate::rz(qubit, half_pi)).append(Gate::sx(qubit)).append(Gate::rz(qubit, half_pi));
      if (s == PrepState::PlusI) c.append(Gate::rz(qubit, half_pi));
      break;
  }
}

std::size_t record_index(const PreparationLabel &prep, const MeasurementSetting &setting) {
  return prep.index() * kNumSettings + setting.index();
}

template <typename OutputOf>
TomographyDataset collect(OutputOf &&output_of, const ConfusionMatrix *confusion,
                          std::optional<std::uint64_t> shots, std::uint64_t seed) {
  if (shots && *shots == 0) throw InvalidInput("shots must be positive");
  TomographyDataset ds;
  ds.shots = shots;
  ds.seed = seed;
  ds.records.reserve(kNumPreparations * kNumSettings);
  for (const auto &prep : PreparationLabel::all()) {
    const ComplexMatrix rho = output_of(prep);
    for (const auto &setting : MeasurementSetting::all()) {
      TomographyRecord rec;
      rec.prep = prep;
      rec.setting = setting;
      const Distribution p = outcome_distribution(rho, setting, confusion);
      if (shots) {
        CountsRecord counts;
        counts.setting = setting;
        counts.shots = *shots;
        counts.seed = derive_seed(seed, prep.index(), setting.index());
        counts.counts = sample_counts(p, *shots, counts.seed);
        rec.probabilities = counts.frequencies();
        rec.counts = counts;
      } else {
        rec.probabilities = p;
      }
      ds.records.push_back(std::move(rec));
    }
  }
  return ds;
}

// sqrt of a PSD matrix, clipping tiny negative eigenvalues.
ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
  return hermitian_apply(hermitian_eig(hermitian_part(m)), [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

}  // namespace

std::vector<PreparationLabel> PreparationLabel::all() {
  std::vector<PreparationLabel> out;
  const PrepState states[] = {PrepState::Zero, PrepState::One, PrepState::Plus, PrepState::PlusI};
  for (PrepState a : states)
    for (PrepState b : states) out.push_back({{a, b}});
  return out;
}

PreparationLabel PreparationLabel::parse(std::string_view q0, std::string_view q1) {
  auto one = [](std::string_view s) {
    if (s == "0") return PrepState::Zero;
    if (s == "1") return PrepState::One;
    if (s == "+") return PrepState::Plus;
    if (s == "+i") return PrepState::PlusI;
    throw InvalidInput("unknown preparation label '" + std::string(s) + "'");
  };
  return {{one(q0), one(q1)}};
}

std::string PreparationLabel::label(int qubit) const {
  switch (states[static_cast<std::size_t>(qubit)]) {
    case PrepState::Zero: return "0";
    case PrepState::One: return "1";
    case PrepState::Plus: return "+";
    case PrepState::PlusI: return "+i";
  }
  return "?";
}

std::size_t PreparationLabel::index() const {
  return static_cast<std::size_t>(states[0]) * 4 + static_cast<std::size_t>(states[1]);
}

Circuit preparation_circuit(const PreparationLabel &prep) {
  Circuit c;
  append_prep(c, prep.states[0], 0);
  append_prep(c, prep.states[1], 1);
  return c;
}

ComplexMatrix preparation_state(const PreparationLabel &prep) {
  return kron(single_qubit_state(prep.states[0]), single_qubit_state(prep.states[1]));
}

std::vector<Experiment> design_experiments(const Circuit &circuit) {
  std::vector<Experiment> out;
  out.reserve(kNumPreparations * kNumSettings);
  for (const auto &prep : PreparationLabel::all()) {
    const Circuit full = preparation_circuit(prep).then(circuit);
    for (const auto &setting : MeasurementSetting::all()) out.push_back({prep, setting, full});
  }
  return out;
}

void TomographyDataset::validate() const {
  if (records.size() != kNumPreparations * kNumSettings) {
    throw InvalidInput("tomography dataset must hold 144 records, found " + std::to_string(records.size()));
  }
  std::vector<bool> seen(records.size(), false);
  for (const auto &rec : records) {
    const std::size_t k = record_index(rec.prep, rec.setting);
    if (seen[k]) throw InvalidInput("duplicate tomography record");
    seen[k] = true;
    if (shots) {
      if (!rec.counts) throw InvalidInput("sampled dataset record is missing counts");
      if (rec.counts->shots != *shots) throw InvalidInput("tomography records must share one shot count");
      if (!(rec.counts->setting == rec.setting)) throw InvalidInput("counts setting does not match its record");
      rec.counts->validate();
    }
    double total = 0.0;
    for (double p : rec.probabilities) {
      if (!(p >= -1e-12)) throw InvalidInput("negative probability in tomography record");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("tomography record probabilities must sum to 1");
  }
}

const TomographyRecord &TomographyDataset::at(const PreparationLabel &prep, const MeasurementSetting &setting) const {
  const std::size_t k = record_index(prep, setting);
  if (k < records.size() && records[k].prep == prep && records[k].setting == setting) return records[k];
  auto it = std::find_if(records.begin(), records.end(),
                         [&](const TomographyRecord &r) { return r.prep == prep && r.setting == setting; });
  if (it == records.end()) throw InvalidInput("tomography record missing");
  return *it;
}

TomographyDataset run_qpt(const Circuit &circuit, const NoiseModel *noise, std::optional<std::uint64_t> shots,
                          std::uint64_t seed) {
  const ComplexMatrix ground = basis_state("00");
  auto ds = collect(
      [&](const PreparationLabel &prep) { return evolve(preparation_circuit(prep).then(circuit), ground, noise); },
      noise ? &noise->confusion() : nullptr, shots, seed);
  ds.circuit = circuit;
  ds.process_label = "circuit";
  ds.noise_fingerprint = noise ? noise->fingerprint() : "none";
  return ds;
}

TomographyDataset run_qpt(const QuantumChannel &process, std::optional<std::uint64_t> shots, std::uint64_t seed) {
  if (process.dim() != 4) throw InvalidInput("QPT needs a two-qubit channel");
  auto ds = collect([&](const PreparationLabel &prep) { return apply(process, preparation_state(prep)); }, nullptr,
                    shots, seed);
  ds.process_label = "channel";
  return ds;
}

ComplexMatrix estimate_output_state(const TomographyDataset &dataset, const PreparationLabel &prep) {
  const auto paulis = pauli_basis(2);
  const auto settings = MeasurementSetting::all();
  const Pauli order[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

  ComplexMatrix rho(4, 4);
  for (std::size_t m = 0; m < paulis.size(); ++m) {
    const PauliObservable obs{{order[m / 4], order[m % 4]}};
    double sum = 0.0;
    int n = 0;
    for (const auto &setting : settings) {
      if (!obs.compatible_with(setting)) continue;
      sum += expectation(dataset.at(prep, setting).probabilities, setting, obs);
      ++n;
    }
    rho += Complex(sum / n / 4.0) * paulis[m];
  }
  return rho;
}

ComplexMatrix linear_inversion_choi(const TomographyDataset &dataset) {
  dataset.validate();
  const auto preps = PreparationLabel::all();
  const std::size_t n = preps.size();

  std::vector<ComplexMatrix> inputs, outputs;
  for (const auto &prep : preps) {
    inputs.push_back(preparation_state(prep));
    outputs.push_back(estimate_output_state(dataset, prep));
  }

  // Dual frame: rho~_k = sum_j (G^-1)_{jk} rho_j with G_kj = Tr(rho_k^dagger rho_j).
  ComplexMatrix gram(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) gram(k, j) = hs_inner(inputs[k], inputs[j]);
  const auto eig = hermitian_eig(gram);
  if (eig.values.front() < 1e-10) throw InvalidInput("tomography input states are not linearly independent");
  const ComplexMatrix gram_inv = hermitian_apply(eig, [](double x) { return 1.0 / x; });

  // J = sum_k conj(rho~_k) (x) E(rho_k), and C = J / d.
  ComplexMatrix j(16, 16);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix dual(4, 4);
    for (std::size_t l = 0; l < n; ++l) dual += gram_inv(l, k) * inputs[l];
    j += kron(dual.conjugate(), outputs[k]);
  }
  j *= 0.25;
  return hermitian_part(j);
}

QuantumChannel reconstruct_channel(const TomographyDataset &dataset, const CptpProjectionOptions &options) {
  return project_cptp(linear_inversion_choi(dataset), options);
}

double process_fidelity(const QuantumChannel &a, const QuantumChannel &b) {
  if (a.dim() != b.dim()) throw InvalidInput("process fidelity needs channels of equal dimension");
  const ComplexMatrix ca = choi_matrix(a);
  const ComplexMatrix cb = choi_matrix(b);

  double f;
  auto is_pure = [](const QuantumChannel &ch) {
    return ch.representation() == Representation::Kraus && ch.kraus().size() == 1;
  };
  if (is_pure(a) || is_pure(b)) {
    // One side is |phi><phi|, so F = <phi|A|phi> = Tr(A B).
    f = hs_inner(ca, cb).real();
  } else {
    const ComplexMatrix root = psd_sqrt(ca);
    const auto eig = hermitian_eig(hermitian_part(matmul(matmul(root, cb), root)));
    double s = 0.0;
    for (double x : eig.values) s += x > 0.0 ? std::sqrt(x) : 0.0;
    f = s * s;
  }
  return std::clamp(f, 0.0, 1.0);
}

double average_gate_fidelity(double process_fidelity, std::size_t dim) {
  if (!(process_fidelity >= 0.0 && process_fidelity <= 1.0)) {
    throw InvalidInput("process fidelity must lie in [0, 1]");
  }
  const double d = static_cast<double>(dim);
  return (d * process_fidelity + 1.0) / (d + 1.0);
}

double exact_qpt_fidelity(const Circuit &circuit, const NoiseModel *noise) {
  const auto ds = run_qpt(circuit, noise, std::nullopt, 0);
  const auto reconstructed = reconstruct_channel(ds);
  return process_fidelity(reconstructed, channel_from_unitary(circuit_unitary(circuit)));
}

}  // namespace msbench
