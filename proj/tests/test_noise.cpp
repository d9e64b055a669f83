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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "msbench/errors.hpp"
#include "msbench/noise.hpp"
#include "msbench/tomography.hpp"
#include "test_support.hpp"

namespace msbench {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DeviceCalibration pair_calibration(double t1, double t2, double readout) {
  DeviceCalibration cal;
  cal.qubits = {QubitCalibration{0, t1, t2, readout, {}, {}, {}, {}},
                QubitCalibration{1, t1, t2, readout, {}, {}, {}, {}}};
  return cal;
}

TEST(Damping, PopulationAndCoherenceDecay) {
  const double t1 = 50.0, t2 = 40.0, t_ns = 2000.0;
  const QuantumChannel ch = damping_channel(t1, t2, t_ns);
  const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
  const ComplexMatrix one{{0.0, 0.0}, {0.0, 1.0}};
  const double t = t_ns * 1e-3;
  EXPECT_NEAR(apply(ch, one)(1, 1).real(), std::exp(-t / t1), 1e-12);
  EXPECT_NEAR(std::abs(apply(ch, plus)(0, 1)), 0.5 * std::exp(-t / t2), 1e-12);
}

TEST(Damping, InfiniteTimesAreIdentity) {
  const QuantumChannel ch = damping_channel(kInf, kInf, 300.0);
  std::mt19937_64 rng(1);
  const ComplexMatrix rho = testing::random_density(2, rng);
  EXPECT_LT(testing::max_abs_diff(apply(ch, rho), rho), 1e-15);
}

TEST(Damping, RejectsUnphysicalCoherence) {
  EXPECT_THROW(damping_channel(50.0, 101.0, 10.0), InvalidInput);
  EXPECT_THROW(damping_channel(50.0, kInf, 10.0), InvalidInput);
  EXPECT_THROW(damping_channel(-1.0, 1.0, 10.0), InvalidInput);
  EXPECT_NO_THROW(damping_channel(50.0, 100.0, 10.0));
}

TEST(Depolarizing, MixesTowardIdentity) {
  std::mt19937_64 rng(2);
  const ComplexMatrix rho = testing::random_density(4, rng);
  const double p = 0.2;
  const ComplexMatrix expected = (1.0 - p) * rho + (p / 4.0) * ComplexMatrix::identity(4);
  EXPECT_LT(testing::max_abs_diff(apply(depolarizing_channel(p, 2), rho), expected), 1e-12);
  EXPECT_THROW(depolarizing_channel(1.5, 2), InvalidInput);
  EXPECT_THROW(depolarizing_channel(0.1, 3), InvalidInput);
}

TEST(Confusion, RowStochasticTensorProduct) {
  DeviceCalibration cal = pair_calibration(100.0, 100.0, 0.02);
  cal.qubits[1].prob_meas0_prep1 = 0.05;
  const ConfusionMatrix m = confusion_matrix(cal, {0, 1});
  for (const auto &row : m) {
    double sum = 0.0;
    for (double v : row) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-15);
  }
  EXPECT_NEAR(m[0][0], 0.98 * 0.98, 1e-15);
  EXPECT_NEAR(m[1][0], 0.98 * 0.05, 1e-15);   // true 01 read as 00
  EXPECT_NEAR(m[3][0], 0.02 * 0.05, 1e-15);   // true 11 read as 00
}

TEST(Calibration, Validation) {
  EXPECT_NO_THROW(pair_calibration(100.0, 150.0, 0.01).validate());
  EXPECT_THROW(pair_calibration(100.0, 250.0, 0.01).validate(), InvalidInput);
  EXPECT_THROW(pair_calibration(100.0, 100.0, 1.2).validate(), InvalidInput);
  DeviceCalibration dup = pair_calibration(100.0, 100.0, 0.01);
  dup.qubits[1].id = 0;
  EXPECT_THROW(dup.validate(), InvalidInput);
  DeviceCalibration bad_layout = pair_calibration(100.0, 100.0, 0.01);
  bad_layout.layout = std::array<int, 2>{0, 7};
  EXPECT_THROW(bad_layout.validate(), InvalidInput);
}

TEST(NoiseModel, IdealCalibrationAddsNothing) {
  const NoiseModel model = build_noise_model(ideal_calibration());
  EXPECT_TRUE(model.after(Gate::cnot(0, 1)).empty());
  EXPECT_TRUE(model.after(Gate::sx(0)).empty());
  EXPECT_EQ(model.confusion()[2][2], 1.0);
}

TEST(NoiseModel, DepolarizingOnlyAfterCnot) {
  DeviceCalibration cal = ideal_calibration();
  cal.p_dep = 0.1;
  const NoiseModel model = build_noise_model(cal);
  EXPECT_EQ(model.after(Gate::cnot(0, 1)).size(), 1u);
  EXPECT_TRUE(model.after(Gate::sx(1)).empty());
  EXPECT_TRUE(model.after(Gate::rz(0, 0.4)).empty());
}

TEST(NoiseModel, VirtualRzIsNoiseless) {
  const NoiseModel model = build_noise_model(pair_calibration(50.0, 40.0, 0.0));
  EXPECT_TRUE(model.after(Gate::rz(0, 1.0)).empty());
  EXPECT_EQ(model.after(Gate::sx(0)).size(), 1u);
  EXPECT_EQ(model.after(Gate::cnot(0, 1)).size(), 2u);
}

TEST(NoiseModel, FingerprintTracksContent) {
  DeviceCalibration a = pair_calibration(100.0, 100.0, 0.01);
  DeviceCalibration b = a;
  EXPECT_EQ(build_noise_model(a).fingerprint(), build_noise_model(b).fingerprint());
  b.qubits[0].t1_us = 101.0;
  EXPECT_NE(build_noise_model(a).fingerprint(), build_noise_model(b).fingerprint());
}

TEST(FitDepolarizing, ClosedFormWhenOnlyDepolarizing) {
  // With no other noise, F = 1 - 15 p / 16.
  const DepolarizingFit fit = fit_depolarizing(0.9247, synthesize_ms_circuit(), ideal_calibration());
  EXPECT_NEAR(fit.p_dep, (1.0 - 0.9247) * 16.0 / 15.0, 2e-6);
  EXPECT_NEAR(fit.fidelity, 0.9247, 1e-6);
}

TEST(FitDepolarizing, PerfectTargetGivesZero) {
  EXPECT_EQ(fit_depolarizing(1.0, synthesize_ms_circuit(), ideal_calibration()).p_dep, 0.0);
}

TEST(FitDepolarizing, UnachievableTarget) {
  const DeviceCalibration noisy = pair_calibration(20.0, 20.0, 0.05);
  EXPECT_THROW(fit_depolarizing(0.99, synthesize_ms_circuit(), noisy), UnachievableTarget);
  EXPECT_THROW(fit_depolarizing(1.5, synthesize_ms_circuit(), ideal_calibration()), InvalidInput);
}

TEST(Damping, ClosedFormLimits) {
  std::mt19937_64 rng(12);
  const ComplexMatrix rho = testing::random_density(2, rng);
  EXPECT_LT(testing::max_abs_diff(apply(damping_channel(50.0, 70.0, 0.0), rho), rho), 1e-15);

  // t = T1 with T2 = 2 T1: pure amplitude damping with gamma = 1 - 1/e.
  const QuantumChannel at_t1 = damping_channel(50.0, 100.0, 50000.0);
  const ComplexMatrix one{{0.0, 0.0}, {0.0, 1.0}};
  EXPECT_NEAR(apply(at_t1, one)(0, 0).real(), 0.6321205588285577, 1e-12);
  const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_NEAR(std::abs(apply(at_t1, plus)(0, 1)), 0.5 * std::sqrt(1.0 - 0.6321205588285577), 1e-12);

  const ComplexMatrix relaxed = apply(damping_channel(50.0, 60.0, 1e12), rho);
  EXPECT_NEAR(relaxed(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(relaxed(0, 1)), 0.0, 1e-12);
}

TEST(Depolarizing, EndpointsAndFidelity) {
  std::mt19937_64 rng(13);
  const ComplexMatrix rho = testing::random_density(2, rng);
  EXPECT_LT(testing::max_abs_diff(apply(depolarizing_channel(0.0, 1), rho), rho), 1e-15);
  EXPECT_LT(testing::max_abs_diff(apply(depolarizing_channel(1.0, 1), rho), 0.5 * ComplexMatrix::identity(2)), 1e-15);
  EXPECT_NEAR(process_fidelity(depolarizing_channel(0.1, 2), identity_channel(4)), 0.90625, 1e-12);
}

TEST(Confusion, ClosedFormEntries) {
  const ConfusionMatrix clean = confusion_matrix(pair_calibration(100.0, 100.0, 0.0), {0, 1});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(clean[i][j], i == j ? 1.0 : 0.0);
  const ConfusionMatrix random = confusion_matrix(pair_calibration(100.0, 100.0, 0.5), {0, 1});
  for (const auto &row : random)
    for (double v : row) EXPECT_NEAR(v, 0.25, 1e-15);
  DeviceCalibration cal = pair_calibration(100.0, 100.0, 0.018);
  cal.qubits[1].readout_error = 0.019;
  EXPECT_NEAR(confusion_matrix(cal, {0, 1})[0][0], 0.963342, 1e-12);
}

TEST(NoiseModel, ZeroDurationsGiveIdentity) {
  DeviceCalibration cal = pair_calibration(30.0, 40.0, 0.0);
  cal.durations = GateDurations{0.0, 0.0, 0.0, std::nullopt};
  const NoiseModel model = build_noise_model(cal);
  EXPECT_TRUE(model.after(Gate::cnot(0, 1)).empty());
  EXPECT_TRUE(model.after(Gate::sx(0)).empty());
  EXPECT_TRUE(model.after(Gate::x(1)).empty());
}

TEST(NoiseModel, SampledDepolarizedFidelity) {
  DeviceCalibration cal = ideal_calibration();
  cal.p_dep = 0.1;
  const NoiseModel model = build_noise_model(cal);
  const TomographyDataset ds = run_qpt(synthesize_ms_circuit(), &model, 1000000, 99);
  const double f = process_fidelity(reconstruct_channel(ds), channel_from_unitary(ms_unitary().matrix()));
  EXPECT_NEAR(f, 1.0 - 0.1 * 15.0 / 16.0, 5e-3);
}

TEST(FitDepolarizing, DampingLowersFittedProbability) {
  const DeviceCalibration cal = pair_calibration(60.0, 50.0, 0.0);
  const DepolarizingFit fit = fit_depolarizing(0.9247, synthesize_ms_circuit(), cal);
  EXPECT_GT(fit.p_dep, 0.0);
  EXPECT_LT(fit.p_dep, 0.0804);
  EXPECT_NEAR(fit.fidelity, 0.9247, 1e-6);
}

}  // namespace
}  // namespace msbench
