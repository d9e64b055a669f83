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

#include <cmath>
#include <string>

#include "msbench/errors.hpp"
#include "msbench/noise.hpp"
#include "msbench/tomography.hpp"

namespace msbench {

DepolarizingFit fit_depolarizing(double target_fidelity, const Circuit &circuit,
                                 const DeviceCalibration &calibration, double tolerance) {
  if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
    throw InvalidInput("target fidelity must lie in (0, 1]");
  }
  calibration.validate();
  DepolarizingFit fit;

  auto fidelity_at = [&](double p) {
    DeviceCalibration trial = calibration;
    trial.p_dep = p;
    const NoiseModel model = build_noise_model(trial);
    ++fit.evaluations;
    return exact_qpt_fidelity(circuit, &model);
  };

  const double f0 = fidelity_at(0.0);
  if (std::abs(f0 - target_fidelity) <= tolerance) {
    fit.p_dep = 0.0;
    fit.fidelity = f0;
    return fit;
  }
  if (f0 < target_fidelity) {
    throw UnachievableTarget("target fidelity " + std::to_string(target_fidelity) +
                             " exceeds the p_dep = 0 fidelity " + std::to_string(f0));
  }

  // F is non-increasing in p, so F(lo) > target >= F(hi) is maintained.
  double lo = 0.0, hi = 1.0;
  double f_hi = fidelity_at(hi);
  if (f_hi > target_fidelity + tolerance) {
    throw UnachievableTarget("target fidelity " + std::to_string(target_fidelity) +
                             " is below the p_dep = 1 fidelity " + std::to_string(f_hi));
  }
  double p = hi, f = f_hi;
  for (int iter = 0; iter < 200 && std::abs(f - target_fidelity) > tolerance; ++iter) {
    p = 0.5 * (lo + hi);
    f = fidelity_at(p);
    if (f > target_fidelity) lo = p;
    else hi = p;
    if (hi - lo < 1e-15) break;
  }
  fit.p_dep = p;
  fit.fidelity = f;
  return fit;
}

}  // namespace msbench
