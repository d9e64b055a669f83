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
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "msbench/channels.hpp"
#include "msbench/circuits.hpp"
#include "msbench/metrics.hpp"
#include "msbench/noise.hpp"
#include "msbench/simulator.hpp"
#include "msbench/tomography.hpp"

// File formats. Complex entries are [re, im] pairs in row-major order;
// missing or null T1/T2 in calibration files mean "no decay".

namespace msbench {

using Json = nlohmann::json;

inline constexpr std::string_view kDatasetFormat = "msbench-qpt-dataset/v1";

Json to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j);

/// Array of gate objects: {"kind":"rz","qubit":0,"angle":1.57},
/// {"kind":"cnot","control":0,"target":1}, {"kind":"sx","qubit":1}.
Json to_json(const Circuit &c);
Circuit circuit_from_json(const Json &j);

Json to_json(const QuantumChannel &ch);
QuantumChannel channel_from_json(const Json &j);

Json to_json(const DeviceCalibration &cal);
/// Parses and validates; unphysical records are rejected here.
DeviceCalibration calibration_from_json(const Json &j);

/// FNV-1a 64 over the canonical JSON dump, formatted "fnv1a64:<16 hex>".
std::string fingerprint_text(std::string_view text);
std::string calibration_fingerprint(const DeviceCalibration &cal);

/// {"setting":"XZ","shots":4000,"seed":42,"counts":{"00":..,"01":..,"10":..,"11":..}}
Json to_json(const CountsRecord &rec);
CountsRecord counts_from_json(const Json &j);

Json to_json(const TomographyDataset &ds);
TomographyDataset dataset_from_json(const Json &j);

Json to_json(const BenchmarkReport &report);
Json to_json(const GateComparison &comparison);
Json to_json(const StabilityReport &report);

Json read_json_file(const std::filesystem::path &path);
void write_json_file(const std::filesystem::path &path, const Json &j);
void write_text_file(const std::filesystem::path &path, std::string_view text);

}  // namespace msbench
