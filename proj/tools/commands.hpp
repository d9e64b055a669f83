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
#include <iosfwd>
#include <string>
#include <vector>

namespace msbench::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char *kOutputDirEnv = "MSBENCH_OUTPUT_DIR";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation; `args` excludes the program name. Machine-readable
/// results go to the --out files, the human summary to `out`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace msbench::cli
