// Copyright 2026 The fconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fconv/app/config.hpp"
#include "fconv/app/output.hpp"

namespace fconv::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

[[nodiscard]] std::string version();

/// Runs the configured scenario. Library errors propagate.
[[nodiscard]] OutputTable execute(const RunConfig& config);

/// execute() with errors mapped to exit codes. On failure the message and the
/// resolved config are written to `err`; on success the table goes to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `fconv <scenario> [--config path] [--out path]
/// [--seed n] [--jobs n] [--set key=value]...`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fconv::app
