// Copyright 2026 The gpath Authors
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

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace gpath::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation. `args` excludes the program name. CSV and
/// reports go to `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Gnuplot script for a CSV produced by `spectrum` or `twinslit`, referring
/// to the CSV by file name. Throws std::invalid_argument for other schemas.
std::string plot_script(const std::filesystem::path& csv);

/// Writes plot_script(csv) next to the CSV with a .gp extension and returns
/// the script path.
std::filesystem::path emit_plot_script(const std::filesystem::path& csv);

}  // namespace gpath::cli
