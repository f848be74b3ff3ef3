// Copyright 2026 The qcorral Authors
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

#ifndef QCORRAL_CLI_COMMANDS_HPP
#define QCORRAL_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qcorral::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Every run that gets
/// past argument parsing writes a JSON report into --out, including on error.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qcorral::cli

#endif
