// Copyright 2026 The dmkt Authors
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

// Subcommands of the command-line tool. Each writes results to `out`,
// messages to `err`, and returns the process exit code.

#ifndef DMKT_TOOLS_COMMANDS_HPP
#define DMKT_TOOLS_COMMANDS_HPP

#include <ostream>

#include "run_config.hpp"

namespace dmkt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // self-test mismatch
  kExitConfig = 2,
  kExitSolver = 3,
  kExitIo = 4,
};

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_diagnose(const RunConfig& config, std::ostream& out,
                 std::ostream& err);
int cmd_selftest(const RunConfig& config, std::ostream& out,
                 std::ostream& err);

}  // namespace dmkt::cli

#endif  // DMKT_TOOLS_COMMANDS_HPP
