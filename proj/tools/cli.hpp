// Copyright 2026 The AIDG Authors
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

#ifndef AIDG_TOOLS_CLI_HPP_
#define AIDG_TOOLS_CLI_HPP_

#include <ostream>

namespace aidg::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,  // bad flags or config
  kAgentResolution = 3,
  kNoRecords = 4,
  kCorpusInvalid = 5,
  kReplayMismatch = 6,
};

// Entry point for the `aidg` binary. Output goes to `out`, diagnostics to
// `err`; nothing is written to the process streams directly.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aidg::cli

#endif  // AIDG_TOOLS_CLI_HPP_
