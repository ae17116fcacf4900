// Copyright 2026 The gaussprep Authors
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

#ifndef GAUSSPREP_HARNESS_CLI_HPP
#define GAUSSPREP_HARNESS_CLI_HPP

#include <iosfwd>

namespace gaussprep::harness {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitValidation = 3,
    kExitVerification = 4,
};

/// Parses argv, runs one subcommand. Errors go to `err` as a single JSON
/// object; nothing is thrown.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace gaussprep::harness

#endif  // GAUSSPREP_HARNESS_CLI_HPP
