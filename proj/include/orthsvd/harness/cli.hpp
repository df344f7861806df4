// Copyright 2026 The orthsvd Authors. All Rights Reserved.
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

// Command-line front end. Kept in the library so tests can drive it without
// spawning processes.

#ifndef ORTHSVD_HARNESS_CLI_HPP_
#define ORTHSVD_HARNESS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace orthsvd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs `orthsvd <subcommand> ...`; args[0] is the program name. Returns the
/// process exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace orthsvd

#endif  // ORTHSVD_HARNESS_CLI_HPP_
