// Copyright 2026 The ksubmax Authors.
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

#ifndef KSUBMAX_TOOLS_CLI_COMMANDS_H_
#define KSUBMAX_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace ksubmax::cli {

inline constexpr int kExitOk = 0;
// Usage errors, unreadable data, failed verification checks.
inline constexpr int kExitError = 1;
// Time, gap, budget or enumeration limits cut the run short.
inline constexpr int kExitPartial = 2;

// Runs one subcommand. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace ksubmax::cli

#endif  // KSUBMAX_TOOLS_CLI_COMMANDS_H_
