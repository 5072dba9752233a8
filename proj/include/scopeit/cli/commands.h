// Copyright 2026 The ScopeIt Authors.
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

#ifndef SCOPEIT_CLI_COMMANDS_H_
#define SCOPEIT_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace scopeit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Parses and runs one subcommand. Results go to `out` as JSON, diagnostics to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace scopeit::cli

#endif  // SCOPEIT_CLI_COMMANDS_H_
