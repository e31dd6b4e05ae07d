// Copyright 2026 The udperturb Authors.
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

#ifndef UDPERTURB_CLI_H_
#define UDPERTURB_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace udperturb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDataError = 2;

// Entry point of the `udperturb` tool. `args` excludes the program name.
// Subcommands: perturb, suite, encode, decode, overlay-tags, eval, report.
// Returns 0 on success, 1 on usage errors and 2 on data or contract errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace udperturb

#endif  // UDPERTURB_CLI_H_
