/*
 * Copyright 2026 The costeval Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end. Subcommands: metrics, loss, curves, calibrate,
// compare and continuous-demo (also reachable as "continuous demo").
//
// Exit codes: 0 on success, 1 when a computation fails, 2 on bad input.

#ifndef COSTEVAL_CLI_H_
#define COSTEVAL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace costeval {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputationError = 1;
inline constexpr int kExitInputError = 2;

// "args" excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace costeval

#endif  // COSTEVAL_CLI_H_
