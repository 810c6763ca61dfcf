// Copyright 2026 The HQA Authors
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


// The hqa command-line front end.

#ifndef HQA_TOOLS_CLI_HPP_
#define HQA_TOOLS_CLI_HPP_

#include <ostream>

namespace hqa::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;

// Runs one subcommand (analyze, fit, synth, serve, eval). Returns 0 on
// success, 2 on invalid arguments or input, 1 on any other failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hqa::tools

#endif  // HQA_TOOLS_CLI_HPP_
