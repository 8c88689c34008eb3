// Copyright 2026 The QKT Authors
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


#ifndef QKT_CLI_HPP
#define QKT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qkt::cli {

inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kDomain = 3,
    kIo = 4,
};

/// Runs one invocation of the command-line tool. `args` excludes the program
/// name. Diagnostics go to `err`; help text and summaries to `out`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qkt::cli

#endif  // QKT_CLI_HPP
