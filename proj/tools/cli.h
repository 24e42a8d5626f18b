// Copyright 2026 The qcrb Authors
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

#ifndef QCRB_TOOLS_CLI_H_
#define QCRB_TOOLS_CLI_H_

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qcrb/numerics.h"

namespace qcrb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Looks up an environment variable; injectable for tests.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup process_env();

/// "1e-9" and "rel:1e-9" give a relative policy, "abs:1e-9" an absolute one.
TolerancePolicy parse_tolerance(const std::string& text);

/// Runs one subcommand. `args` excludes the program name. The report goes to
/// `out`, diagnostics and usage text to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env());

}  // namespace qcrb::cli

#endif  // QCRB_TOOLS_CLI_H_
