// Copyright 2026 The qnokey Authors
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

#ifndef QNOKEY_RUNNER_HPP
#define QNOKEY_RUNNER_HPP

#include <string>
#include <string_view>

#include "serialize.hpp"

namespace qnokey {

inline constexpr const char *kToolName = "qnokey";
inline constexpr const char *kToolVersion = "0.1.0";

enum ExitStatus : int { kExitOk = 0, kExitUsage = 1, kExitCheckFailed = 2, kExitInternal = 3 };

struct CommandResult {
    Json document;
    std::string summary;
    int status = kExitOk;
};

// Requests are loose JSON objects built from CLI flags:
//
//   protocol, k, n, seed, digest, exact, hadamard
//   message:   "0101" | "random" | {"amplitudes": [[re, im], ...]}
//   keys:      {"fa": "x" | "1:1:1,0" | "random", "sa": "01", ...}
//   run:       count, key_policy
//   attack:    strategy {kind, pass, registers, target, mask, fe, fe1, fe2,
//              guess_sa, guess_sb, keep_original}, insider, trials
//   analyze:   pass, messages ["0", "1"], known_message, samples
//
// Resolution replaces every random choice with its explicit value, so the
// resolved config alone reproduces the run.
Json resolve_config(std::string_view command, const Json &request);

/// Executes a resolved config.
CommandResult execute_config(const Json &config);

/// resolve_config, canonical round trip, execute_config.
CommandResult run_command(std::string_view command, const Json &request);

/// Re-executes the config embedded in `document` and compares the results
/// (numbers within 1e-9, digests exactly). Fails with the first divergent
/// step in the summary.
CommandResult verify_document(const Json &document);

}  // namespace qnokey

#endif  // QNOKEY_RUNNER_HPP
