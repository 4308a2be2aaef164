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

#ifndef QNOKEY_SERIALIZE_HPP
#define QNOKEY_SERIALIZE_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "adversary.hpp"
#include "oracle.hpp"
#include "protocol.hpp"
#include "statevector.hpp"

namespace qnokey {

using Json = nlohmann::json;

/// Rounds to 12 significant digits and maps -0 to 0.
double canonical_double(double x);

/// Objects keep sorted keys; floats are already canonical when built through
/// the helpers below.
std::string canonical_dump(const Json &j);

std::string sha256_hex(std::string_view bytes);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);

Json state_to_json(const QuantumState &state);
QuantumState state_from_json(const Json &j);

/// {"sha256": <digest of the canonical snapshot>}.
Json state_digest(const QuantumState &state);

Json density_to_json(const DensityMatrix &rho);
Json gates_to_json(const GateList &gates);

Json transcript_to_json(const ProtocolTranscript &t, bool digest);
Json strategy_to_json(const EveStrategy &s);
Json report_to_json(const AttackReport &r);
Json eve_view_to_json(const EveView &v);
Json key_comparison_to_json(const KeyComparison &c);

/// "+0.707106781|0,1> -0.5i|1,0>" style listing of non-zero amplitudes, one
/// value per register.
std::string format_state(const QuantumState &state);

/// Fixed 9-decimal rendering used in every summary line.
std::string format_prob(double p);

}  // namespace qnokey

#endif  // QNOKEY_SERIALIZE_HPP
