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

#ifndef QNOKEY_ADVERSARY_HPP
#define QNOKEY_ADVERSARY_HPP

#include <optional>
#include <string>
#include <vector>

#include "boolfn.hpp"
#include "protocol.hpp"
#include "statevector.hpp"

namespace qnokey {

enum class StrategyKind { PassiveInspect, InterceptMeasureResend, SubstituteOracle, Bitflip, FullMitm };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view text);

/// Eve's behaviour. Every strategy acts through unitaries or measurements on
/// in-flight registers and on ancillas she attaches ("E.*").
struct EveStrategy {
    StrategyKind kind = StrategyKind::PassiveInspect;
    /// Pass to act on; 0 picks the strategy default (intercept: 1,
    /// substitute: 2, bitflip: last pass).
    int pass = 0;
    /// intercept-measure-resend: registers to measure (empty = all in flight).
    std::vector<std::string> registers;
    /// substitute-oracle / bitflip target (substitute defaults to II).
    std::string target;
    /// bitflip mask over the target register, bit 1 = MSB.
    std::uint64_t mask = 0;
    /// substitute-oracle: Eve's function.
    std::optional<BooleanFunction> fe;
    /// substitute-oracle: keep the displaced register in Eve's lab; when false
    /// she detaches it if physically possible.
    bool keep_original = true;
    /// full-mitm: Eve's session functions towards Alice and towards Bob.
    std::optional<BooleanFunction> fe1;
    std::optional<BooleanFunction> fe2;
    /// full-mitm against the authenticated protocol: Eve's guesses of the
    /// identification keys.
    std::optional<BooleanFunction> guess_sa;
    std::optional<BooleanFunction> guess_sb;
};

struct AttackMode {
    bool exact = true;
    std::size_t trials = 10000;
    Seed seed = 0;
};

struct AttackReport {
    ProtocolId protocol = ProtocolId::Basic;
    EveStrategy strategy;
    bool exact = true;
    double alice_accept_prob = 1.0;
    /// Conditional on Alice accepting; absent when the run never reaches Bob.
    std::optional<double> bob_accept_prob;
    double both_accept_prob = 1.0;
    /// Conditional on both parties accepting.
    std::optional<double> delivered_fidelity;
    /// Probability that Bob decodes Alice's classical message.
    std::optional<double> recovery_probability;
    /// full-mitm: what Eve decoded from her session with Alice.
    std::optional<BitString> eve_recovered;
    std::optional<double> eve_recovery_probability;
    std::optional<double> eve_distinguishability;
    std::size_t trials = 1;
    std::vector<Seed> seeds;
    /// Number of key tuples averaged over (1 for a single configuration).
    std::size_t tuples = 1;
    bool sampled_keys = false;
    /// passive-inspect: Eve's view of the in-flight registers per pass.
    std::vector<std::pair<std::string, DensityMatrix>> views;
};

/// Honest parties' inputs for an attack run.
struct HonestInputs {
    Message message;
    KeyAssignment keys;
};

/// Builds the channel for a channel-level strategy. `exact` selects the
/// coherent (deferred-measurement) form of intercept-measure-resend.
ChannelHook make_channel(const EveStrategy &strategy, ProtocolId protocol, bool exact);

AttackReport attack(ProtocolId protocol, const HonestInputs &honest, const EveStrategy &strategy,
                    const AttackMode &mode);

/// Uniform distribution over every key not fixed in `fixed`, enumerated
/// exactly when the key space has at most 2^20 tuples, else sampled when
/// `samples` > 0.
struct KeySpace {
    KeyAssignment fixed;
    std::size_t samples = 0;
    Seed seed = 0;
};

inline constexpr std::uint64_t kMaxExactTuples = std::uint64_t{1} << 20;

/// All key tuples of `space` for the protocol with message width k and tag
/// width n, each with its weight.
std::vector<std::pair<double, KeyAssignment>> enumerate_keys(ProtocolId protocol, unsigned k, unsigned n,
                                                             const KeySpace &space, bool *sampled = nullptr);

struct EveView {
    std::vector<std::string> registers;
    std::vector<DensityMatrix> views;
    std::optional<double> trace_distance;
    std::size_t tuples = 0;
    bool sampled = false;
};

/// Key-averaged density matrix of the in-flight registers on `pass`, for one
/// message or a pair (then also their trace distance).
EveView eve_view(ProtocolId protocol, int pass, const std::vector<Message> &messages, unsigned n,
                 const KeySpace &space);

struct KeyComparison {
    std::vector<std::pair<std::string, DensityMatrix>> views;
    double min_trace_distance = 0.0;
};

/// Known-plaintext view: Eve's state on `pass` for each value of the single
/// key `s` (alt-keystring, alt-21, alt-22), and the smallest trace distance
/// between two distinct keys.
KeyComparison eve_view_by_key(ProtocolId protocol, int pass, const Message &message, unsigned n);

struct MitmDemo {
    AttackReport basic;
    AttackReport authenticated;
    AttackReport insider;
};

/// Full man-in-the-middle against the classical protocol and against the
/// authenticated protocol (key-averaged, Eve guessing uniformly), plus the
/// insider case where Eve holds s_A and s_B.
MitmDemo mitm_demo(const BitString &classical_message, Seed seed, std::size_t samples = 0);

}  // namespace qnokey

#endif  // QNOKEY_ADVERSARY_HPP
