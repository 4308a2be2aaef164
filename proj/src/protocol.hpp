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

#ifndef QNOKEY_PROTOCOL_HPP
#define QNOKEY_PROTOCOL_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolfn.hpp"
#include "statevector.hpp"

namespace qnokey {

// Register names used by every driver.
inline const std::string kMessageReg = "I";
inline const std::string kAliceReg = "II";
inline const std::string kBobReg = "III";

enum class ProtocolId { Basic, Classical, Authenticated, Alt19, Alt20, AltKeystring, Alt21, Alt22 };

std::string_view to_string(ProtocolId id);
ProtocolId parse_protocol(std::string_view text);

enum class Direction { AliceToBob, BobToAlice };
std::string_view to_string(Direction d);

/// What Alice puts into register I.
struct Message {
    std::vector<Complex> amplitudes;
    /// Set for classical messages; Bob decodes by measuring register I (after
    /// a Hadamard layer when `hadamard` is set).
    std::optional<BitString> bits;
    bool hadamard = false;

    static Message quantum(std::vector<Complex> amplitudes);
    static Message basis(BitString bits);
    /// H^{(x)k} |bits>, built by preparing the basis state and applying the
    /// Hadamard layer.
    static Message hadamard_encoded(BitString bits);

    unsigned qubits() const;
};

/// A party's secrets. For authenticated runs `id_key` is the party's own
/// identification key and `peer_id_key` its copy of the other party's key.
struct PartySecrets {
    BooleanFunction session_fn;
    std::optional<BooleanFunction> id_key;
    std::optional<BooleanFunction> peer_id_key;
};

/// Alice/Bob secrets for an honest authenticated run.
std::pair<PartySecrets, PartySecrets> honest_parties(const BooleanFunction &fa, const BooleanFunction &fb,
                                                     const BooleanFunction &sa, const BooleanFunction &sb);

/// How zero-checks and decodes are evaluated. Sample draws a seeded
/// projective measurement; PostSelect records the exact acceptance
/// probability and continues on the accepted branch.
enum class CheckMode { Sample, PostSelect };

struct PassInfo {
    ProtocolId protocol = ProtocolId::Basic;
    int index = 0;
    std::string label;
    Direction direction = Direction::AliceToBob;
    std::vector<std::string> in_flight;
    Seed seed = 0;
};

/// Every pass is handed to the channel, which returns the state the receiver
/// gets. A channel may act only on in-flight registers and on registers it
/// attaches itself, which must be named "E.<something>".
using ChannelHook = std::function<QuantumState(const PassInfo &, QuantumState)>;

struct RunOptions {
    ChannelHook channel;  // empty means identity
    CheckMode check_mode = CheckMode::Sample;
    Seed seed = 0;
    /// A party that does not verify skips its zero-check and just discards
    /// the register. Impersonators in the adversary module use this.
    bool alice_verifies = true;
    bool bob_verifies = true;
};

struct PassRecord {
    int index = 0;
    std::string label;
    Direction direction = Direction::AliceToBob;
    std::vector<std::string> in_flight;
    QuantumState sent;
    std::optional<QuantumState> received;  // only when the channel changed the state
};

struct CheckRecord {
    std::string label;
    std::string party;
    std::string register_name;
    double zero_probability = 0.0;
    bool accepted = false;
    std::optional<BitString> outcome;  // Sample mode only
};

struct EventRecord {
    std::string label;
    std::string detail;
};

struct Outcome {
    /// Register I alone, when every other register could be detached.
    std::optional<QuantumState> delivered;
    /// <message| rho_I |message>.
    double fidelity = 0.0;
    std::optional<BitString> classical_message;
    /// Probability of the reported classical_message.
    double message_probability = 0.0;
    /// Probability that the decode yields the message Alice sent.
    double recovery_probability = 0.0;
};

struct ProtocolTranscript {
    ProtocolId protocol = ProtocolId::Basic;
    std::map<std::string, std::string> keys;  // serialized functions / bit strings
    std::vector<PassRecord> passes;
    std::vector<CheckRecord> checks;
    std::vector<EventRecord> events;
    bool aborted = false;
    std::string abort_reason;
    std::optional<Outcome> outcome;
    /// Global state after the receiver's last unitary step, before decoding.
    std::optional<QuantumState> final_state;
    std::string weakness;
};

ProtocolTranscript run_basic_protocol(const Message &message, const BooleanFunction &fa, const BooleanFunction &fb,
                                      const RunOptions &options = {});

ProtocolTranscript run_classical_protocol(const BitString &m_prime, const BooleanFunction &fa,
                                          const BooleanFunction &fb, const RunOptions &options = {});

/// Validates the setup (every key present, s_A != s_B, shapes agree) and runs.
ProtocolTranscript run_authenticated_protocol(const Message &message, const PartySecrets &alice,
                                              const PartySecrets &bob, const RunOptions &options = {});

/// Same evolution without the s_A != s_B setup check; used when one side is
/// an impersonator holding guessed keys.
ProtocolTranscript run_authenticated_session(const Message &message, const PartySecrets &alice,
                                             const PartySecrets &bob, const RunOptions &options = {});

/// Inputs for the alternative schemes. alt-19 uses sa/sb strings, the key
/// string scheme uses s_string, alt-20 uses fa/fb, alt-21 and alt-22 use s.
struct AltInputs {
    std::optional<BitString> sa;
    std::optional<BitString> sb;
    std::optional<BitString> s_string;
    std::optional<BooleanFunction> fa;
    std::optional<BooleanFunction> fb;
    std::optional<BooleanFunction> s;
};

ProtocolTranscript run_alt_scheme(ProtocolId scheme, const Message &message, const AltInputs &inputs,
                                  const RunOptions &options = {});

enum class KeyPolicy { FreshPerState, Reused };
std::string_view to_string(KeyPolicy p);
KeyPolicy parse_key_policy(std::string_view text);

/// Basic protocol over a sequence of messages with random session functions
/// of output width n drawn from options.seed.
std::vector<ProtocolTranscript> run_sequence(const std::vector<Message> &messages, KeyPolicy policy, unsigned n,
                                             const RunOptions &options = {});

/// Named keys for any protocol: functions fa, fb, sa, sb, s and bit strings
/// sa, sb, s (alt-19 and the key-string scheme).
struct KeyAssignment {
    std::map<std::string, BooleanFunction> functions;
    std::map<std::string, BitString> strings;
};

/// Dispatches to the matching driver. Authenticated runs use honest parties
/// built from fa, fb, sa, sb.
ProtocolTranscript run_protocol(ProtocolId id, const Message &message, const KeyAssignment &keys,
                                const RunOptions &options = {});

std::size_t expected_pass_count(ProtocolId id);
std::string_view weakness_tag(ProtocolId id);

}  // namespace qnokey

#endif  // QNOKEY_PROTOCOL_HPP
