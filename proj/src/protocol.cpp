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

#include "protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "error.hpp"
#include "oracle.hpp"

namespace qnokey {

std::string_view to_string(ProtocolId id) {
    switch (id) {
    case ProtocolId::Basic:
        return "basic";
    case ProtocolId::Classical:
        return "classical";
    case ProtocolId::Authenticated:
        return "authenticated";
    case ProtocolId::Alt19:
        return "alt-19";
    case ProtocolId::Alt20:
        return "alt-20";
    case ProtocolId::AltKeystring:
        return "alt-keystring";
    case ProtocolId::Alt21:
        return "alt-21";
    case ProtocolId::Alt22:
        return "alt-22";
    }
    return "?";
}

ProtocolId parse_protocol(std::string_view text) {
    for (auto id : {ProtocolId::Basic, ProtocolId::Classical, ProtocolId::Authenticated, ProtocolId::Alt19,
                    ProtocolId::Alt20, ProtocolId::AltKeystring, ProtocolId::Alt21, ProtocolId::Alt22}) {
        if (to_string(id) == text) {
            return id;
        }
    }
    throw UsageError("unknown protocol '" + std::string(text) + "'");
}

std::string_view to_string(Direction d) { return d == Direction::AliceToBob ? "alice->bob" : "bob->alice"; }

std::string_view to_string(KeyPolicy p) { return p == KeyPolicy::FreshPerState ? "fresh" : "reused"; }

KeyPolicy parse_key_policy(std::string_view text) {
    if (text == "fresh" || text == "fresh-per-state") {
        return KeyPolicy::FreshPerState;
    }
    if (text == "reused") {
        return KeyPolicy::Reused;
    }
    throw UsageError("unknown key policy '" + std::string(text) + "'");
}

std::size_t expected_pass_count(ProtocolId id) {
    switch (id) {
    case ProtocolId::Basic:
    case ProtocolId::Classical:
    case ProtocolId::Authenticated:
    case ProtocolId::Alt19:
    case ProtocolId::Alt20:
        return 3;
    default:
        return 1;
    }
}

std::string_view weakness_tag(ProtocolId id) {
    switch (id) {
    case ProtocolId::Alt19:
    case ProtocolId::Alt20:
        return "no-authentication";
    case ProtocolId::AltKeystring:
    case ProtocolId::Alt21:
    case ProtocolId::Alt22:
        return "no-authentication; key exposed to channel measurement";
    default:
        return "";
    }
}

// ---------------------------------------------------------------------------
// Message

Message Message::quantum(std::vector<Complex> amplitudes) {
    const std::size_t d = amplitudes.size();
    if (d < 2 || (d & (d - 1)) != 0) {
        throw UsageError("message length must be a power of two >= 2");
    }
    Message m;
    // Normalization is checked and applied by make_state; store it normalized
    // here so fidelities compare against a unit vector.
    RegisterLayout layout({Register{kMessageReg, static_cast<unsigned>(std::countr_zero(d))}});
    m.amplitudes = make_state(layout, amplitudes).amplitudes();
    return m;
}

Message Message::basis(BitString bits) {
    RegisterLayout layout({Register{kMessageReg, bits.width}});
    Message m;
    m.amplitudes = basis_state(layout, bits.value).amplitudes();
    m.bits = bits;
    return m;
}

Message Message::hadamard_encoded(BitString bits) {
    RegisterLayout layout({Register{kMessageReg, bits.width}});
    Message m;
    m.amplitudes = apply_hadamard(basis_state(layout, bits.value), kMessageReg).amplitudes();
    m.bits = bits;
    m.hadamard = true;
    return m;
}

unsigned Message::qubits() const { return static_cast<unsigned>(std::countr_zero(amplitudes.size())); }

std::pair<PartySecrets, PartySecrets> honest_parties(const BooleanFunction &fa, const BooleanFunction &fb,
                                                     const BooleanFunction &sa, const BooleanFunction &sb) {
    return {PartySecrets{fa, sa, sb}, PartySecrets{fb, sb, sa}};
}

// ---------------------------------------------------------------------------
// Session: one run's global state plus its transcript bookkeeping.

namespace {

struct Aborted {
    std::string reason;
};

class Session {
  public:
    Session(ProtocolId id, const RunOptions &options, ProtocolTranscript &transcript, QuantumState initial)
        : id_(id), options_(options), t_(transcript), state_(std::move(initial)) {
        t_.protocol = id;
        t_.weakness = std::string(weakness_tag(id));
    }

    QuantumState &state() { return state_; }

    void oracle(const BooleanFunction &f, const std::string &target) {
        state_ = apply_oracle(state_, f, kMessageReg, target);
    }

    void send(std::string label, Direction dir, std::vector<std::string> in_flight) {
        const int index = static_cast<int>(t_.passes.size()) + 1;
        PassInfo info{id_, index, label, dir, in_flight, derive_seed(options_.seed, "pass-" + std::to_string(index))};
        PassRecord record{index, std::move(label), dir, std::move(in_flight), state_, std::nullopt};
        if (options_.channel) {
            QuantumState received = options_.channel(info, state_);
            check_channel_legality(info, state_, received);
            if (!(received.layout() == state_.layout()) || received.amplitudes() != state_.amplitudes()) {
                record.received = received;
            }
            state_ = std::move(received);
        }
        t_.passes.push_back(std::move(record));
    }

    /// Projective zero-check of `reg`. Aborts the run on rejection.
    void zero_check(const std::string &party, const std::string &label, const std::string &reg) {
        if ((party == "alice" && !options_.alice_verifies) || (party == "bob" && !options_.bob_verifies)) {
            return;
        }
        const double p = zero_probability(state_, reg);
        CheckRecord rec{label, party, reg, p, false, std::nullopt};
        if (options_.check_mode == CheckMode::Sample) {
            auto m = measure_register(state_, reg, derive_seed(options_.seed, "check:" + label));
            rec.outcome = m.value;
            rec.accepted = m.value.value == 0;
            if (rec.accepted) {
                state_ = std::move(m.post_state);
            }
        } else {
            rec.accepted = p >= 1.0 - kStateTolerance;
            if (p > 0.0) {
                state_ = project_register(state_, reg, 0);
            }
        }
        const bool proceed = options_.check_mode == CheckMode::Sample ? rec.accepted : p > 0.0;
        t_.checks.push_back(rec);
        if (!proceed) {
            throw Aborted{party + " rejected at " + label + " (register " + reg + " not all-zero)"};
        }
    }

    /// The party discards `reg`. A cleared or unentangled register is
    /// detached; anything else stays in the party's lab as "<P>.<reg>" so the
    /// global state remains pure, and the transcript flags it.
    void drop(const std::string &party, const std::string &reg) {
        if (is_detachable(state_, reg)) {
            state_ = detach_register(state_, reg);
            return;
        }
        const std::string kept = (party == "alice" ? "A." : "B.") + reg;
        t_.events.push_back({"uncleared-register",
                             party + " could not detach register " + reg + "; retained as " + kept});
        state_ = rename_register(state_, reg, kept);
    }

    Seed seed(std::string_view tag) const { return derive_seed(options_.seed, tag); }
    CheckMode check_mode() const { return options_.check_mode; }

  private:
    static void check_channel_legality(const PassInfo &info, const QuantumState &before, const QuantumState &after) {
        const auto &lb = before.layout();
        const auto &la = after.layout();
        for (const auto &r : lb.registers()) {
            const bool eve = r.name.rfind("E.", 0) == 0;
            if (!la.contains(r.name)) {
                if (eve) {
                    continue;
                }
                throw InvariantViolation("channel removed register '" + r.name + "'");
            }
            if (la.width(r.name) != r.width) {
                throw InvariantViolation("channel changed the width of register '" + r.name + "'");
            }
        }
        for (const auto &r : la.registers()) {
            if (!lb.contains(r.name) && r.name.rfind("E.", 0) != 0) {
                throw InvariantViolation("channel introduced register '" + r.name + "' outside the E. namespace");
            }
        }
        (void)info;
    }

    ProtocolId id_;
    const RunOptions &options_;
    ProtocolTranscript &t_;
    QuantumState state_;
};

void finish(Session &s, ProtocolTranscript &t, const Message &message) {
    t.final_state = s.state();
    Outcome out;
    const auto &layout = s.state().layout();
    if (layout.registers().size() == 1) {
        out.fidelity = fidelity(DensityMatrix::pure(s.state().amplitudes()), message.amplitudes);
        out.delivered = s.state();
    } else {
        const auto rho = reduced_density_matrix(s.state(), {kMessageReg});
        out.fidelity = fidelity(rho, message.amplitudes);
        QuantumState probe = s.state();
        bool all_detached = true;
        for (const auto &r : layout.registers()) {
            if (r.name == kMessageReg) {
                continue;
            }
            if (!is_detachable(probe, r.name)) {
                all_detached = false;
                break;
            }
            probe = detach_register(probe, r.name);
        }
        if (all_detached) {
            out.delivered = std::move(probe);
        }
    }

    if (message.bits) {
        QuantumState decoded = message.hadamard ? apply_hadamard(s.state(), kMessageReg) : s.state();
        const auto dist = register_distribution(decoded, kMessageReg);
        out.recovery_probability = std::min(dist[message.bits->value], 1.0);
        std::uint64_t value = 0;
        if (s.check_mode() == CheckMode::Sample) {
            value = measure_register(decoded, kMessageReg, s.seed("decode")).value.value;
        } else {
            value = static_cast<std::uint64_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
        }
        out.classical_message = BitString{value, message.bits->width};
        out.message_probability = std::min(dist[value], 1.0);
        if (out.message_probability < 1.0 - kStateTolerance) {
            t.events.push_back({"non-deterministic-decode", "decode outcome " + out.classical_message->str() +
                                                                " had probability " +
                                                                std::to_string(out.message_probability)});
        }
    }
    t.outcome = std::move(out);
}

template <typename Body>
ProtocolTranscript drive(ProtocolId id, const Message &message, const RunOptions &options,
                         std::vector<Register> initial_registers, std::map<std::string, std::string> keys,
                         Body &&body) {
    ProtocolTranscript t;
    t.keys = std::move(keys);
    Session s(id, options, t, make_state(RegisterLayout(std::move(initial_registers)), message.amplitudes));
    try {
        body(s);
        finish(s, t, message);
    } catch (const Aborted &a) {
        t.aborted = true;
        t.abort_reason = a.reason;
        t.final_state = s.state();
    }
    return t;
}

void require_same_shape(const BooleanFunction &f, const BooleanFunction &g, const char *what) {
    if (f.arity() != g.arity() || f.width() != g.width()) {
        throw UsageError(std::string(what) + ": functions must share arity and width");
    }
}

void require_arity(const BooleanFunction &f, const Message &m) {
    if (f.arity() != m.qubits()) {
        throw UsageError("function arity " + std::to_string(f.arity()) + " does not match the " +
                         std::to_string(m.qubits()) + "-qubit message");
    }
}

ProtocolTranscript three_pass(ProtocolId id, const Message &message, const BooleanFunction &fa,
                              const BooleanFunction &fb, const RunOptions &options) {
    require_same_shape(fa, fb, "three-pass protocol");
    require_arity(fa, message);
    const unsigned k = message.qubits();
    const unsigned n = fa.width();
    return drive(id, message, options, {{kMessageReg, k}, {kAliceReg, n}},
                 {{"fa", serialize(fa)}, {"fb", serialize(fb)}}, [&](Session &s) {
                     s.oracle(fa, kAliceReg);
                     s.send("alice-encrypt", Direction::AliceToBob, {kMessageReg, kAliceReg});

                     s.state() = attach_register(s.state(), kBobReg, n);
                     s.oracle(fb, kBobReg);
                     s.send("bob-encrypt", Direction::BobToAlice, {kMessageReg, kAliceReg, kBobReg});

                     s.oracle(fa, kAliceReg);
                     s.drop("alice", kAliceReg);
                     s.send("alice-decrypt", Direction::AliceToBob, {kMessageReg, kBobReg});

                     s.oracle(fb, kBobReg);
                     s.drop("bob", kBobReg);
                 });
}

}  // namespace

ProtocolTranscript run_basic_protocol(const Message &message, const BooleanFunction &fa, const BooleanFunction &fb,
                                      const RunOptions &options) {
    return three_pass(ProtocolId::Basic, message, fa, fb, options);
}

ProtocolTranscript run_classical_protocol(const BitString &m_prime, const BooleanFunction &fa,
                                          const BooleanFunction &fb, const RunOptions &options) {
    return three_pass(ProtocolId::Classical, Message::hadamard_encoded(m_prime), fa, fb, options);
}

ProtocolTranscript run_authenticated_session(const Message &message, const PartySecrets &alice,
                                             const PartySecrets &bob, const RunOptions &options) {
    if (!alice.id_key || !alice.peer_id_key || !bob.id_key || !bob.peer_id_key) {
        throw UsageError("authenticated protocol needs s_A and s_B on both sides");
    }
    const auto &fa = alice.session_fn;
    const auto &fb = bob.session_fn;
    for (const auto *f : {&fb, &*alice.id_key, &*alice.peer_id_key, &*bob.id_key, &*bob.peer_id_key}) {
        require_same_shape(fa, *f, "authenticated protocol");
    }
    require_arity(fa, message);
    const unsigned k = message.qubits();
    const unsigned n = fa.width();
    std::map<std::string, std::string> keys{{"fa", serialize(fa)},
                                            {"fb", serialize(fb)},
                                            {"sa", serialize(*alice.id_key)},
                                            {"sb", serialize(*bob.id_key)}};
    if (!(*alice.peer_id_key == *bob.id_key)) {
        keys["alice_sb"] = serialize(*alice.peer_id_key);
    }
    if (!(*bob.peer_id_key == *alice.id_key)) {
        keys["bob_sa"] = serialize(*bob.peer_id_key);
    }
    return drive(ProtocolId::Authenticated, message, options, {{kMessageReg, k}, {kAliceReg, n}}, std::move(keys),
                 [&](Session &s) {
                     s.oracle(fa, kAliceReg);
                     s.send("alice-tag", Direction::AliceToBob, {kMessageReg, kAliceReg});

                     s.oracle(*bob.id_key, kAliceReg);
                     s.state() = attach_register(s.state(), kBobReg, n);
                     s.oracle(fb, kBobReg);
                     s.send("bob-tag", Direction::BobToAlice, {kMessageReg, kAliceReg, kBobReg});

                     s.oracle(*alice.peer_id_key, kAliceReg);
                     s.oracle(fa, kAliceReg);
                     s.zero_check("alice", "alice-verify", kAliceReg);
                     s.drop("alice", kAliceReg);
                     s.oracle(*alice.id_key, kBobReg);
                     s.send("alice-reply", Direction::AliceToBob, {kMessageReg, kBobReg});

                     s.oracle(*bob.peer_id_key, kBobReg);
                     s.oracle(fb, kBobReg);
                     s.zero_check("bob", "bob-verify", kBobReg);
                     s.drop("bob", kBobReg);
                 });
}

ProtocolTranscript run_authenticated_protocol(const Message &message, const PartySecrets &alice,
                                              const PartySecrets &bob, const RunOptions &options) {
    if (!alice.id_key || !alice.peer_id_key || !bob.id_key || !bob.peer_id_key) {
        throw UsageError("authenticated protocol needs s_A and s_B on both sides");
    }
    if (*alice.id_key == *alice.peer_id_key || *bob.id_key == *bob.peer_id_key) {
        throw UsageError("identification keys must differ (s_A != s_B)");
    }
    return run_authenticated_session(message, alice, bob, options);
}

ProtocolTranscript run_alt_scheme(ProtocolId scheme, const Message &message, const AltInputs &in,
                                  const RunOptions &options) {
    const unsigned k = message.qubits();
    auto need_string = [&](const std::optional<BitString> &v, const char *name) -> BitString {
        if (!v) {
            throw UsageError(std::string("scheme ") + std::string(to_string(scheme)) + " requires " + name);
        }
        if (v->width != k) {
            throw UsageError(std::string(name) + " must have " + std::to_string(k) + " bits");
        }
        return *v;
    };
    auto need_fn = [&](const std::optional<BooleanFunction> &v, const char *name) -> const BooleanFunction & {
        if (!v) {
            throw UsageError(std::string("scheme ") + std::string(to_string(scheme)) + " requires " + name);
        }
        require_arity(*v, message);
        return *v;
    };
    const std::vector<Register> only_message{{kMessageReg, k}};

    switch (scheme) {
    case ProtocolId::Alt19: {
        const BitString sa = need_string(in.sa, "sa");
        const BitString sb = need_string(in.sb, "sb");
        return drive(scheme, message, options, only_message, {{"sa", sa.str()}, {"sb", sb.str()}}, [&](Session &s) {
            s.state() = apply_x_mask(s.state(), kMessageReg, sa.value);
            s.send("alice-shift", Direction::AliceToBob, {kMessageReg});
            s.state() = apply_x_mask(s.state(), kMessageReg, sb.value);
            s.send("bob-shift", Direction::BobToAlice, {kMessageReg});
            s.state() = apply_x_mask(s.state(), kMessageReg, sa.value);
            s.send("alice-unshift", Direction::AliceToBob, {kMessageReg});
            s.state() = apply_x_mask(s.state(), kMessageReg, sb.value);
        });
    }
    case ProtocolId::Alt20: {
        const auto &fa = need_fn(in.fa, "fa");
        const auto &fb = need_fn(in.fb, "fb");
        require_same_shape(fa, fb, "alt-20");
        return drive(scheme, message, options, {{kMessageReg, k}, {kAliceReg, fa.width()}},
                     {{"fa", serialize(fa)}, {"fb", serialize(fb)}}, [&](Session &s) {
                         s.oracle(fa, kAliceReg);
                         s.send("alice-tag", Direction::AliceToBob, {kMessageReg, kAliceReg});
                         s.oracle(fb, kAliceReg);
                         s.send("bob-tag", Direction::BobToAlice, {kMessageReg, kAliceReg});
                         s.oracle(fa, kAliceReg);
                         s.send("alice-untag", Direction::AliceToBob, {kMessageReg, kAliceReg});
                         s.oracle(fb, kAliceReg);
                         s.drop("bob", kAliceReg);
                     });
    }
    case ProtocolId::AltKeystring: {
        const BitString key = need_string(in.s_string, "s");
        return drive(scheme, message, options, only_message, {{"s", key.str()}}, [&](Session &s) {
            s.state() = apply_x_mask(s.state(), kMessageReg, key.value);
            s.send("alice-mask", Direction::AliceToBob, {kMessageReg});
            s.state() = apply_x_mask(s.state(), kMessageReg, key.value);
        });
    }
    case ProtocolId::Alt21: {
        const auto &key = need_fn(in.s, "s");
        if (is_permutation(key) != std::optional<bool>(true)) {
            throw UsageError("scheme requires bijective s");
        }
        const auto undo = inverse(key);
        return drive(scheme, message, options, only_message, {{"s", serialize(key)}}, [&](Session &s) {
            s.state() = apply_permutation(s.state(), key, kMessageReg);
            s.send("alice-permute", Direction::AliceToBob, {kMessageReg});
            s.state() = apply_permutation(s.state(), undo, kMessageReg);
        });
    }
    case ProtocolId::Alt22: {
        const auto &key = need_fn(in.s, "s");
        return drive(scheme, message, options, {{kMessageReg, k}, {kAliceReg, key.width()}}, {{"s", serialize(key)}},
                     [&](Session &s) {
                         s.oracle(key, kAliceReg);
                         s.send("alice-tag", Direction::AliceToBob, {kMessageReg, kAliceReg});
                         s.oracle(key, kAliceReg);
                         s.drop("bob", kAliceReg);
                     });
    }
    default:
        throw UsageError("'" + std::string(to_string(scheme)) + "' is not an alternative scheme");
    }
}

ProtocolTranscript run_protocol(ProtocolId id, const Message &message, const KeyAssignment &keys,
                                const RunOptions &options) {
    auto fn = [&](const char *name) -> const BooleanFunction & {
        auto it = keys.functions.find(name);
        if (it == keys.functions.end()) {
            throw UsageError(std::string("protocol ") + std::string(to_string(id)) + " requires function " + name);
        }
        return it->second;
    };
    auto opt_fn = [&](const char *name) -> std::optional<BooleanFunction> {
        auto it = keys.functions.find(name);
        return it == keys.functions.end() ? std::nullopt : std::optional<BooleanFunction>(it->second);
    };
    auto opt_str = [&](const char *name) -> std::optional<BitString> {
        auto it = keys.strings.find(name);
        return it == keys.strings.end() ? std::nullopt : std::optional<BitString>(it->second);
    };
    switch (id) {
    case ProtocolId::Basic:
    case ProtocolId::Classical:
        return three_pass(id, message, fn("fa"), fn("fb"), options);
    case ProtocolId::Authenticated: {
        auto [alice, bob] = honest_parties(fn("fa"), fn("fb"), fn("sa"), fn("sb"));
        return run_authenticated_protocol(message, alice, bob, options);
    }
    default: {
        AltInputs in;
        in.sa = opt_str("sa");
        in.sb = opt_str("sb");
        in.s_string = opt_str("s");
        in.fa = opt_fn("fa");
        in.fb = opt_fn("fb");
        in.s = opt_fn("s");
        return run_alt_scheme(id, message, in, options);
    }
    }
}

std::vector<ProtocolTranscript> run_sequence(const std::vector<Message> &messages, KeyPolicy policy, unsigned n,
                                             const RunOptions &options) {
    if (messages.empty()) {
        return {};
    }
    const unsigned k = messages.front().qubits();
    for (const auto &m : messages) {
        if (m.qubits() != k) {
            throw UsageError("sequence mixes messages of different dimensions");
        }
    }
    std::vector<ProtocolTranscript> out;
    out.reserve(messages.size());
    for (std::size_t i = 0; i < messages.size(); ++i) {
        const std::string round = policy == KeyPolicy::Reused ? "" : "-" + std::to_string(i);
        const auto fa = random_function(k, n, derive_seed(options.seed, "seq-fa" + round));
        const auto fb = random_function(k, n, derive_seed(options.seed, "seq-fb" + round));
        RunOptions per = options;
        per.seed = derive_seed(options.seed, i);
        out.push_back(run_basic_protocol(messages[i], fa, fb, per));
    }
    return out;
}

}  // namespace qnokey
