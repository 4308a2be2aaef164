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

#include "adversary.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>

#include "error.hpp"
#include "oracle.hpp"

namespace qnokey {

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::PassiveInspect:
        return "passive-inspect";
    case StrategyKind::InterceptMeasureResend:
        return "intercept-measure-resend";
    case StrategyKind::SubstituteOracle:
        return "substitute-oracle";
    case StrategyKind::Bitflip:
        return "bitflip";
    case StrategyKind::FullMitm:
        return "full-mitm";
    }
    return "?";
}

StrategyKind parse_strategy(std::string_view text) {
    for (auto k : {StrategyKind::PassiveInspect, StrategyKind::InterceptMeasureResend, StrategyKind::SubstituteOracle,
                   StrategyKind::Bitflip, StrategyKind::FullMitm}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw UsageError("unknown strategy '" + std::string(text) + "'");
}

namespace {

int default_pass(const EveStrategy &s, ProtocolId protocol) {
    if (s.pass != 0) {
        return s.pass;
    }
    switch (s.kind) {
    case StrategyKind::SubstituteOracle:
        return 2;
    case StrategyKind::Bitflip:
        return static_cast<int>(expected_pass_count(protocol));
    default:
        return 1;
    }
}

bool in_flight(const PassInfo &info, const std::string &reg) {
    return std::find(info.in_flight.begin(), info.in_flight.end(), reg) != info.in_flight.end();
}

const CheckRecord *find_check(const ProtocolTranscript &t, std::string_view label) {
    for (const auto &c : t.checks) {
        if (c.label == label) {
            return &c;
        }
    }
    return nullptr;
}

// Metrics of what Bob holds in register I at the end of a run, measured
// against the message Alice originally sent.
struct Delivery {
    double fidelity = 0.0;
    std::optional<double> recovery;
};

Delivery delivery_against(const QuantumState &final_state, const Message &original) {
    Delivery d;
    d.fidelity = fidelity(reduced_density_matrix(final_state, {kMessageReg}), original.amplitudes);
    if (original.bits) {
        const QuantumState decoded =
            original.hadamard ? apply_hadamard(final_state, kMessageReg) : final_state;
        d.recovery = std::min(register_distribution(decoded, kMessageReg)[original.bits->value], 1.0);
    }
    return d;
}

Message reencode(const Message &like, BitString bits) {
    return like.hadamard ? Message::hadamard_encoded(bits) : Message::basis(bits);
}

// Per-run acceptance summary shared by exact and sampled aggregation.
struct RunResult {
    double alice = 1.0;               // exact probability or 0/1 indicator
    std::optional<double> bob;        // conditional on Alice accepting
    std::optional<Delivery> delivery; // conditional on both accepting
};

RunResult summarize(const ProtocolTranscript &t, const Message &original, bool exact) {
    RunResult r;
    const CheckRecord *a = find_check(t, "alice-verify");
    const CheckRecord *b = find_check(t, "bob-verify");
    if (a) {
        r.alice = exact ? a->zero_probability : (a->accepted ? 1.0 : 0.0);
    }
    const bool alice_passed = exact ? r.alice > 0.0 : r.alice == 1.0;
    if (!alice_passed) {
        return r;
    }
    if (b) {
        r.bob = exact ? b->zero_probability : (b->accepted ? 1.0 : 0.0);
    } else {
        r.bob = t.aborted ? 0.0 : 1.0;
    }
    if (!t.aborted && t.final_state) {
        r.delivery = delivery_against(*t.final_state, original);
    }
    return r;
}

// Weighted accumulation of RunResults into report probabilities.
struct Accumulator {
    double weight = 0.0;
    double alice = 0.0;
    double alice_w = 0.0;  // weight * P(alice)
    double both = 0.0;
    double fid = 0.0;
    double rec = 0.0;
    bool any_recovery = false;

    void add(double w, const RunResult &r) {
        weight += w;
        alice += w * r.alice;
        if (!r.bob) {
            return;
        }
        alice_w += w * r.alice;
        const double wb = w * r.alice * *r.bob;
        both += wb;
        if (r.delivery) {
            fid += wb * r.delivery->fidelity;
            if (r.delivery->recovery) {
                rec += wb * *r.delivery->recovery;
                any_recovery = true;
            }
        }
    }

    void write(AttackReport &rep) const {
        rep.alice_accept_prob = alice / weight;
        rep.both_accept_prob = both / weight;
        if (alice_w > 0.0) {
            rep.bob_accept_prob = both / alice_w;
        }
        if (both > 0.0) {
            rep.delivered_fidelity = fid / both;
            if (any_recovery) {
                rep.recovery_probability = rec / both;
            }
        }
    }
};

}  // namespace

ChannelHook make_channel(const EveStrategy &strategy, ProtocolId protocol, bool exact) {
    const int pass = default_pass(strategy, protocol);
    if (pass < 1 || pass > static_cast<int>(expected_pass_count(protocol))) {
        throw UsageError("pass " + std::to_string(pass) + " does not exist in protocol " +
                         std::string(to_string(protocol)));
    }
    switch (strategy.kind) {
    case StrategyKind::PassiveInspect:
        return [](const PassInfo &, QuantumState s) { return s; };

    case StrategyKind::InterceptMeasureResend:
        return [strategy, pass, exact](const PassInfo &info, QuantumState s) {
            if (info.index != pass) {
                return s;
            }
            const auto regs = strategy.registers.empty() ? info.in_flight : strategy.registers;
            for (const auto &r : regs) {
                if (!in_flight(info, r)) {
                    throw UsageError("register " + r + " is not in flight on pass " + std::to_string(pass));
                }
                if (exact) {
                    // Deferred measurement: copy the computational-basis value
                    // into Eve's own register.
                    const unsigned w = s.layout().width(r);
                    const std::string copy = "E.copy-" + r;
                    s = attach_register(s, copy, w);
                    s = apply_oracle(s, BooleanFunction::identity(w), r, copy);
                } else {
                    s = measure_register(s, r, derive_seed(info.seed, r)).post_state;
                }
            }
            return s;
        };

    case StrategyKind::SubstituteOracle: {
        if (!strategy.fe) {
            throw UsageError("substitute-oracle needs Eve's function fe");
        }
        const std::string target = strategy.target.empty() ? kAliceReg : strategy.target;
        return [strategy, pass, target](const PassInfo &info, QuantumState s) {
            if (info.index != pass) {
                return s;
            }
            if (!in_flight(info, target) || !in_flight(info, kMessageReg)) {
                throw UsageError("substitute-oracle needs registers I and " + target + " in flight on pass " +
                                 std::to_string(pass));
            }
            const auto &fe = *strategy.fe;
            if (fe.width() != s.layout().width(target)) {
                throw UsageError("fe width does not match register " + target);
            }
            s = attach_register(s, "E.sub", fe.width());
            s = apply_oracle(s, fe, kMessageReg, "E.sub");
            const std::string displaced = "E.orig-" + target;
            s = rename_register(s, target, displaced);
            s = rename_register(s, "E.sub", target);
            if (!strategy.keep_original && is_detachable(s, displaced)) {
                s = detach_register(s, displaced);
            }
            return s;
        };
    }

    case StrategyKind::Bitflip: {
        if (strategy.target.empty()) {
            throw UsageError("bitflip needs a target register");
        }
        return [strategy, pass](const PassInfo &info, QuantumState s) {
            if (info.index != pass) {
                return s;
            }
            if (!in_flight(info, strategy.target)) {
                throw UsageError("register " + strategy.target + " is not in flight on pass " + std::to_string(pass));
            }
            return apply_x_mask(s, strategy.target, strategy.mask);
        };
    }

    case StrategyKind::FullMitm:
        throw UsageError("full-mitm is not a channel strategy");
    }
    throw UsageError("unknown strategy");
}

namespace {

AttackReport full_mitm(ProtocolId protocol, const HonestInputs &honest, const EveStrategy &strategy,
                       const AttackMode &mode) {
    if (protocol != ProtocolId::Basic && protocol != ProtocolId::Classical &&
        protocol != ProtocolId::Authenticated) {
        throw UsageError("full-mitm applies to the basic, classical and authenticated protocols");
    }
    if (!strategy.fe1 || !strategy.fe2) {
        throw UsageError("full-mitm needs Eve's session functions fe1 and fe2");
    }
    const bool auth = protocol == ProtocolId::Authenticated;
    if (auth && (!strategy.guess_sa || !strategy.guess_sb)) {
        throw UsageError("full-mitm against the authenticated protocol needs guesses for s_A and s_B");
    }
    const Message &m = honest.message;
    if (auth && !m.bits) {
        throw UsageError("full-mitm against the authenticated protocol needs a classical message");
    }
    auto fn = [&](const char *name) -> const BooleanFunction & {
        auto it = honest.keys.functions.find(name);
        if (it == honest.keys.functions.end()) {
            throw UsageError(std::string("missing honest key ") + name);
        }
        return it->second;
    };

    // Alice talks to Eve posing as Bob.
    auto session_with_alice = [&](const RunOptions &opt) {
        if (auth) {
            PartySecrets alice{fn("fa"), fn("sa"), fn("sb")};
            PartySecrets eve{*strategy.fe1, strategy.guess_sb, strategy.guess_sa};
            if (fn("sa") == fn("sb")) {
                throw UsageError("identification keys must differ (s_A != s_B)");
            }
            RunOptions o = opt;
            o.bob_verifies = false;
            return run_authenticated_session(m, alice, eve, o);
        }
        KeyAssignment keys;
        keys.functions.emplace("fa", fn("fa"));
        keys.functions.emplace("fb", *strategy.fe1);
        return run_protocol(protocol, m, keys, opt);
    };
    // Eve posing as Alice talks to Bob.
    auto session_with_bob = [&](const Message &relay, const RunOptions &opt) {
        if (auth) {
            PartySecrets eve{*strategy.fe2, strategy.guess_sa, strategy.guess_sb};
            PartySecrets bob{fn("fb"), fn("sb"), fn("sa")};
            RunOptions o = opt;
            o.alice_verifies = false;
            return run_authenticated_session(relay, eve, bob, o);
        }
        KeyAssignment keys;
        keys.functions.emplace("fa", *strategy.fe2);
        keys.functions.emplace("fb", fn("fb"));
        return run_protocol(protocol, relay, keys, opt);
    };

    AttackReport rep;
    rep.protocol = protocol;
    rep.strategy = strategy;
    rep.exact = mode.exact;
    rep.seeds = {mode.seed};

    Accumulator acc;
    if (mode.exact) {
        RunOptions o1{{}, CheckMode::PostSelect, derive_seed(mode.seed, "mitm-alice")};
        const auto t1 = session_with_alice(o1);
        const CheckRecord *a = find_check(t1, "alice-verify");
        const double p_alice = a ? a->zero_probability : 1.0;
        if (t1.aborted || !t1.final_state) {
            rep.alice_accept_prob = p_alice;
            rep.both_accept_prob = 0.0;
            return rep;
        }
        // Eve's copy of the message, branch by branch.
        std::vector<std::pair<double, Message>> relays;
        if (m.bits) {
            const QuantumState eve_view =
                m.hadamard ? apply_hadamard(*t1.final_state, kMessageReg) : *t1.final_state;
            const auto dist = register_distribution(eve_view, kMessageReg);
            const auto best = static_cast<std::uint64_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
            rep.eve_recovered = BitString{best, m.bits->width};
            rep.eve_recovery_probability = std::min(dist[m.bits->value], 1.0);
            for (std::uint64_t v = 0; v < dist.size(); ++v) {
                if (dist[v] > 1e-15) {
                    relays.emplace_back(dist[v], reencode(m, BitString{v, m.bits->width}));
                }
            }
        } else {
            if (!t1.outcome || !t1.outcome->delivered) {
                throw UsageError("Eve's copy of the quantum message is entangled; relay needs a classical message");
            }
            relays.emplace_back(1.0, Message::quantum(t1.outcome->delivered->amplitudes()));
        }
        for (const auto &[q, relay] : relays) {
            RunOptions o2{{}, CheckMode::PostSelect, derive_seed(mode.seed, "mitm-bob")};
            const auto t2 = session_with_bob(relay, o2);
            RunResult r = summarize(t2, m, true);
            // Alice's side is fixed; Bob's acceptance in this branch.
            RunResult joined;
            joined.alice = p_alice;
            joined.bob = r.bob.value_or(0.0) * r.alice;
            joined.delivery = r.delivery;
            acc.add(q, joined);
        }
        acc.write(rep);
        rep.alice_accept_prob = p_alice;
        return rep;
    }

    rep.trials = mode.trials;
    std::size_t eve_hits = 0;
    std::size_t eve_runs = 0;
    std::vector<std::size_t> eve_counts(m.bits ? std::size_t{1} << m.bits->width : 0);
    for (std::size_t i = 0; i < mode.trials; ++i) {
        const Seed trial = derive_seed(mode.seed, i);
        RunOptions o1{{}, CheckMode::Sample, derive_seed(trial, "mitm-alice")};
        const auto t1 = session_with_alice(o1);
        RunResult r;
        const CheckRecord *a = find_check(t1, "alice-verify");
        r.alice = a ? (a->accepted ? 1.0 : 0.0) : 1.0;
        if (r.alice == 1.0 && t1.outcome) {
            Message relay;
            if (m.bits) {
                const BitString got = *t1.outcome->classical_message;
                ++eve_runs;
                ++eve_counts[got.value];
                eve_hits += got == *m.bits;
                relay = reencode(m, got);
            } else {
                relay = Message::quantum(t1.outcome->delivered->amplitudes());
            }
            RunOptions o2{{}, CheckMode::Sample, derive_seed(trial, "mitm-bob")};
            const auto t2 = session_with_bob(relay, o2);
            const RunResult r2 = summarize(t2, m, false);
            r.bob = r2.bob.value_or(0.0) * r2.alice;
            r.delivery = r2.delivery;
            if (r.delivery && t2.outcome && m.bits) {
                r.delivery->recovery = *t2.outcome->classical_message == *m.bits ? 1.0 : 0.0;
            }
        }
        acc.add(1.0, r);
    }
    acc.write(rep);
    if (eve_runs > 0) {
        const auto best = static_cast<std::uint64_t>(std::max_element(eve_counts.begin(), eve_counts.end()) -
                                                     eve_counts.begin());
        rep.eve_recovered = BitString{best, m.bits->width};
        rep.eve_recovery_probability = static_cast<double>(eve_hits) / static_cast<double>(eve_runs);
    }
    return rep;
}

}  // namespace

AttackReport attack(ProtocolId protocol, const HonestInputs &honest, const EveStrategy &strategy,
                    const AttackMode &mode) {
    if (strategy.kind == StrategyKind::FullMitm) {
        return full_mitm(protocol, honest, strategy, mode);
    }
    if (!mode.exact && mode.trials == 0) {
        throw UsageError("monte-carlo mode needs at least one trial");
    }
    ChannelHook channel = make_channel(strategy, protocol, mode.exact);

    AttackReport rep;
    rep.protocol = protocol;
    rep.strategy = strategy;
    rep.exact = mode.exact;
    rep.seeds = {mode.seed};

    Accumulator acc;
    if (mode.exact) {
        auto views = std::make_shared<std::vector<std::pair<std::string, DensityMatrix>>>();
        ChannelHook hook = channel;
        if (strategy.kind == StrategyKind::PassiveInspect) {
            hook = [views, channel](const PassInfo &info, QuantumState s) {
                unsigned w = 0;
                for (const auto &r : info.in_flight) {
                    w += s.layout().width(r);
                }
                if (w <= 6) {
                    views->emplace_back("pass-" + std::to_string(info.index),
                                        reduced_density_matrix(s, std::span<const std::string>(info.in_flight)));
                }
                return channel(info, std::move(s));
            };
        }
        RunOptions opt{hook, CheckMode::PostSelect, mode.seed};
        const auto t = run_protocol(protocol, honest.message, honest.keys, opt);
        acc.add(1.0, summarize(t, honest.message, true));
        acc.write(rep);
        rep.views = std::move(*views);
        return rep;
    }

    rep.trials = mode.trials;
    for (std::size_t i = 0; i < mode.trials; ++i) {
        RunOptions opt{channel, CheckMode::Sample, derive_seed(mode.seed, i)};
        const auto t = run_protocol(protocol, honest.message, honest.keys, opt);
        RunResult r = summarize(t, honest.message, false);
        if (r.delivery && honest.message.bits && t.outcome) {
            r.delivery->recovery = *t.outcome->classical_message == *honest.message.bits ? 1.0 : 0.0;
        }
        acc.add(1.0, r);
    }
    acc.write(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Key spaces

namespace {

enum class SlotKind { Function, String, Permutation };

struct Slot {
    std::string name;
    SlotKind kind;
};

std::vector<Slot> key_slots(ProtocolId protocol) {
    switch (protocol) {
    case ProtocolId::Basic:
    case ProtocolId::Classical:
    case ProtocolId::Alt20:
        return {{"fa", SlotKind::Function}, {"fb", SlotKind::Function}};
    case ProtocolId::Authenticated:
        return {{"fa", SlotKind::Function},
                {"fb", SlotKind::Function},
                {"sa", SlotKind::Function},
                {"sb", SlotKind::Function}};
    case ProtocolId::Alt19:
        return {{"sa", SlotKind::String}, {"sb", SlotKind::String}};
    case ProtocolId::AltKeystring:
        return {{"s", SlotKind::String}};
    case ProtocolId::Alt21:
        return {{"s", SlotKind::Permutation}};
    case ProtocolId::Alt22:
        return {{"s", SlotKind::Function}};
    }
    return {};
}

// One slot's candidate values; either fixed or the full domain.
struct Domain {
    std::vector<BooleanFunction> functions;
    std::vector<BitString> strings;
    std::size_t size() const { return functions.empty() ? strings.size() : functions.size(); }
};

std::optional<std::uint64_t> domain_size(const Slot &slot, unsigned k, unsigned n) {
    switch (slot.kind) {
    case SlotKind::Function:
        return function_count(k, n);
    case SlotKind::String:
        return std::uint64_t{1} << k;
    case SlotKind::Permutation: {
        std::uint64_t f = 1;
        for (std::uint64_t i = 2; i <= (std::uint64_t{1} << k); ++i) {
            if (f > kMaxExactTuples) {
                return std::nullopt;
            }
            f *= i;
        }
        return f;
    }
    }
    return std::nullopt;
}

Domain full_domain(const Slot &slot, unsigned k, unsigned n, std::uint64_t size) {
    Domain d;
    switch (slot.kind) {
    case SlotKind::Function:
        for (std::uint64_t i = 0; i < size; ++i) {
            d.functions.push_back(function_from_index(k, n, i));
        }
        break;
    case SlotKind::String:
        for (std::uint64_t i = 0; i < size; ++i) {
            d.strings.push_back(BitString{i, k});
        }
        break;
    case SlotKind::Permutation: {
        std::vector<std::uint32_t> t(std::size_t{1} << k);
        std::iota(t.begin(), t.end(), 0U);
        do {
            d.functions.emplace_back(k, k, t);
        } while (std::next_permutation(t.begin(), t.end()));
        break;
    }
    }
    return d;
}

bool is_fixed(const KeySpace &space, const Slot &slot) {
    return slot.kind == SlotKind::String ? space.fixed.strings.count(slot.name) > 0
                                         : space.fixed.functions.count(slot.name) > 0;
}

void draw(KeyAssignment &out, const Slot &slot, unsigned k, unsigned n, Rng &rng) {
    switch (slot.kind) {
    case SlotKind::Function:
        out.functions.insert_or_assign(slot.name, random_function(k, n, rng.next_u64()));
        break;
    case SlotKind::String:
        out.strings.insert_or_assign(slot.name, BitString{rng.uniform_bits(k), k});
        break;
    case SlotKind::Permutation: {
        std::vector<std::uint32_t> t(std::size_t{1} << k);
        std::iota(t.begin(), t.end(), 0U);
        for (std::size_t i = t.size(); i > 1; --i) {
            std::swap(t[i - 1], t[rng.uniform_below(i)]);
        }
        out.functions.insert_or_assign(slot.name, BooleanFunction(k, k, std::move(t)));
        break;
    }
    }
}

bool violates_constraints(ProtocolId protocol, const KeyAssignment &keys) {
    if (protocol != ProtocolId::Authenticated) {
        return false;
    }
    auto a = keys.functions.find("sa");
    auto b = keys.functions.find("sb");
    return a != keys.functions.end() && b != keys.functions.end() && a->second == b->second;
}

}  // namespace

std::vector<std::pair<double, KeyAssignment>> enumerate_keys(ProtocolId protocol, unsigned k, unsigned n,
                                                             const KeySpace &space, bool *sampled) {
    const auto slots = key_slots(protocol);
    std::vector<Slot> free;
    std::uint64_t total = 1;
    bool overflow = false;
    for (const auto &slot : slots) {
        if (is_fixed(space, slot)) {
            continue;
        }
        free.push_back(slot);
        const auto size = domain_size(slot, k, n);
        if (!size || *size > kMaxExactTuples || total > kMaxExactTuples / *size) {
            overflow = true;
        } else {
            total *= *size;
        }
    }
    if (violates_constraints(protocol, space.fixed)) {
        throw UsageError("identification keys must differ (s_A != s_B)");
    }

    std::vector<std::pair<double, KeyAssignment>> out;
    if (!overflow && total <= kMaxExactTuples && space.samples == 0) {
        if (sampled) {
            *sampled = false;
        }
        std::vector<Domain> domains;
        for (const auto &slot : free) {
            domains.push_back(full_domain(slot, k, n, *domain_size(slot, k, n)));
        }
        std::vector<std::size_t> idx(free.size(), 0);
        for (;;) {
            KeyAssignment ka = space.fixed;
            for (std::size_t s = 0; s < free.size(); ++s) {
                if (free[s].kind == SlotKind::String) {
                    ka.strings.insert_or_assign(free[s].name, domains[s].strings[idx[s]]);
                } else {
                    ka.functions.insert_or_assign(free[s].name, domains[s].functions[idx[s]]);
                }
            }
            if (!violates_constraints(protocol, ka)) {
                out.emplace_back(0.0, std::move(ka));
            }
            std::size_t s = free.size();
            while (s > 0) {
                --s;
                if (++idx[s] < domains[s].size()) {
                    break;
                }
                idx[s] = 0;
                if (s == 0) {
                    s = free.size() + 1;
                    break;
                }
            }
            if (free.empty() || s == free.size() + 1) {
                break;
            }
        }
    } else {
        if (space.samples == 0) {
            throw UsageError("key space exceeds 2^20 tuples; exact averaging needs a sample count");
        }
        if (sampled) {
            *sampled = true;
        }
        Rng rng(space.seed);
        while (out.size() < space.samples) {
            KeyAssignment ka = space.fixed;
            for (const auto &slot : free) {
                draw(ka, slot, k, n, rng);
            }
            if (!violates_constraints(protocol, ka)) {
                out.emplace_back(0.0, std::move(ka));
            }
        }
    }
    const double w = 1.0 / static_cast<double>(out.size());
    for (auto &p : out) {
        p.first = w;
    }
    return out;
}

namespace {

// Runs one honest instance and returns Eve's view of the in-flight registers
// on `pass`.
std::pair<std::vector<std::string>, DensityMatrix> capture_view(ProtocolId protocol, int pass, const Message &message,
                                                                const KeyAssignment &keys) {
    std::optional<DensityMatrix> seen;
    std::vector<std::string> regs;
    RunOptions opt;
    opt.check_mode = CheckMode::PostSelect;
    opt.channel = [&](const PassInfo &info, QuantumState s) {
        if (info.index == pass) {
            regs = info.in_flight;
            seen = reduced_density_matrix(s, std::span<const std::string>(info.in_flight));
        }
        return s;
    };
    run_protocol(protocol, message, keys, opt);
    if (!seen) {
        throw UsageError("pass " + std::to_string(pass) + " was not reached");
    }
    return {std::move(regs), std::move(*seen)};
}

void check_pass(ProtocolId protocol, int pass) {
    if (pass < 1 || pass > static_cast<int>(expected_pass_count(protocol))) {
        throw UsageError("pass " + std::to_string(pass) + " does not exist in protocol " +
                         std::string(to_string(protocol)));
    }
}

}  // namespace

EveView eve_view(ProtocolId protocol, int pass, const std::vector<Message> &messages, unsigned n,
                 const KeySpace &space) {
    check_pass(protocol, pass);
    if (messages.empty() || messages.size() > 2) {
        throw UsageError("eve_view takes one message or a pair");
    }
    const unsigned k = messages.front().qubits();
    for (const auto &m : messages) {
        if (m.qubits() != k) {
            throw UsageError("messages must have the same dimension");
        }
    }
    EveView out;
    const auto tuples = enumerate_keys(protocol, k, n, space, &out.sampled);
    out.tuples = tuples.size();
    for (const auto &m : messages) {
        Eigen::MatrixXcd acc;
        for (const auto &[w, keys] : tuples) {
            auto [regs, rho] = capture_view(protocol, pass, m, keys);
            if (acc.size() == 0) {
                acc = Eigen::MatrixXcd::Zero(rho.matrix().rows(), rho.matrix().cols());
                out.registers = regs;
            }
            acc += w * rho.matrix();
        }
        out.views.push_back(DensityMatrix::from_matrix(std::move(acc)));
    }
    if (out.views.size() == 2) {
        out.trace_distance = trace_distance(out.views[0], out.views[1]);
    }
    return out;
}

KeyComparison eve_view_by_key(ProtocolId protocol, int pass, const Message &message, unsigned n) {
    check_pass(protocol, pass);
    if (protocol != ProtocolId::AltKeystring && protocol != ProtocolId::Alt21 && protocol != ProtocolId::Alt22) {
        throw UsageError("known-message analysis applies to alt-keystring, alt-21 and alt-22");
    }
    const unsigned k = message.qubits();
    const auto tuples = enumerate_keys(protocol, k, n, KeySpace{});
    if (tuples.size() > 256) {
        throw UsageError("too many keys for a pairwise comparison");
    }
    KeyComparison out;
    for (const auto &[w, keys] : tuples) {
        (void)w;
        std::string label = keys.strings.count("s") ? keys.strings.at("s").str() : serialize(keys.functions.at("s"));
        out.views.emplace_back(std::move(label), capture_view(protocol, pass, message, keys).second);
    }
    out.min_trace_distance = out.views.size() > 1 ? 1.0 : 0.0;
    for (std::size_t i = 0; i < out.views.size(); ++i) {
        for (std::size_t j = i + 1; j < out.views.size(); ++j) {
            out.min_trace_distance =
                std::min(out.min_trace_distance, trace_distance(out.views[i].second, out.views[j].second));
        }
    }
    return out;
}

MitmDemo mitm_demo(const BitString &classical_message, Seed seed, std::size_t samples) {
    const unsigned k = classical_message.width;
    const unsigned n = k;
    const Message message = Message::hadamard_encoded(classical_message);
    MitmDemo demo;

    EveStrategy eve;
    eve.kind = StrategyKind::FullMitm;
    eve.fe1 = random_function(k, n, derive_seed(seed, "fe1"));
    eve.fe2 = random_function(k, n, derive_seed(seed, "fe2"));

    {
        HonestInputs honest{message, {}};
        honest.keys.functions.emplace("fa", random_function(k, n, derive_seed(seed, "fa")));
        honest.keys.functions.emplace("fb", random_function(k, n, derive_seed(seed, "fb")));
        demo.basic = attack(ProtocolId::Classical, honest, eve, AttackMode{true, 1, seed});
    }

    // Authenticated: average over honest keys and Eve's guesses, all uniform.
    {
        KeySpace space;
        space.samples = samples;
        space.seed = derive_seed(seed, "keys");
        bool sampled = false;
        std::vector<std::pair<double, KeyAssignment>> honest_tuples;
        std::vector<BooleanFunction> guesses;
        const auto count = function_count(k, n);
        const auto honest_count = [&]() -> std::optional<std::uint64_t> {
            if (!count || *count > 1024) {
                return std::nullopt;
            }
            return *count * *count * *count * (*count - 1);
        }();
        const bool exact = samples == 0 && honest_count && count &&
                           *honest_count <= kMaxExactTuples / (*count * *count);
        if (!exact && samples == 0) {
            throw UsageError("key space exceeds 2^20 tuples; the authenticated demo needs a sample count");
        }
        AttackReport avg;
        avg.protocol = ProtocolId::Authenticated;
        avg.strategy = eve;
        avg.seeds = {seed};
        Accumulator acc;
        double eve_rec = 0.0;
        auto one = [&](double w, const KeyAssignment &keys, const BooleanFunction &gsa, const BooleanFunction &gsb) {
            EveStrategy e = eve;
            e.guess_sa = gsa;
            e.guess_sb = gsb;
            const auto r = attack(ProtocolId::Authenticated, HonestInputs{message, keys}, e, AttackMode{true, 1, seed});
            RunResult rr;
            rr.alice = r.alice_accept_prob;
            rr.bob = r.bob_accept_prob;
            if (r.delivered_fidelity) {
                rr.delivery = Delivery{*r.delivered_fidelity, r.recovery_probability};
            }
            acc.add(w, rr);
            eve_rec += w * r.eve_recovery_probability.value_or(0.0);
        };
        std::size_t tuples = 0;
        if (exact) {
            honest_tuples = enumerate_keys(ProtocolId::Authenticated, k, n, KeySpace{}, &sampled);
            for (std::uint64_t i = 0; i < *count; ++i) {
                guesses.push_back(function_from_index(k, n, i));
            }
            const double w = 1.0 / static_cast<double>(honest_tuples.size() * guesses.size() * guesses.size());
            for (const auto &[hw, keys] : honest_tuples) {
                (void)hw;
                for (const auto &gsa : guesses) {
                    for (const auto &gsb : guesses) {
                        one(w, keys, gsa, gsb);
                        ++tuples;
                    }
                }
            }
        } else {
            honest_tuples = enumerate_keys(ProtocolId::Authenticated, k, n, space, &sampled);
            Rng rng(derive_seed(seed, "guesses"));
            const double w = 1.0 / static_cast<double>(honest_tuples.size());
            for (const auto &[hw, keys] : honest_tuples) {
                (void)hw;
                one(w, keys, random_function(k, n, rng.next_u64()), random_function(k, n, rng.next_u64()));
                ++tuples;
            }
            avg.sampled_keys = true;
        }
        acc.write(avg);
        avg.eve_recovery_probability = eve_rec / acc.weight;
        avg.tuples = tuples;
        demo.authenticated = std::move(avg);
    }

    {
        KeyAssignment keys;
        keys.functions.emplace("fa", random_function(k, n, derive_seed(seed, "fa")));
        keys.functions.emplace("fb", random_function(k, n, derive_seed(seed, "fb")));
        const auto sa = random_function(k, n, derive_seed(seed, "sa"));
        auto sb = random_function(k, n, derive_seed(seed, "sb"));
        for (std::uint64_t i = 1; sb == sa; ++i) {
            sb = random_function(k, n, derive_seed(seed, "sb-" + std::to_string(i)));
        }
        keys.functions.emplace("sa", sa);
        keys.functions.emplace("sb", sb);
        EveStrategy insider = eve;
        insider.guess_sa = sa;
        insider.guess_sb = sb;
        demo.insider =
            attack(ProtocolId::Authenticated, HonestInputs{message, keys}, insider, AttackMode{true, 1, seed});
    }
    return demo;
}

}  // namespace qnokey
