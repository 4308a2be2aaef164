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

#include "runner.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace qnokey {

namespace {

enum class KeyKind { Function, String, Permutation };

struct KeySlot {
    const char *name;
    KeyKind kind;
};

std::vector<KeySlot> honest_slots(ProtocolId p) {
    switch (p) {
    case ProtocolId::Basic:
    case ProtocolId::Classical:
    case ProtocolId::Alt20:
        return {{"fa", KeyKind::Function}, {"fb", KeyKind::Function}};
    case ProtocolId::Authenticated:
        return {{"fa", KeyKind::Function},
                {"fb", KeyKind::Function},
                {"sa", KeyKind::Function},
                {"sb", KeyKind::Function}};
    case ProtocolId::Alt19:
        return {{"sa", KeyKind::String}, {"sb", KeyKind::String}};
    case ProtocolId::AltKeystring:
        return {{"s", KeyKind::String}};
    case ProtocolId::Alt21:
        return {{"s", KeyKind::Permutation}};
    case ProtocolId::Alt22:
        return {{"s", KeyKind::Function}};
    }
    return {};
}

bool is_random(const Json &v) { return v.is_string() && v.get<std::string>() == "random"; }

template <typename T>
T get_or(const Json &j, const char *key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception &) {
        throw UsageError(std::string("config field '") + key + "' has the wrong type");
    }
}

BooleanFunction random_permutation(unsigned k, Seed seed) {
    std::vector<std::uint32_t> t(std::size_t{1} << k);
    std::iota(t.begin(), t.end(), 0U);
    Rng rng(seed);
    for (std::size_t i = t.size(); i > 1; --i) {
        std::swap(t[i - 1], t[rng.uniform_below(i)]);
    }
    return BooleanFunction(k, k, std::move(t));
}

// Width hints taken from explicit inputs, used when k or n is not given.
void infer_widths(const Json &req, std::optional<unsigned> &k, std::optional<unsigned> &n) {
    const Json msg = req.value("message", Json());
    if (!k && msg.is_string() && !is_random(msg)) {
        k = static_cast<unsigned>(msg.get<std::string>().size());
    }
    if (!k && msg.is_object() && msg.contains("amplitudes")) {
        const auto d = msg.at("amplitudes").size();
        if (d >= 2 && (d & (d - 1)) == 0) {
            k = static_cast<unsigned>(std::countr_zero(d));
        }
    }
    if (!k && req.contains("known_message")) {
        k = static_cast<unsigned>(req.at("known_message").get<std::string>().size());
    }
    if (!k && req.contains("messages") && !req.at("messages").empty()) {
        k = static_cast<unsigned>(req.at("messages").at(0).get<std::string>().size());
    }
    if (req.contains("keys")) {
        for (const auto &[name, v] : req.at("keys").items()) {
            if (!v.is_string() || is_random(v)) {
                continue;
            }
            const std::string text = v.get<std::string>();
            if (text.find(':') != std::string::npos || text == "x" || text == "xbar" ||
                ((text == "0" || text == "1") && name[0] == 'f')) {
                const auto f = parse_function(text);
                if (!k) {
                    k = f.arity();
                }
                if (!n) {
                    n = f.width();
                }
            }
        }
    }
}

Message message_from_config(const Json &m) {
    if (m.contains("bits")) {
        const auto bits = BitString::parse(m.at("bits").get<std::string>());
        return get_or(m, "hadamard", false) ? Message::hadamard_encoded(bits) : Message::basis(bits);
    }
    std::vector<Complex> amps;
    for (const auto &a : m.at("amplitudes")) {
        amps.push_back(complex_from_json(a));
    }
    return Message::quantum(std::move(amps));
}

Json resolve_message(const Json &req, ProtocolId protocol, unsigned k, Seed seed, const std::string &tag) {
    const bool classical = protocol == ProtocolId::Classical;
    const bool hadamard = classical || get_or(req, "hadamard", false);
    const Json msg = req.value("message", Json("random"));
    Json out;
    if (is_random(msg)) {
        if (classical) {
            Rng rng(derive_seed(seed, tag));
            out["bits"] = BitString{rng.uniform_bits(k), k}.str();
            out["hadamard"] = true;
        } else {
            const auto amps = random_amplitudes(std::size_t{1} << k, derive_seed(seed, tag));
            Json a = Json::array();
            for (const auto &z : amps) {
                a.push_back(complex_to_json(z));
            }
            out["amplitudes"] = std::move(a);
        }
        return out;
    }
    if (msg.is_string()) {
        const auto bits = BitString::parse(msg.get<std::string>());
        if (bits.width != k) {
            throw UsageError("message has " + std::to_string(bits.width) + " bits but k = " + std::to_string(k));
        }
        out["bits"] = bits.str();
        out["hadamard"] = hadamard;
        return out;
    }
    if (msg.is_object() && msg.contains("amplitudes")) {
        if (classical) {
            throw UsageError("the classical protocol sends a bit string; use --message <bits>");
        }
        if (msg.at("amplitudes").size() != (std::size_t{1} << k)) {
            throw UsageError("message amplitudes do not match k = " + std::to_string(k));
        }
        // Validate (norm within tolerance) and store the normalized vector.
        const Message m = message_from_config(msg);
        Json a = Json::array();
        for (const auto &z : m.amplitudes) {
            a.push_back(complex_to_json(z));
        }
        out["amplitudes"] = std::move(a);
        return out;
    }
    throw UsageError("message must be a bit string, 'random' or an amplitude list");
}

std::string key_text(const KeySlot &slot, const Json &given, unsigned k, unsigned n, Seed seed) {
    const Seed s = derive_seed(seed, std::string("key-") + slot.name);
    const bool random = given.is_null() || is_random(given);
    if (!given.is_null() && !given.is_string()) {
        throw UsageError(std::string("key ") + slot.name + " must be a string");
    }
    switch (slot.kind) {
    case KeyKind::String: {
        if (random) {
            Rng rng(s);
            return BitString{rng.uniform_bits(k), k}.str();
        }
        const auto b = BitString::parse(given.get<std::string>());
        if (b.width != k) {
            throw UsageError(std::string("key ") + slot.name + " must have " + std::to_string(k) + " bits");
        }
        return b.str();
    }
    case KeyKind::Permutation: {
        if (random) {
            return serialize(random_permutation(k, s));
        }
        const auto f = parse_function(given.get<std::string>());
        if (is_permutation(f) != std::optional<bool>(true)) {
            throw UsageError("scheme requires bijective s");
        }
        return serialize(f);
    }
    case KeyKind::Function:
        break;
    }
    if (random) {
        return serialize(random_function(k, n, s));
    }
    const auto f = parse_function(given.get<std::string>());
    if (f.arity() != k || f.width() != n) {
        throw UsageError(std::string("key ") + slot.name + " must map " + std::to_string(k) + " bits to " +
                         std::to_string(n) + " bits");
    }
    return serialize(f);
}

Json resolve_keys(const Json &req, ProtocolId protocol, unsigned k, unsigned n, Seed seed) {
    const Json given = req.value("keys", Json::object());
    for (const auto &[name, v] : given.items()) {
        bool known = false;
        for (const auto &slot : honest_slots(protocol)) {
            known = known || name == slot.name;
        }
        if (!known) {
            throw UsageError("protocol " + std::string(to_string(protocol)) + " does not use key '" + name + "'");
        }
    }
    Json out = Json::object();
    for (const auto &slot : honest_slots(protocol)) {
        out[slot.name] = key_text(slot, given.value(slot.name, Json()), k, n, seed);
    }
    if (protocol == ProtocolId::Authenticated && out["sa"] == out["sb"]) {
        if (given.contains("sb") && !is_random(given.at("sb"))) {
            throw UsageError("identification keys must differ (s_A != s_B)");
        }
        for (std::uint64_t i = 1; out["sa"] == out["sb"]; ++i) {
            out["sb"] = serialize(random_function(k, n, derive_seed(seed, "key-sb-" + std::to_string(i))));
        }
    }
    return out;
}

KeyAssignment keys_from_config(ProtocolId protocol, const Json &keys) {
    KeyAssignment out;
    for (const auto &slot : honest_slots(protocol)) {
        const std::string text = keys.at(slot.name).get<std::string>();
        if (slot.kind == KeyKind::String) {
            out.strings.emplace(slot.name, BitString::parse(text));
        } else {
            out.functions.emplace(slot.name, parse_function(text));
        }
    }
    return out;
}

Json resolve_strategy(const Json &req, ProtocolId protocol, const Json &keys, unsigned k, unsigned n, Seed seed) {
    if (!req.contains("strategy")) {
        throw UsageError("attack needs --strategy");
    }
    Json s = req.at("strategy");
    if (s.is_string()) {
        s = Json{{"kind", s}};
    }
    const auto kind = parse_strategy(get_or<std::string>(s, "kind", ""));
    Json out{{"kind", std::string(to_string(kind))}};
    if (get_or(s, "pass", 0) != 0) {
        out["pass"] = get_or(s, "pass", 0);
    }
    auto fn = [&](const char *name, unsigned arity, unsigned width) {
        const Json v = s.value(name, Json());
        if (v.is_null() || is_random(v)) {
            return serialize(random_function(arity, width, derive_seed(seed, std::string("eve-") + name)));
        }
        const auto f = parse_function(v.get<std::string>());
        if (f.arity() != arity || f.width() != width) {
            throw UsageError(std::string(name) + " must map " + std::to_string(arity) + " bits to " +
                             std::to_string(width) + " bits");
        }
        return serialize(f);
    };
    switch (kind) {
    case StrategyKind::PassiveInspect:
        break;
    case StrategyKind::InterceptMeasureResend:
        if (s.contains("registers")) {
            out["registers"] = s.at("registers");
        }
        break;
    case StrategyKind::SubstituteOracle: {
        const std::string target = get_or<std::string>(s, "target", kAliceReg);
        out["target"] = target;
        out["fe"] = fn("fe", k, target == kMessageReg ? k : n);
        out["keep_original"] = get_or(s, "keep_original", true);
        break;
    }
    case StrategyKind::Bitflip: {
        const std::string target = get_or<std::string>(s, "target", kMessageReg);
        out["target"] = target;
        out["mask"] = get_or<std::string>(s, "mask", std::string(target == kMessageReg ? k : n, '1'));
        BitString::parse(out["mask"].get<std::string>());
        break;
    }
    case StrategyKind::FullMitm:
        out["fe1"] = fn("fe1", k, n);
        out["fe2"] = fn("fe2", k, n);
        if (protocol == ProtocolId::Authenticated) {
            if (get_or(req, "insider", false)) {
                out["guess_sa"] = keys.at("sa");
                out["guess_sb"] = keys.at("sb");
            } else {
                out["guess_sa"] = fn("guess_sa", k, n);
                out["guess_sb"] = fn("guess_sb", k, n);
            }
        }
        break;
    }
    return out;
}

EveStrategy strategy_from_config(const Json &s) {
    EveStrategy out;
    out.kind = parse_strategy(s.at("kind").get<std::string>());
    out.pass = get_or(s, "pass", 0);
    out.registers = get_or(s, "registers", std::vector<std::string>{});
    out.target = get_or<std::string>(s, "target", "");
    if (s.contains("mask")) {
        out.mask = BitString::parse(s.at("mask").get<std::string>()).value;
    }
    out.keep_original = get_or(s, "keep_original", true);
    auto fn = [&](const char *name) -> std::optional<BooleanFunction> {
        if (!s.contains(name)) {
            return std::nullopt;
        }
        return parse_function(s.at(name).get<std::string>());
    };
    out.fe = fn("fe");
    out.fe1 = fn("fe1");
    out.fe2 = fn("fe2");
    out.guess_sa = fn("guess_sa");
    out.guess_sb = fn("guess_sb");
    return out;
}

Json envelope(const Json &config) {
    return Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", config.at("command")},
                {"config", config}};
}

// ---------------------------------------------------------------------------
// Summaries

void summarize_transcript(std::ostringstream &os, const ProtocolTranscript &t, unsigned k, bool digest) {
    for (const auto &p : t.passes) {
        os << "pass " << p.index << " " << p.label << " " << to_string(p.direction) << ": ";
        const QuantumState &s = p.received ? *p.received : p.sent;
        if (k <= 3 && !digest) {
            os << format_state(p.sent);
        } else {
            os << "sha256 " << state_digest(p.sent).at("sha256").get<std::string>();
        }
        os << "\n";
        if (p.received) {
            os << "  channel altered the state; received: "
               << (k <= 3 && !digest ? format_state(s) : state_digest(s).at("sha256").get<std::string>()) << "\n";
        }
    }
    for (const auto &c : t.checks) {
        os << "check " << c.label << " (" << c.party << ", register " << c.register_name
           << "): p0=" << format_prob(c.zero_probability) << " " << (c.accepted ? "accepted" : "rejected") << "\n";
    }
    for (const auto &e : t.events) {
        os << "event " << e.label << ": " << e.detail << "\n";
    }
    if (!t.weakness.empty()) {
        os << "weakness: " << t.weakness << "\n";
    }
    if (t.aborted) {
        os << "aborted: " << t.abort_reason << "\n";
        return;
    }
    if (t.outcome) {
        os << "fidelity: " << format_prob(t.outcome->fidelity) << "\n";
        if (t.outcome->classical_message) {
            os << "recovered: " << t.outcome->classical_message->str() << "\n";
        }
    }
}

std::string attack_summary(const AttackReport &r) {
    std::ostringstream os;
    os << "protocol: " << to_string(r.protocol) << "\n";
    os << "strategy: " << to_string(r.strategy.kind) << "\n";
    os << "mode: " << (r.exact ? "exact" : "monte-carlo (" + std::to_string(r.trials) + " trials)") << "\n";
    os << "alice_accept_prob: " << format_prob(r.alice_accept_prob) << "\n";
    if (r.bob_accept_prob) {
        os << "bob_accept_prob: " << format_prob(*r.bob_accept_prob) << "\n";
    }
    os << "both_accept_prob: " << format_prob(r.both_accept_prob) << "\n";
    if (r.delivered_fidelity) {
        os << "delivered_fidelity: " << format_prob(*r.delivered_fidelity) << "\n";
    }
    if (r.recovery_probability) {
        os << "recovery_probability: " << format_prob(*r.recovery_probability) << "\n";
    }
    if (r.eve_recovery_probability) {
        os << "eve_recovery_probability: " << format_prob(*r.eve_recovery_probability) << "\n";
    }
    if (r.eve_recovered) {
        os << "eve_recovered: " << r.eve_recovered->str() << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Commands

CommandResult exec_run(const Json &config) {
    const auto protocol = parse_protocol(config.at("protocol").get<std::string>());
    const unsigned k = config.at("k").get<unsigned>();
    const bool digest = config.at("digest").get<bool>();
    RunOptions opt;
    opt.seed = config.at("seed").get<Seed>();
    opt.check_mode = config.at("exact").get<bool>() ? CheckMode::PostSelect : CheckMode::Sample;

    CommandResult res;
    res.document = envelope(config);
    std::ostringstream os;
    os << "protocol: " << to_string(protocol) << "\n";
    os << "k: " << k << " n: " << config.at("n").get<unsigned>() << "\n";

    std::vector<ProtocolTranscript> transcripts;
    if (config.contains("messages")) {
        std::vector<Message> messages;
        for (const auto &m : config.at("messages")) {
            messages.push_back(message_from_config(m));
        }
        transcripts = run_sequence(messages, parse_key_policy(config.at("key_policy").get<std::string>()),
                                   config.at("n").get<unsigned>(), opt);
        Json arr = Json::array();
        for (const auto &t : transcripts) {
            arr.push_back(transcript_to_json(t, digest));
        }
        res.document["transcripts"] = std::move(arr);
        os << "key_policy: " << config.at("key_policy").get<std::string>() << "\n";
        for (std::size_t i = 0; i < transcripts.size(); ++i) {
            os << "-- state " << i << "\n";
            summarize_transcript(os, transcripts[i], k, digest);
        }
    } else {
        const Message message = message_from_config(config.at("message"));
        const auto keys = keys_from_config(protocol, config.at("keys"));
        transcripts.push_back(run_protocol(protocol, message, keys, opt));
        res.document["transcript"] = transcript_to_json(transcripts.front(), digest);
        summarize_transcript(os, transcripts.front(), k, digest);
    }
    for (const auto &t : transcripts) {
        if (t.aborted) {
            res.status = kExitCheckFailed;
        }
    }
    res.summary = os.str();
    return res;
}

CommandResult exec_attack(const Json &config) {
    const auto protocol = parse_protocol(config.at("protocol").get<std::string>());
    HonestInputs honest{message_from_config(config.at("message")), keys_from_config(protocol, config.at("keys"))};
    AttackMode mode;
    mode.exact = config.at("exact").get<bool>();
    mode.trials = config.at("trials").get<std::size_t>();
    mode.seed = config.at("seed").get<Seed>();
    const auto report = attack(protocol, honest, strategy_from_config(config.at("strategy")), mode);
    CommandResult res;
    res.document = envelope(config);
    res.document["report"] = report_to_json(report);
    res.summary = attack_summary(report);
    return res;
}

CommandResult exec_analyze(const Json &config) {
    const auto protocol = parse_protocol(config.at("protocol").get<std::string>());
    const unsigned n = config.at("n").get<unsigned>();
    const int pass = config.at("pass").get<int>();
    CommandResult res;
    res.document = envelope(config);
    std::ostringstream os;
    os << "protocol: " << to_string(protocol) << "\n";
    os << "pass: " << pass << "\n";
    if (config.contains("known_message")) {
        const Message m = message_from_config(config.at("known_message"));
        const auto cmp = eve_view_by_key(protocol, pass, m, n);
        res.document["analysis"] = key_comparison_to_json(cmp);
        os << "keys: " << cmp.views.size() << "\n";
        os << "trace_distance: " << format_prob(cmp.min_trace_distance) << " (minimum over distinct keys)\n";
    } else {
        std::vector<Message> messages;
        for (const auto &m : config.at("messages")) {
            messages.push_back(message_from_config(m));
        }
        KeySpace space;
        space.samples = config.at("samples").get<std::size_t>();
        space.seed = derive_seed(config.at("seed").get<Seed>(), "keys");
        const auto view = eve_view(protocol, pass, messages, n, space);
        res.document["analysis"] = eve_view_to_json(view);
        os << "registers:";
        for (const auto &r : view.registers) {
            os << " " << r;
        }
        os << "\n";
        os << "key tuples: " << view.tuples << (view.sampled ? " (sampled)" : " (exact)") << "\n";
        if (view.trace_distance) {
            os << "trace_distance: " << format_prob(*view.trace_distance) << "\n";
        }
    }
    res.summary = os.str();
    return res;
}

// First place where two documents differ, as a JSON-pointer-like path.
std::optional<std::string> first_difference(const Json &a, const Json &b, const std::string &path) {
    if (a.is_number() && b.is_number()) {
        if (std::abs(a.get<double>() - b.get<double>()) > kStateTolerance) {
            return path;
        }
        return std::nullopt;
    }
    if (a.type() != b.type()) {
        return path;
    }
    if (a.is_object()) {
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) {
                return path + "/" + it.key();
            }
            if (auto d = first_difference(it.value(), b.at(it.key()), path + "/" + it.key())) {
                return d;
            }
        }
        for (auto it = b.begin(); it != b.end(); ++it) {
            if (!a.contains(it.key())) {
                return path + "/" + it.key();
            }
        }
        return std::nullopt;
    }
    if (a.is_array()) {
        const std::size_t common = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < common; ++i) {
            if (auto d = first_difference(a[i], b[i], path + "/" + std::to_string(i))) {
                return d;
            }
        }
        if (a.size() != b.size()) {
            return path + "/" + std::to_string(common);
        }
        return std::nullopt;
    }
    return a == b ? std::nullopt : std::optional<std::string>(path);
}

// Names the protocol step a divergent path falls in.
std::string describe_step(const Json &doc, const std::string &path) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '/')) {
        if (!part.empty()) {
            parts.push_back(part);
        }
    }
    std::size_t i = 0;
    const Json *transcript = nullptr;
    std::string prefix;
    if (parts.size() > 1 && parts[0] == "transcript") {
        transcript = &doc.at("transcript");
        i = 1;
    } else if (parts.size() > 2 && parts[0] == "transcripts") {
        transcript = &doc.at("transcripts").at(std::stoul(parts[1]));
        prefix = "state " + parts[1] + ", ";
        i = 2;
    }
    if (transcript && parts.size() > i + 1 && (parts[i] == "passes" || parts[i] == "checks")) {
        const auto idx = std::stoul(parts[i + 1]);
        const Json &arr = transcript->at(parts[i]);
        if (idx < arr.size()) {
            const Json &rec = arr.at(idx);
            if (parts[i] == "passes") {
                return prefix + "pass " + std::to_string(rec.at("index").get<int>()) + " (" +
                       rec.at("label").get<std::string>() + ")";
            }
            return prefix + "check " + rec.at("label").get<std::string>();
        }
    }
    if (transcript && parts.size() > i) {
        return prefix + parts[i];
    }
    return parts.empty() ? "document" : parts[0];
}

}  // namespace

Json resolve_config(std::string_view command, const Json &request) {
    if (!request.is_object()) {
        throw UsageError("request must be a JSON object");
    }
    if (command != "run" && command != "attack" && command != "analyze") {
        throw UsageError("unknown command '" + std::string(command) + "'");
    }
    if (!request.contains("protocol")) {
        throw UsageError("--protocol is required");
    }
    const auto protocol = parse_protocol(request.at("protocol").get<std::string>());
    std::optional<unsigned> k;
    std::optional<unsigned> n;
    if (request.contains("k")) {
        k = request.at("k").get<unsigned>();
    }
    if (request.contains("n")) {
        n = request.at("n").get<unsigned>();
    }
    infer_widths(request, k, n);
    if (!k) {
        k = 1;
    }
    if (!n) {
        n = *k;
    }
    if (*k < 1 || *k > kMaxArity || *n < 1 || *n > kMaxWidth) {
        throw UsageError("k must be in 1..16 and n in 1..32");
    }
    const Seed seed = get_or<Seed>(request, "seed", 0);

    Json config{{"command", std::string(command)},
                {"protocol", std::string(to_string(protocol))},
                {"k", *k},
                {"n", *n},
                {"seed", seed}};

    if (command == "analyze") {
        config["pass"] = get_or(request, "pass", 1);
        config["samples"] = get_or<std::size_t>(request, "samples", 0);
        const bool hadamard = protocol == ProtocolId::Classical || get_or(request, "hadamard", false);
        auto bits_message = [&](const std::string &text) {
            const auto b = BitString::parse(text);
            if (b.width != *k) {
                throw UsageError("message '" + text + "' does not have k = " + std::to_string(*k) + " bits");
            }
            return Json{{"bits", b.str()}, {"hadamard", hadamard}};
        };
        if (request.contains("known_message")) {
            config["known_message"] = bits_message(request.at("known_message").get<std::string>());
        } else {
            if (!request.contains("messages") || request.at("messages").empty() || request.at("messages").size() > 2) {
                throw UsageError("analyze needs --messages m0[,m1] or --known-message m");
            }
            Json msgs = Json::array();
            for (const auto &m : request.at("messages")) {
                msgs.push_back(bits_message(m.get<std::string>()));
            }
            config["messages"] = std::move(msgs);
        }
        return config;
    }

    config["digest"] = get_or(request, "digest", false);
    config["exact"] = get_or(request, "exact", false);
    const std::size_t count = get_or<std::size_t>(request, "count", 1);
    if (command == "run" && count > 1) {
        if (protocol != ProtocolId::Basic) {
            throw UsageError("--count runs a message sequence through the basic protocol only");
        }
        if (!request.contains("key_policy")) {
            throw UsageError("a message sequence needs an explicit --key-policy (fresh or reused)");
        }
        config["key_policy"] = std::string(to_string(parse_key_policy(request.at("key_policy").get<std::string>())));
        Json msgs = Json::array();
        for (std::size_t i = 0; i < count; ++i) {
            msgs.push_back(resolve_message(request, protocol, *k, seed, "message-" + std::to_string(i)));
        }
        config["messages"] = std::move(msgs);
        return config;
    }
    config["message"] = resolve_message(request, protocol, *k, seed, "message");
    config["keys"] = resolve_keys(request, protocol, *k, *n, seed);
    if (command == "attack") {
        config["trials"] = get_or<std::size_t>(request, "trials", 10000);
        config["strategy"] = resolve_strategy(request, protocol, config["keys"], *k, *n, seed);
    }
    return config;
}

CommandResult execute_config(const Json &config) {
    const std::string command = config.at("command").get<std::string>();
    if (command == "run") {
        return exec_run(config);
    }
    if (command == "attack") {
        return exec_attack(config);
    }
    if (command == "analyze") {
        return exec_analyze(config);
    }
    throw UsageError("unknown command '" + command + "'");
}

CommandResult run_command(std::string_view command, const Json &request) {
    const Json config = Json::parse(canonical_dump(resolve_config(command, request)));
    return execute_config(config);
}

CommandResult verify_document(const Json &document) {
    if (!document.is_object() || !document.contains("config") || !document.contains("version")) {
        throw UsageError("not a qnokey output file (missing config or version)");
    }
    CommandResult res;
    res.document = Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", "verify"}};
    if (document.at("version") != kToolVersion) {
        res.status = kExitCheckFailed;
        res.summary = "verify: FAIL\nfile written by version " + document.at("version").dump() + ", this is " +
                      kToolVersion + "\n";
        res.document["match"] = false;
        return res;
    }
    const auto fresh = execute_config(document.at("config"));
    const auto diff = first_difference(document, fresh.document, "");
    res.document["match"] = !diff.has_value();
    if (!diff) {
        res.summary = "verify: PASS\n";
        return res;
    }
    res.status = kExitCheckFailed;
    res.document["path"] = *diff;
    res.document["step"] = describe_step(document, *diff);
    res.summary = "verify: FAIL\nfirst divergent step: " + describe_step(document, *diff) + "\nat " + *diff + "\n";
    return res;
}

}  // namespace qnokey
