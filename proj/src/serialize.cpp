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

#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <openssl/evp.h>

#include "error.hpp"

namespace qnokey {

double canonical_double(double x) {
    if (!std::isfinite(x)) {
        throw InvariantViolation("non-finite value in output");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

std::string canonical_dump(const Json &j) { return j.dump(); }

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw InvariantViolation("SHA-256 computation failed");
    }
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

Json complex_to_json(Complex z) { return Json::array({canonical_double(z.real()), canonical_double(z.imag())}); }

Complex complex_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw UsageError("complex numbers are written as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json state_to_json(const QuantumState &state) {
    Json layout = Json::array();
    for (const auto &r : state.layout().registers()) {
        layout.push_back(Json::array({r.name, r.width}));
    }
    Json amps = Json::array();
    for (const auto &a : state.amplitudes()) {
        amps.push_back(complex_to_json(a));
    }
    return Json{{"layout", std::move(layout)}, {"amplitudes", std::move(amps)}};
}

QuantumState state_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("layout") || !j.contains("amplitudes")) {
        throw UsageError("state JSON needs 'layout' and 'amplitudes'");
    }
    std::vector<Register> regs;
    for (const auto &r : j.at("layout")) {
        regs.push_back(Register{r.at(0).get<std::string>(), r.at(1).get<unsigned>()});
    }
    std::vector<Complex> amps;
    for (const auto &a : j.at("amplitudes")) {
        amps.push_back(complex_from_json(a));
    }
    RegisterLayout layout(std::move(regs));
    if (amps.size() != layout.dimension()) {
        throw UsageError("state JSON has the wrong number of amplitudes");
    }
    return make_state(layout, amps, false);
}

Json state_digest(const QuantumState &state) {
    return Json{{"sha256", sha256_hex(canonical_dump(state_to_json(state)))}};
}

Json density_to_json(const DensityMatrix &rho) {
    Json rows = Json::array();
    const auto &m = rho.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json gates_to_json(const GateList &gates) {
    Json out = Json::array();
    for (const auto &g : gates) {
        out.push_back(Json{{"gate", gate_name(g.kind)}, {"controls", g.controls}, {"target", g.target}});
    }
    return out;
}

namespace {

Json snapshot(const QuantumState &s, bool digest) { return digest ? state_digest(s) : state_to_json(s); }

template <typename T>
void put_optional(Json &j, const char *key, const std::optional<T> &v) {
    if (v) {
        if constexpr (std::is_floating_point_v<T>) {
            j[key] = canonical_double(*v);
        } else {
            j[key] = *v;
        }
    }
}

}  // namespace

Json transcript_to_json(const ProtocolTranscript &t, bool digest) {
    Json j;
    j["protocol"] = std::string(to_string(t.protocol));
    j["keys"] = t.keys;
    Json passes = Json::array();
    for (const auto &p : t.passes) {
        Json pj{{"index", p.index},
                {"label", p.label},
                {"direction", std::string(to_string(p.direction))},
                {"in_flight", p.in_flight},
                {"sent", snapshot(p.sent, digest)}};
        if (p.received) {
            pj["received"] = snapshot(*p.received, digest);
        }
        passes.push_back(std::move(pj));
    }
    j["passes"] = std::move(passes);
    Json checks = Json::array();
    for (const auto &c : t.checks) {
        Json cj{{"label", c.label},
                {"party", c.party},
                {"register", c.register_name},
                {"zero_probability", canonical_double(c.zero_probability)},
                {"accepted", c.accepted}};
        if (c.outcome) {
            cj["outcome"] = c.outcome->str();
        }
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    Json events = Json::array();
    for (const auto &e : t.events) {
        events.push_back(Json{{"label", e.label}, {"detail", e.detail}});
    }
    j["events"] = std::move(events);
    j["aborted"] = t.aborted;
    if (t.aborted) {
        j["abort_reason"] = t.abort_reason;
    }
    if (t.outcome) {
        const auto &o = *t.outcome;
        Json oj{{"fidelity", canonical_double(o.fidelity)}};
        if (o.delivered) {
            oj["delivered"] = snapshot(*o.delivered, digest);
        }
        if (o.classical_message) {
            oj["classical_message"] = o.classical_message->str();
            oj["message_probability"] = canonical_double(o.message_probability);
            oj["recovery_probability"] = canonical_double(o.recovery_probability);
        }
        j["outcome"] = std::move(oj);
    }
    if (t.final_state) {
        j["final_state"] = snapshot(*t.final_state, digest);
    }
    if (!t.weakness.empty()) {
        j["weakness"] = t.weakness;
    }
    return j;
}

Json strategy_to_json(const EveStrategy &s) {
    Json j{{"kind", std::string(to_string(s.kind))}};
    if (s.pass != 0) {
        j["pass"] = s.pass;
    }
    if (!s.registers.empty()) {
        j["registers"] = s.registers;
    }
    if (!s.target.empty()) {
        j["target"] = s.target;
    }
    if (s.kind == StrategyKind::Bitflip) {
        j["mask"] = s.mask;
    }
    auto fn = [&](const char *key, const std::optional<BooleanFunction> &f) {
        if (f) {
            j[key] = serialize(*f);
        }
    };
    fn("fe", s.fe);
    fn("fe1", s.fe1);
    fn("fe2", s.fe2);
    fn("guess_sa", s.guess_sa);
    fn("guess_sb", s.guess_sb);
    if (s.kind == StrategyKind::SubstituteOracle) {
        j["keep_original"] = s.keep_original;
    }
    return j;
}

Json report_to_json(const AttackReport &r) {
    Json j;
    j["protocol"] = std::string(to_string(r.protocol));
    j["strategy"] = strategy_to_json(r.strategy);
    j["mode"] = r.exact ? "exact" : "monte-carlo";
    j["alice_accept_prob"] = canonical_double(r.alice_accept_prob);
    put_optional(j, "bob_accept_prob", r.bob_accept_prob);
    j["both_accept_prob"] = canonical_double(r.both_accept_prob);
    put_optional(j, "delivered_fidelity", r.delivered_fidelity);
    put_optional(j, "recovery_probability", r.recovery_probability);
    if (r.eve_recovered) {
        j["eve_recovered"] = r.eve_recovered->str();
    }
    put_optional(j, "eve_recovery_probability", r.eve_recovery_probability);
    put_optional(j, "eve_distinguishability", r.eve_distinguishability);
    j["trials"] = r.trials;
    j["seeds"] = r.seeds;
    j["tuples"] = r.tuples;
    j["sampled_keys"] = r.sampled_keys;
    if (!r.views.empty()) {
        Json views = Json::object();
        for (const auto &[name, rho] : r.views) {
            views[name] = density_to_json(rho);
        }
        j["views"] = std::move(views);
    }
    return j;
}

Json eve_view_to_json(const EveView &v) {
    Json j;
    j["registers"] = v.registers;
    Json views = Json::array();
    for (const auto &rho : v.views) {
        views.push_back(density_to_json(rho));
    }
    j["density_matrices"] = std::move(views);
    put_optional(j, "trace_distance", v.trace_distance);
    j["tuples"] = v.tuples;
    j["sampled"] = v.sampled;
    return j;
}

Json key_comparison_to_json(const KeyComparison &c) {
    Json views = Json::object();
    for (const auto &[key, rho] : c.views) {
        views[key] = density_to_json(rho);
    }
    return Json{{"views", std::move(views)}, {"min_trace_distance", canonical_double(c.min_trace_distance)}};
}

std::string format_prob(double p) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9f", p == 0.0 ? 0.0 : p);
    return buf;
}

std::string format_state(const QuantumState &state) {
    const auto &layout = state.layout();
    std::string out;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const Complex a = state.amplitudes()[i];
        if (std::abs(a) < 1e-12) {
            continue;
        }
        char buf[80];
        const double re = std::abs(a.real()) < 1e-12 ? 0.0 : a.real();
        const double im = std::abs(a.imag()) < 1e-12 ? 0.0 : a.imag();
        if (im == 0.0) {
            std::snprintf(buf, sizeof buf, "%+.9f", re);
        } else if (re == 0.0) {
            std::snprintf(buf, sizeof buf, "%+.9fi", im);
        } else {
            std::snprintf(buf, sizeof buf, "(%+.9f%+.9fi)", re, im);
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += buf;
        out += '|';
        bool first = true;
        for (const auto &r : layout.registers()) {
            if (!first) {
                out += ',';
            }
            first = false;
            out += BitString{layout.extract(i, r.name), r.width}.str();
        }
        out += '>';
    }
    return out;
}

}  // namespace qnokey
