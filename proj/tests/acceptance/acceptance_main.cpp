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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code
// is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "adversary.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "protocol.hpp"
#include "runner.hpp"
#include "support/oracles.hpp"

namespace qnokey {
namespace {

using oracles::Mat;
using oracles::Table;
using oracles::Vec;

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string &why) {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
    void require(bool ok, const std::string &why) {
        if (!ok) {
            fail(why);
        }
    }
};

Vec as_vec(const QuantumState &s) { return oracles::from_std(s.amplitudes()); }

BooleanFunction fn(unsigned k, unsigned n, const Table &t) { return BooleanFunction(k, n, t); }

Message random_message(unsigned k, std::mt19937_64 &gen) {
    return Message::quantum(oracles::to_std(oracles::random_state(std::size_t{1} << k, gen)));
}

// |<alpha|delivered>|^2 computed from raw amplitudes.
double overlap(const Message &m, const Outcome &o) {
    if (!o.delivered) {
        return -1.0;
    }
    return std::norm(oracles::from_std(m.amplitudes).dot(as_vec(*o.delivered)));
}

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

bool cleared(const ProtocolTranscript &t) {
    if (!t.outcome || !t.outcome->delivered || t.outcome->delivered->layout().registers().size() != 1) {
        return false;
    }
    for (const auto &e : t.events) {
        if (e.label == "uncleared-register") {
            return false;
        }
    }
    return true;
}

// 1. Three-pass round trip.
Verdict round_trip() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 gen(1001);
    int runs = 0;
    auto check = [&](const Message &m, const BooleanFunction &fa, const BooleanFunction &fb) {
        const auto t = run_basic_protocol(m, fa, fb);
        ++runs;
        v.require(!t.aborted && cleared(t), "ancilla left behind");
        const double f = overlap(m, *t.outcome);
        v.require(std::abs(f - 1.0) <= 1e-9, "fidelity " + fmt("%.12f", f));
    };
    for (int i = 0; i < 20; ++i) {
        const Message m = random_message(1, gen);
        for (std::uint64_t a = 0; a < 4; ++a) {
            for (std::uint64_t b = 0; b < 4; ++b) {
                check(m, fn(1, 1, oracles::table_from_index(1, 1, a)), fn(1, 1, oracles::table_from_index(1, 1, b)));
            }
        }
    }
    for (unsigned k = 2; k <= 3; ++k) {
        for (int i = 0; i < 100; ++i) {
            const unsigned n = 1 + static_cast<unsigned>(gen() % 3);
            check(random_message(k, gen), fn(k, n, oracles::random_table(k, n, gen)),
                  fn(k, n, oracles::random_table(k, n, gen)));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(secs < 5.0, "runtime " + fmt("%.2f s", secs));
    if (v.pass) {
        v.detail = std::to_string(runs) + " runs in " + fmt("%.3f s", secs);
    }
    return v;
}

// 2. Single-bit classical example over every key pair and both messages.
Verdict worked_example() {
    Verdict v;
    int recovered = 0;
    const double r = 1 / std::sqrt(2.0);
    for (std::uint64_t a = 0; a < 4; ++a) {
        const Table ta = oracles::table_from_index(1, 1, a);
        for (std::uint64_t b = 0; b < 4; ++b) {
            for (std::uint64_t mp = 0; mp < 2; ++mp) {
                RunOptions opt;
                opt.seed = a * 8 + b * 2 + mp;
                const auto t = run_classical_protocol(BitString{mp, 1}, fn(1, 1, ta),
                                                      fn(1, 1, oracles::table_from_index(1, 1, b)), opt);
                // sum_m (-1)^(m m') |m, F_A(m)> / sqrt 2
                Vec want = Vec::Zero(4);
                for (std::uint64_t m = 0; m < 2; ++m) {
                    want((m << 1) | ta[m]) = (m & mp) ? -r : r;
                }
                v.require(oracles::max_abs_diff(as_vec(t.passes.at(0).sent), want) <= 1e-12, "pass-1 snapshot");
                if (t.outcome && t.outcome->classical_message && t.outcome->classical_message->value == mp &&
                    t.outcome->recovery_probability >= 1.0 - 1e-12) {
                    ++recovered;
                }
            }
        }
    }
    // F_A = x, F_B = xbar, m' = 0 in explicit form.
    const auto t = run_classical_protocol(BitString{0, 1}, parse_function("x"), parse_function("xbar"));
    Vec bell(4);
    bell << r, 0, 0, r;
    v.require(oracles::max_abs_diff(as_vec(t.passes.at(0).sent), bell) <= 1e-12, "(|0,0>+|1,1>)/sqrt2 snapshot");
    v.require(t.outcome->classical_message->value == 0, "x/xbar did not recover 0");
    v.require(recovered == 32, std::to_string(recovered) + "/32 recoveries");
    if (v.pass) {
        v.detail = "32/32 recoveries";
    }
    return v;
}

// 3. U_F^2 = I, disjoint targets commute, U_F U_G = U_{F xor G}.
Verdict oracle_algebra() {
    Verdict v;
    std::mt19937_64 gen(1003);
    double worst = 0.0;
    std::size_t cases = 0;
    auto one_case = [&](unsigned k, unsigned n, const Table &tf, const Table &tg) {
        const RegisterLayout l({{"I", k}, {"II", n}, {"III", n}});
        const unsigned N = l.total_width();
        const BooleanFunction f = fn(k, n, tf), g = fn(k, n, tg);
        const Vec psi = oracles::random_state(l.dimension(), gen);
        const QuantumState s(l, oracles::to_std(psi));
        // The implementation against the dense matrix built here.
        worst = std::max(worst, oracles::max_abs_diff(as_vec(apply_oracle(s, f, "I", "II")),
                                                      oracles::oracle_matrix(tf, N, 0, k, k, n) * psi));
        const auto twice = apply_oracle(apply_oracle(s, f, "I", "II"), f, "I", "II");
        worst = std::max(worst, oracles::max_abs_diff(as_vec(twice), psi));
        const auto fg = apply_oracle(apply_oracle(s, g, "I", "III"), f, "I", "II");
        const auto gf = apply_oracle(apply_oracle(s, f, "I", "II"), g, "I", "III");
        worst = std::max(worst, oracles::max_abs_diff(as_vec(fg), as_vec(gf)));
        worst = std::max(worst, oracles::max_abs_diff(as_vec(apply_oracle(apply_oracle(s, g, "I", "II"), f, "I", "II")),
                                                      as_vec(apply_oracle(s, xor_functions(f, g), "I", "II"))));
        ++cases;
    };
    const std::vector<std::pair<unsigned, unsigned>> exhaustive = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    for (const auto &[k, n] : exhaustive) {
        const std::uint64_t count = *function_count(k, n);
        for (std::uint64_t a = 0; a < count; ++a) {
            for (std::uint64_t b = 0; b < count; ++b) {
                one_case(k, n, oracles::table_from_index(k, n, a), oracles::table_from_index(k, n, b));
            }
        }
    }
    for (int i = 0; i < 1000; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(gen() % 3);
        one_case(3, n, oracles::random_table(3, n, gen), oracles::random_table(3, n, gen));
    }
    v.require(worst <= 1e-12, "max error " + fmt("%.3e", worst));
    if (v.pass) {
        v.detail = std::to_string(cases) + " cases, max error " + fmt("%.1e", worst);
    }
    return v;
}

// 4. Hadamard transform matrix entries.
Verdict hadamard_law() {
    Verdict v;
    double worst = 0.0;
    for (unsigned k = 1; k <= 3; ++k) {
        const RegisterLayout l({{"I", k}});
        const std::size_t d = l.dimension();
        const double scale = 1 / std::sqrt(static_cast<double>(d));
        for (std::size_t col = 0; col < d; ++col) {
            const auto out = apply_hadamard(basis_state(l, col), "I");
            for (std::size_t row = 0; row < d; ++row) {
                const double sign = (__builtin_popcountll(row & col) % 2) ? -1.0 : 1.0;
                worst = std::max(worst, std::abs(out.amplitude(row) - Complex(sign * scale)));
            }
        }
    }
    v.require(worst <= 1e-12, "max error " + fmt("%.3e", worst));
    if (v.pass) {
        v.detail = "k = 1..3, max error " + fmt("%.1e", worst);
    }
    return v;
}

// 5. Honest authenticated runs pass both zero-checks.
Verdict honest_authenticated() {
    Verdict v;
    std::mt19937_64 gen(1005);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const unsigned k = 1 + static_cast<unsigned>(gen() % 2);
        const unsigned n = 1 + static_cast<unsigned>(gen() % 2);
        const Table sa = oracles::random_table(k, n, gen);
        Table sb = oracles::random_table(k, n, gen);
        while (sb == sa) {
            sb = oracles::random_table(k, n, gen);
        }
        const BooleanFunction fa = fn(k, n, oracles::random_table(k, n, gen));
        const BooleanFunction fb = fn(k, n, oracles::random_table(k, n, gen));
        const auto [alice, bob] = honest_parties(fa, fb, fn(k, n, sa), fn(k, n, sb));
        RunOptions opt;
        opt.seed = static_cast<Seed>(i);
        const Message m = random_message(k, gen);
        const auto t = run_authenticated_protocol(m, alice, bob, opt);
        v.require(!t.aborted && t.checks.size() == 2, "run " + std::to_string(i) + " aborted");
        for (const auto &c : t.checks) {
            worst = std::max(worst, std::abs(1.0 - c.zero_probability));
            v.require(c.accepted && c.outcome && c.outcome->value == 0, "check read non-zero");
        }
        if (t.outcome) {
            v.require(std::abs(overlap(m, *t.outcome) - 1.0) <= 1e-9, "honest delivery not faithful");
        }
    }
    v.require(worst <= 1e-12, "zero-probability deficit " + fmt("%.3e", worst));
    if (v.pass) {
        v.detail = "200 runs, max deficit " + fmt("%.1e", worst);
    }
    return v;
}

// Dense evolution of Alice's verification when Eve impersonates Bob holding
// guess gb and session function fe: returns Alice's acceptance probability.
double dense_alice_accept(const Table &fa, const Table &sb, const Table &gb, const Table &fe, std::uint64_t mp) {
    const unsigned N = 3;  // I, II, III with k = n = 1
    const Vec psi0 = oracles::pad(oracles::hadamard_encoded(mp, 1), 2);
    Vec psi = oracles::oracle_matrix(fa, N, 0, 1, 1, 1) * psi0;  // Alice tags II
    psi = oracles::oracle_matrix(gb, N, 0, 1, 1, 1) * psi;       // Eve as Bob: her s_B guess
    psi = oracles::oracle_matrix(fe, N, 0, 1, 2, 1) * psi;       // Eve's session function into III
    psi = oracles::oracle_matrix(sb, N, 0, 1, 1, 1) * psi;       // Alice removes s_B
    psi = oracles::oracle_matrix(fa, N, 0, 1, 1, 1) * psi;       // and F_A
    return oracles::zero_probability(psi, N, 1, 1);
}

// 6. Full man-in-the-middle contrast.
Verdict mitm_contrast() {
    Verdict v;
    std::mt19937_64 gen(1006);
    int recovered = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned k = 1 + static_cast<unsigned>(gen() % 3);
        const std::uint64_t mp = gen() % (std::uint64_t{1} << k);
        KeyAssignment keys;
        keys.functions.emplace("fa", fn(k, k, oracles::random_table(k, k, gen)));
        keys.functions.emplace("fb", fn(k, k, oracles::random_table(k, k, gen)));
        EveStrategy eve;
        eve.kind = StrategyKind::FullMitm;
        eve.fe1 = fn(k, k, oracles::random_table(k, k, gen));
        eve.fe2 = fn(k, k, oracles::random_table(k, k, gen));
        const HonestInputs honest{Message::hadamard_encoded(BitString{mp, k}), keys};
        const auto r = attack(ProtocolId::Classical, honest, eve, AttackMode{false, 1, static_cast<Seed>(trial)});
        const bool ok = r.eve_recovered && r.eve_recovered->value == mp && r.both_accept_prob == 1.0 &&
                        r.recovery_probability && *r.recovery_probability == 1.0;
        recovered += ok ? 1 : 0;
    }
    v.require(recovered == 100, std::to_string(recovered) + "/100 classical recoveries");

    // Authenticated: brute force over F_A, F_B, s_A != s_B and Eve's s_B guess.
    for (std::uint64_t mp = 0; mp < 2; ++mp) {
        double sum = 0.0;
        int tuples = 0;
        for (std::uint64_t a = 0; a < 4; ++a) {
            for (std::uint64_t b = 0; b < 4; ++b) {
                for (std::uint64_t sa = 0; sa < 4; ++sa) {
                    for (std::uint64_t sb = 0; sb < 4; ++sb) {
                        if (sa == sb) {
                            continue;
                        }
                        for (std::uint64_t g = 0; g < 4; ++g) {
                            const auto t = [](std::uint64_t i) { return oracles::table_from_index(1, 1, i); };
                            sum += dense_alice_accept(t(a), t(sb), t(g), t(b), mp);
                            ++tuples;
                        }
                    }
                }
            }
        }
        const double brute = sum / tuples;
        const auto demo = mitm_demo(BitString{mp, 1}, 17 + mp);
        v.require(tuples == 768, "tuple count " + std::to_string(tuples));
        v.require(demo.authenticated.exact, "authenticated contrast not exact");
        v.require(std::abs(demo.authenticated.alice_accept_prob - brute) <= 1e-12,
                  "alice_accept " + fmt("%.12f", demo.authenticated.alice_accept_prob) + " vs brute force " +
                      fmt("%.12f", brute));
        if (v.pass && mp == 1) {
            v.detail = "100/100 classical recoveries; authenticated alice_accept " +
                       fmt("%.9f", demo.authenticated.alice_accept_prob) + " = brute force over 768 tuples";
        }
    }
    return v;
}

// 7. Substitution attack against the closed form.
Verdict substitution() {
    Verdict v;
    std::mt19937_64 gen(1007);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const unsigned k = 1 + static_cast<unsigned>(i % 2);
        const unsigned n = 1 + static_cast<unsigned>(gen() % 2);
        const Table fa = oracles::random_table(k, n, gen), fb = oracles::random_table(k, n, gen);
        const Table sa = oracles::random_table(k, n, gen);
        Table sb = oracles::random_table(k, n, gen);
        while (sb == sa) {
            sb = oracles::random_table(k, n, gen);
        }
        const Table fe = oracles::random_table(k, n, gen);
        const Vec alpha = oracles::random_state(std::size_t{1} << k, gen);
        double closed = 0.0;
        for (std::size_t m = 0; m < fa.size(); ++m) {
            if ((fe[m] ^ sb[m] ^ fa[m]) == 0) {
                closed += std::norm(alpha(static_cast<Eigen::Index>(m)));
            }
        }
        KeyAssignment keys;
        keys.functions.emplace("fa", fn(k, n, fa));
        keys.functions.emplace("fb", fn(k, n, fb));
        keys.functions.emplace("sa", fn(k, n, sa));
        keys.functions.emplace("sb", fn(k, n, sb));
        EveStrategy eve;
        eve.kind = StrategyKind::SubstituteOracle;
        eve.fe = fn(k, n, fe);
        const auto r = attack(ProtocolId::Authenticated, HonestInputs{Message::quantum(oracles::to_std(alpha)), keys},
                              eve, AttackMode{true, 1, static_cast<Seed>(i)});
        worst = std::max(worst, std::abs(r.alice_accept_prob - closed));
    }
    v.require(worst <= 1e-12, "max deviation " + fmt("%.3e", worst));
    if (v.pass) {
        v.detail = "50 configurations, max deviation " + fmt("%.1e", worst);
    }
    return v;
}

// 8. Eve's view of classical pass 1 at k = 1.
Verdict eve_view_check() {
    Verdict v;
    const auto view = eve_view(ProtocolId::Classical, 1,
                               {Message::hadamard_encoded(BitString{0, 1}), Message::hadamard_encoded(BitString{1, 1})},
                               1, KeySpace{});
    std::vector<Mat> brute;
    for (std::uint64_t mp = 0; mp < 2; ++mp) {
        Mat avg = Mat::Zero(4, 4);
        for (std::uint64_t a = 0; a < 4; ++a) {
            const Vec psi = oracles::oracle_matrix(oracles::table_from_index(1, 1, a), 2, 0, 1, 1, 1) *
                            oracles::pad(oracles::hadamard_encoded(mp, 1), 1);
            avg += psi * psi.adjoint();
        }
        brute.push_back(avg / 4.0);
    }
    v.require(view.views.size() == 2, "expected two views");
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(2, view.views.size()); ++i) {
        worst = std::max(worst, (view.views[i].matrix() - brute[i]).cwiseAbs().maxCoeff());
    }
    v.require(worst <= 1e-12, "density matrix error " + fmt("%.3e", worst));
    const Eigen::ComplexEigenSolver<Mat> eig(brute[0] - brute[1]);
    const double td = 0.5 * eig.eigenvalues().cwiseAbs().sum();
    v.require(view.trace_distance.has_value() && std::abs(*view.trace_distance - td) <= 1e-9,
              "trace distance vs eigenvalues " + fmt("%.12f", td));
    if (v.pass) {
        v.detail = "max entry error " + fmt("%.1e", worst) + ", trace distance " + fmt("%.9f", td);
    }
    return v;
}

// 9. Alternative schemes.
Verdict alt_schemes() {
    Verdict v;
    std::mt19937_64 gen(1009);
    auto random_bits = [&](unsigned k) { return BitString{gen() % (std::uint64_t{1} << k), k}; };
    auto random_perm = [&](unsigned k) {
        Table t(std::size_t{1} << k);
        std::iota(t.begin(), t.end(), 0u);
        std::shuffle(t.begin(), t.end(), gen);
        return fn(k, k, t);
    };
    for (auto id : {ProtocolId::Alt19, ProtocolId::Alt20, ProtocolId::AltKeystring, ProtocolId::Alt21,
                    ProtocolId::Alt22}) {
        for (int i = 0; i < 50; ++i) {
            const unsigned k = 1 + static_cast<unsigned>(gen() % 3);
            const unsigned n = 1 + static_cast<unsigned>(gen() % 3);
            AltInputs in;
            in.sa = random_bits(k);
            in.sb = random_bits(k);
            in.s_string = random_bits(k);
            in.fa = fn(k, n, oracles::random_table(k, n, gen));
            in.fb = fn(k, n, oracles::random_table(k, n, gen));
            in.s = id == ProtocolId::Alt21 ? random_perm(k) : fn(k, n, oracles::random_table(k, n, gen));
            const Message m = random_message(k, gen);
            const auto t = run_alt_scheme(id, m, in);
            const double f = t.outcome ? overlap(m, *t.outcome) : -1.0;
            v.require(std::abs(f - 1.0) <= 1e-9, std::string(to_string(id)) + " fidelity " + fmt("%.12f", f));
        }
    }
    int rejected = 0;
    for (int i = 0; i < 100; ++i) {
        Table t = oracles::random_table(2, 2, gen);
        while (is_permutation(fn(2, 2, t)).value_or(false)) {
            t = oracles::random_table(2, 2, gen);
        }
        AltInputs in;
        in.s = fn(2, 2, t);
        try {
            run_alt_scheme(ProtocolId::Alt21, random_message(2, gen), in);
        } catch (const UsageError &e) {
            rejected += std::string(e.what()) == "scheme requires bijective s" ? 1 : 0;
        }
    }
    v.require(rejected == 100, std::to_string(rejected) + "/100 non-bijective tables rejected");
    if (v.pass) {
        v.detail = "5 schemes x 50 messages; 100/100 non-bijective tables rejected";
    }
    return v;
}

// 10. Gate compilation.
Verdict gate_compile() {
    Verdict v;
    std::mt19937_64 gen(1010);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const unsigned k = 1 + static_cast<unsigned>(i % 3);
        const unsigned n = 1 + static_cast<unsigned>(gen() % 3);
        const RegisterLayout l({{"I", k}, {"II", n}});
        const Table t = oracles::random_table(k, n, gen);
        const BooleanFunction f = fn(k, n, t);
        const auto gates = compile_oracle(f, l, "I", "II");
        const Mat dense = oracles::oracle_matrix(t, k + n, 0, k, k, n);
        for (int j = 0; j < 100; ++j) {
            const Vec psi = oracles::random_state(l.dimension(), gen);
            const QuantumState s(l, oracles::to_std(psi));
            const Vec viagates = as_vec(apply_gates(s, gates));
            worst = std::max(worst, oracles::max_abs_diff(viagates, as_vec(apply_oracle(s, f, "I", "II"))));
            worst = std::max(worst, oracles::max_abs_diff(viagates, dense * psi));
        }
    }
    v.require(worst <= 1e-12, "max error " + fmt("%.3e", worst));
    const RegisterLayout l1({{"I", 1}, {"II", 1}});
    const auto cx = compile_oracle(parse_function("x"), l1, "I", "II");
    v.require(cx.size() == 1 && cx[0].kind == Gate::Kind::CX && cx[0].controls == std::vector<unsigned>{0} &&
                  cx[0].target == 1,
              "f = x did not compile to one CNOT");
    if (v.pass) {
        v.detail = "50 f x 100 states, max error " + fmt("%.1e", worst) + "; x -> 1 CNOT";
    }
    return v;
}

// 11. Corpus verification and byte-identical reruns.
Verdict reproducibility() {
    Verdict v;
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(QNOKEY_CORPUS_DIR)) {
        if (e.path().extension() == ".json") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    v.require(!files.empty(), "empty corpus");
    for (const auto &p : files) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        const std::string bytes = ss.str();
        const Json doc = Json::parse(bytes);
        const auto res = verify_document(doc);
        v.require(res.status == kExitOk, p.filename().string() + ": " + res.summary);
        const std::string a = canonical_dump(execute_config(doc.at("config")).document);
        const std::string b = canonical_dump(execute_config(doc.at("config")).document);
        v.require(a == b, p.filename().string() + ": reruns differ");
        v.require(a + "\n" == bytes, p.filename().string() + ": rerun differs from stored bytes");
    }
    if (v.pass) {
        v.detail = std::to_string(files.size()) + " corpus documents verified and reproduced byte for byte";
    }
    return v;
}

}  // namespace
}  // namespace qnokey

int main() {
    using namespace qnokey;
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria = {
        {"three-pass round trip", round_trip},
        {"single-bit worked example", worked_example},
        {"oracle algebra", oracle_algebra},
        {"hadamard sign law", hadamard_law},
        {"honest authenticated runs", honest_authenticated},
        {"mitm contrast", mitm_contrast},
        {"substitution attack closed form", substitution},
        {"eve view analysis", eve_view_check},
        {"alternative schemes", alt_schemes},
        {"gate compilation", gate_compile},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    int index = 0;
    for (const auto &[name, run] : criteria) {
        ++index;
        Verdict v;
        try {
            v = run();
        } catch (const std::exception &e) {
            v.fail(std::string("exception: ") + e.what());
        }
        failed += v.pass ? 0 : 1;
        std::printf("criterion %2d %-34s %s  %s\n", index, name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
