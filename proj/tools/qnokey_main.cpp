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

// qnokey command-line front end. Flags are turned into a JSON request and
// handed to the C API; the returned document is written to --out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnokey/qnokey.h"

namespace {

using nlohmann::json;

struct Common {
    std::string protocol;
    std::optional<unsigned> k;
    std::optional<unsigned> n;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string message;
    std::string message_file;
    bool message_random = false;
    bool hadamard = false;
    std::map<std::string, std::string> keys;
    std::map<std::string, bool> random_keys;
};

void add_common(CLI::App *cmd, Common &c, bool with_keys) {
    cmd->add_option("--protocol", c.protocol,
                    "basic | classical | authenticated | alt-19 | alt-20 | alt-keystring | alt-21 | alt-22")
        ->required();
    cmd->add_option("--k", c.k, "message qubits");
    cmd->add_option("--n", c.n, "tag qubits (default k)");
    cmd->add_option("--seed", c.seed, "master seed (default 0)");
    cmd->add_option("--out", c.out, "output file");
    cmd->add_flag("--hadamard", c.hadamard, "Hadamard-encode classical messages");
    if (!with_keys) {
        return;
    }
    auto *msg = cmd->add_option("--message", c.message, "bit string message");
    auto *file = cmd->add_option("--message-file", c.message_file, "JSON amplitude file");
    auto *rnd = cmd->add_flag("--message-random", c.message_random, "random message from the seed");
    msg->excludes(file)->excludes(rnd);
    file->excludes(rnd);
    for (const char *name : {"fa", "fb", "sa", "sb", "s"}) {
        const std::string flag = std::string("--") + name;
        auto *given = cmd->add_option(flag, c.keys[name], std::string("key ") + name + " (hex table or 0/1/x/xbar)");
        auto *random = cmd->add_flag(flag + "-random", c.random_keys[name], std::string("random ") + name);
        given->excludes(random);
    }
}

json amplitudes_from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    const json j = json::parse(in);
    if (j.is_array()) {
        return j;
    }
    if (j.is_object() && j.contains("amplitudes")) {
        if (j.contains("layout") && j.at("layout").size() != 1) {
            throw std::runtime_error("message file must describe a single register");
        }
        return j.at("amplitudes");
    }
    throw std::runtime_error("message file must hold an amplitude list or a state object");
}

json common_request(const Common &c) {
    json r;
    r["protocol"] = c.protocol;
    if (c.k) {
        r["k"] = *c.k;
    }
    if (c.n) {
        r["n"] = *c.n;
    }
    if (c.seed) {
        r["seed"] = *c.seed;
    }
    if (c.hadamard) {
        r["hadamard"] = true;
    }
    if (!c.message.empty()) {
        r["message"] = c.message;
    } else if (!c.message_file.empty()) {
        r["message"] = json{{"amplitudes", amplitudes_from_file(c.message_file)}};
    } else if (c.message_random) {
        r["message"] = "random";
    }
    json keys = json::object();
    for (const auto &[name, text] : c.keys) {
        if (!text.empty()) {
            keys[name] = text;
        }
    }
    for (const auto &[name, on] : c.random_keys) {
        if (on) {
            keys[name] = "random";
        }
    }
    if (!keys.empty()) {
        r["keys"] = keys;
    }
    return r;
}

std::vector<std::string> split(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

int finish(qnk_status status, qnk_result *result, const std::string &out_path) {
    if (result == nullptr) {
        std::cerr << "error: " << qnk_last_error() << "\n";
        return static_cast<int>(status);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << qnk_result_document(result) << "\n";
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            qnk_result_free(result);
            return 1;
        }
    }
    std::cout << qnk_result_summary(result);
    if (!out_path.empty()) {
        std::cout << "written: " << out_path << "\n";
    }
    qnk_result_free(result);
    return static_cast<int>(status);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qnokey: quantum no-key protocol simulator"};
    app.set_version_flag("--version", std::string(qnk_version()));
    app.require_subcommand(1);

    Common run_c;
    bool run_digest = false;
    bool run_exact = false;
    std::size_t run_count = 1;
    std::string key_policy;
    auto *run = app.add_subcommand("run", "execute one protocol run and write its transcript");
    add_common(run, run_c, true);
    run->add_flag("--digest", run_digest, "store SHA-256 digests instead of snapshots");
    run->add_flag("--exact", run_exact, "post-select checks on acceptance instead of sampling");
    run->add_option("--count", run_count, "number of random messages (basic protocol sequence)");
    run->add_option("--key-policy", key_policy, "fresh | reused (required with --count)");

    Common atk_c;
    std::string strategy;
    bool atk_exact = false;
    std::optional<std::size_t> trials;
    std::string fe, fe1, fe2, guess_sa, guess_sb, target, registers, mask;
    int atk_pass = 0;
    bool insider = false;
    bool discard_original = false;
    auto *atk = app.add_subcommand("attack", "run an adversary strategy and write an attack report");
    add_common(atk, atk_c, true);
    atk->add_option("--strategy", strategy,
                    "passive-inspect | intercept-measure-resend | substitute-oracle | bitflip | full-mitm")
        ->required();
    atk->add_flag("--exact", atk_exact, "exact probabilities instead of Monte Carlo");
    atk->add_option("--trials", trials, "Monte Carlo trials (default 10000)");
    atk->add_option("--fe", fe, "substitute-oracle: Eve's function");
    atk->add_option("--fe1", fe1, "full-mitm: Eve's function towards Alice");
    atk->add_option("--fe2", fe2, "full-mitm: Eve's function towards Bob");
    atk->add_option("--guess-sa", guess_sa, "full-mitm: Eve's guess of s_A");
    atk->add_option("--guess-sb", guess_sb, "full-mitm: Eve's guess of s_B");
    atk->add_flag("--insider", insider, "full-mitm: Eve knows s_A and s_B");
    atk->add_option("--register", target, "substitute-oracle / bitflip target register");
    atk->add_option("--registers", registers, "intercept: comma-separated registers");
    atk->add_option("--mask", mask, "bitflip: bit mask over the target register");
    atk->add_option("--pass", atk_pass, "pass to attack (default per strategy)");
    atk->add_flag("--discard-original", discard_original, "substitute-oracle: drop the displaced register");

    Common ana_c;
    int ana_pass = 1;
    std::string messages, known;
    std::size_t samples = 0;
    bool ana_exact = false;
    auto *ana = app.add_subcommand("analyze", "Eve's key-averaged view of one pass");
    add_common(ana, ana_c, false);
    ana->add_option("--pass", ana_pass, "pass index (default 1)");
    ana->add_option("--messages", messages, "one or two comma-separated bit strings");
    ana->add_option("--known-message", known, "known message; compares views across key values");
    ana->add_option("--samples", samples, "sample this many key tuples instead of enumerating");
    ana->add_flag("--exact", ana_exact, "exact enumeration (the default without --samples)");

    std::string verify_file;
    auto *ver = app.add_subcommand("verify", "re-execute an output file and compare");
    ver->add_option("file", verify_file, "transcript, report or analysis file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        qnk_result *result = nullptr;
        if (run->parsed()) {
            json r = common_request(run_c);
            if (run_digest) {
                r["digest"] = true;
            }
            if (run_exact) {
                r["exact"] = true;
            }
            if (run_count != 1) {
                r["count"] = run_count;
            }
            if (!key_policy.empty()) {
                r["key_policy"] = key_policy;
            }
            const auto status = qnk_run(r.dump().c_str(), &result);
            return finish(status, result, run_c.out.empty() ? "transcript.json" : run_c.out);
        }
        if (atk->parsed()) {
            json r = common_request(atk_c);
            json s{{"kind", strategy}};
            if (atk_pass != 0) {
                s["pass"] = atk_pass;
            }
            const std::vector<std::pair<const char *, std::string *>> fns = {
                {"fe", &fe}, {"fe1", &fe1}, {"fe2", &fe2}, {"guess_sa", &guess_sa}, {"guess_sb", &guess_sb}};
            for (const auto &[name, value] : fns) {
                if (!value->empty()) {
                    s[name] = *value;
                }
            }
            if (!target.empty()) {
                s["target"] = target;
            }
            if (!registers.empty()) {
                s["registers"] = split(registers);
            }
            if (!mask.empty()) {
                s["mask"] = mask;
            }
            if (discard_original) {
                s["keep_original"] = false;
            }
            r["strategy"] = s;
            r["exact"] = atk_exact;
            if (trials) {
                r["trials"] = *trials;
            }
            if (insider) {
                r["insider"] = true;
            }
            const auto status = qnk_attack(r.dump().c_str(), &result);
            return finish(status, result, atk_c.out.empty() ? "attack_report.json" : atk_c.out);
        }
        if (ana->parsed()) {
            json r = common_request(ana_c);
            r["pass"] = ana_pass;
            if (!messages.empty()) {
                r["messages"] = split(messages);
            }
            if (!known.empty()) {
                r["known_message"] = known;
            }
            if (samples != 0) {
                r["samples"] = samples;
            }
            const auto status = qnk_analyze(r.dump().c_str(), &result);
            return finish(status, result, ana_c.out.empty() ? "analysis.json" : ana_c.out);
        }
        std::ifstream in(verify_file, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << verify_file << "\n";
            return 1;
        }
        std::stringstream text;
        text << in.rdbuf();
        const auto status = qnk_verify(text.str().c_str(), &result);
        return finish(status, result, "");
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
