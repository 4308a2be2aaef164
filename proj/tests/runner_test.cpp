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

#include <cmath>

#include <gtest/gtest.h>

#include "error.hpp"
#include "runner.hpp"

namespace qnokey {
namespace {

Json classical_request() {
    return Json{{"protocol", "classical"},
                {"k", 1},
                {"message", "0"},
                {"hadamard", true},
                {"seed", 7},
                {"keys", {{"fa", "x"}, {"fb", "xbar"}}}};
}

TEST(CanonicalTest, DoublesAreRoundedAndUnsigned) {
    EXPECT_EQ(canonical_double(0.1 + 0.2), 0.3);
    EXPECT_EQ(canonical_double(1.0 / 3.0), 0.333333333333);
    const double z = canonical_double(-0.0);
    EXPECT_EQ(z, 0.0);
    EXPECT_FALSE(std::signbit(z));
    EXPECT_EQ(canonical_double(-1e-13 * 0.0), 0.0);
}

TEST(CanonicalTest, DumpSortsKeys) {
    const Json j = {{"b", 1}, {"a", {{"d", 2}, {"c", 3}}}};
    EXPECT_EQ(canonical_dump(j), R"({"a":{"c":3,"d":2},"b":1})");
}

TEST(CanonicalTest, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(StateJsonTest, RoundTripAndDigest) {
    const RegisterLayout l({{"I", 1}, {"II", 1}});
    const auto s = make_state(l, std::vector<Complex>{0.6, Complex(0, 0.8)});
    const Json j = state_to_json(s);
    EXPECT_EQ(canonical_dump(j),
              R"({"amplitudes":[[0.6,0.0],[0.0,0.0],[0.0,0.8],[0.0,0.0]],"layout":[["I",1],["II",1]]})");
    const auto back = state_from_json(j);
    EXPECT_NEAR(fidelity(s, back), 1.0, 1e-12);
    EXPECT_EQ(state_digest(s)["sha256"], sha256_hex(canonical_dump(j)));
    EXPECT_EQ(format_state(s), "+0.600000000|0,0> +0.800000000i|1,0>");
    EXPECT_EQ(format_prob(0.5), "0.500000000");
}

TEST(RunCommandTest, ClassicalWorkedExample) {
    const auto r = run_command("run", classical_request());
    EXPECT_EQ(r.status, kExitOk);
    const auto &t = r.document["transcript"];
    EXPECT_EQ(r.document["tool"], kToolName);
    EXPECT_EQ(r.document["command"], "run");
    EXPECT_EQ(t["passes"].size(), 3u);
    EXPECT_EQ(t["outcome"]["classical_message"], "0");
    EXPECT_EQ(t["passes"][0]["sent"]["amplitudes"][3][0], canonical_double(std::sqrt(0.5)));
    EXPECT_NE(r.summary.find("recovered: 0"), std::string::npos);
}

TEST(RunCommandTest, ResolvedConfigPinsRandomChoices) {
    Json req = {{"protocol", "basic"}, {"k", 2}, {"message", "random"}, {"seed", 3}};
    const Json a = resolve_config("run", req);
    const Json b = resolve_config("run", req);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a["keys"]["fa"].is_string());
    EXPECT_TRUE(a["message"].contains("amplitudes"));
    EXPECT_EQ(a["n"], 2);
    req["seed"] = 4;
    EXPECT_NE(resolve_config("run", req)["keys"], a["keys"]);
    req["seed"] = 3;
    // The resolved config alone reproduces the run.
    EXPECT_EQ(canonical_dump(execute_config(a).document), canonical_dump(run_command("run", req).document));
}

TEST(RunCommandTest, RejectsBadRequests) {
    EXPECT_THROW(run_command("run", Json{{"protocol", "bb84"}, {"k", 1}}), UsageError);
    Json req = classical_request();
    req["keys"]["fa"] = "2:1:0,1,1,0";
    EXPECT_THROW(run_command("run", req), UsageError);
    EXPECT_THROW(run_command("attack", classical_request()), UsageError);
    Json alt = {{"protocol", "alt-21"}, {"k", 1}, {"message", "0"}, {"keys", {{"s", "1:1:0,0"}}}};
    try {
        run_command("run", alt);
        FAIL() << "non-bijective key accepted";
    } catch (const UsageError &e) {
        EXPECT_STREQ(e.what(), "scheme requires bijective s");
    }
}

TEST(RunCommandTest, RepeatedRunsAreByteIdentical) {
    const Json req = {{"protocol", "authenticated"}, {"k", 2}, {"message", "random"}, {"seed", 11}};
    EXPECT_EQ(canonical_dump(run_command("run", req).document), canonical_dump(run_command("run", req).document));
}

TEST(AttackCommandTest, SubstituteReport) {
    const Json req = {{"protocol", "authenticated"},
                      {"k", 1},
                      {"message", {{"amplitudes", {{0.6, 0.0}, {0.0, 0.8}}}}},
                      {"exact", true},
                      {"keys", {{"fa", "x"}, {"fb", "1"}, {"sa", "0"}, {"sb", "xbar"}}},
                      {"strategy", {{"kind", "substitute-oracle"}, {"fe", "0"}}}};
    const auto r = run_command("attack", req);
    EXPECT_EQ(r.status, kExitOk);
    // fe ^ sb ^ fa = {1, 1}: Alice never accepts.
    EXPECT_EQ(r.document["report"]["alice_accept_prob"], 0.0);
    EXPECT_EQ(r.document["report"]["mode"], "exact");
    Json req2 = req;
    req2["strategy"]["fe"] = "xbar";
    // {1, 0} ^ {1, 0} ^ {0, 1} = {0, 1}: only m = 0 passes.
    EXPECT_EQ(run_command("attack", req2).document["report"]["alice_accept_prob"], 0.36);
}

TEST(AnalyzeCommandTest, ClassicalFirstPass) {
    const Json req = {{"protocol", "classical"}, {"k", 1}, {"pass", 1}, {"messages", {"0", "1"}}};
    const auto r = run_command("analyze", req);
    EXPECT_EQ(r.document["analysis"]["trace_distance"], 0.5);
    EXPECT_EQ(r.document["analysis"]["tuples"], 16);
    EXPECT_NE(r.summary.find("trace_distance: 0.500000000"), std::string::npos);
}

TEST(VerifyTest, AcceptsOwnOutputAndLocatesTampering) {
    auto doc = run_command("run", classical_request()).document;
    const auto ok = verify_document(Json::parse(canonical_dump(doc)));
    EXPECT_EQ(ok.status, kExitOk);

    doc["transcript"]["passes"][1]["sent"]["amplitudes"][0][0] = 0.5;
    const auto bad = verify_document(doc);
    EXPECT_EQ(bad.status, kExitCheckFailed);
    EXPECT_NE(bad.summary.find("first divergent step: pass 2 (bob-encrypt)"), std::string::npos) << bad.summary;

    auto wrong_version = run_command("run", classical_request()).document;
    wrong_version["version"] = "9.9.9";
    EXPECT_NE(verify_document(wrong_version).status, kExitOk);
}

TEST(VerifyTest, DigestDocuments) {
    Json req = classical_request();
    req["digest"] = true;
    auto doc = run_command("run", req).document;
    EXPECT_TRUE(doc["transcript"]["passes"][0]["sent"].contains("sha256"));
    EXPECT_EQ(verify_document(doc).status, kExitOk);
    doc["transcript"]["passes"][2]["sent"]["sha256"] = std::string(64, '0');
    EXPECT_EQ(verify_document(doc).status, kExitCheckFailed);
}

}  // namespace
}  // namespace qnokey
