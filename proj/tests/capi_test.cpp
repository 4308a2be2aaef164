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
#include <cstring>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qnokey/qnokey.h"

namespace {

TEST(CApiTest, Version) { EXPECT_STREQ(qnk_version(), "0.1.0"); }

TEST(CApiTest, BooleanFunctions) {
    qnk_boolfn *f = nullptr;
    ASSERT_EQ(qnk_boolfn_parse("2:2:2,0,3,1", &f), QNK_OK);
    uint32_t v = 0;
    ASSERT_EQ(qnk_boolfn_eval(f, 2, &v), QNK_OK);
    EXPECT_EQ(v, 3u);
    EXPECT_EQ(qnk_boolfn_eval(f, 4, &v), QNK_ERR_USAGE);
    int perm = -2;
    ASSERT_EQ(qnk_boolfn_is_permutation(f, &perm), QNK_OK);
    EXPECT_EQ(perm, 1);

    size_t needed = 0;
    EXPECT_EQ(qnk_boolfn_to_string(f, nullptr, 0, &needed), QNK_OK);
    EXPECT_EQ(needed, std::strlen("2:2:2,0,3,1") + 1);
    std::vector<char> buf(needed);
    ASSERT_EQ(qnk_boolfn_to_string(f, buf.data(), buf.size(), &needed), QNK_OK);
    EXPECT_STREQ(buf.data(), "2:2:2,0,3,1");

    qnk_boolfn *g = nullptr;
    ASSERT_EQ(qnk_boolfn_random(2, 2, 5, &g), QNK_OK);
    qnk_boolfn *h = nullptr;
    ASSERT_EQ(qnk_boolfn_xor(f, g, &h), QNK_OK);
    uint32_t a = 0, b = 0, c = 0;
    for (uint64_t x = 0; x < 4; ++x) {
        qnk_boolfn_eval(f, x, &a);
        qnk_boolfn_eval(g, x, &b);
        qnk_boolfn_eval(h, x, &c);
        EXPECT_EQ(c, a ^ b);
    }
    qnk_boolfn_free(f);
    qnk_boolfn_free(g);
    qnk_boolfn_free(h);
    qnk_boolfn_free(nullptr);
}

TEST(CApiTest, ParseErrorSetsLastError) {
    qnk_boolfn *f = reinterpret_cast<qnk_boolfn *>(0x1);
    EXPECT_EQ(qnk_boolfn_parse("1:1:0", &f), QNK_ERR_USAGE);
    EXPECT_EQ(f, nullptr);
    EXPECT_GT(std::strlen(qnk_last_error()), 0u);
    EXPECT_EQ(qnk_boolfn_parse(nullptr, &f), QNK_ERR_USAGE);
}

TEST(CApiTest, StateLifecycle) {
    const char *names[] = {"I", "II"};
    const unsigned widths[] = {1, 1};
    const double msg[] = {0.6, 0.0, 0.0, 0.8};
    qnk_state *s = nullptr;
    ASSERT_EQ(qnk_state_create(names, widths, 2, msg, 2, &s), QNK_OK);
    size_t dim = 0;
    qnk_state_dimension(s, &dim);
    EXPECT_EQ(dim, 4u);

    qnk_boolfn *x = nullptr;
    qnk_boolfn_parse("x", &x);
    ASSERT_EQ(qnk_state_apply_oracle(s, x, "I", "II"), QNK_OK);
    double amps[8] = {};
    ASSERT_EQ(qnk_state_amplitudes(s, amps, 4), QNK_OK);
    EXPECT_NEAR(amps[0], 0.6, 1e-15);
    EXPECT_NEAR(amps[7], 0.8, 1e-15);  // |1,1>

    double p0 = 0;
    qnk_state_zero_probability(s, "II", &p0);
    EXPECT_NEAR(p0, 0.36, 1e-12);
    EXPECT_EQ(qnk_state_detach(s, "II"), QNK_ERR_USAGE);
    EXPECT_EQ(qnk_state_apply_oracle(s, x, "I", "nope"), QNK_ERR_USAGE);

    ASSERT_EQ(qnk_state_apply_oracle(s, x, "I", "II"), QNK_OK);
    ASSERT_EQ(qnk_state_detach(s, "II"), QNK_OK);
    ASSERT_EQ(qnk_state_attach(s, "E", 1), QNK_OK);
    ASSERT_EQ(qnk_state_apply_hadamard(s, "E"), QNK_OK);
    uint64_t value = 9;
    double prob = 0;
    ASSERT_EQ(qnk_state_measure(s, "E", 17, &value, &prob), QNK_OK);
    EXPECT_LT(value, 2u);
    EXPECT_NEAR(prob, 0.5, 1e-12);

    qnk_state *t = nullptr;
    const char *one[] = {"I", "E"};
    const double basis[] = {0.6, 0.0, 0.0, 0.8};
    ASSERT_EQ(qnk_state_create(one, widths, 2, basis, 2, &t), QNK_OK);
    double f = 0;
    ASSERT_EQ(qnk_state_fidelity(s, t, &f), QNK_OK);
    EXPECT_NEAR(f, value == 0 ? 1.0 : 0.0, 1e-12);

    qnk_state_free(s);
    qnk_state_free(t);
    qnk_boolfn_free(x);
}

TEST(CApiTest, BadStateInput) {
    const char *names[] = {"I"};
    const unsigned widths[] = {1};
    const double msg[] = {1.0, 0.0, 1.0, 0.0};
    qnk_state *s = nullptr;
    EXPECT_EQ(qnk_state_create(names, widths, 1, msg, 2, &s), QNK_ERR_USAGE);
    EXPECT_EQ(s, nullptr);
    EXPECT_NE(std::string(qnk_last_error()).find("norm"), std::string::npos);
}

TEST(CApiTest, CommandsAndVerify) {
    qnk_result *r = nullptr;
    const char *req =
        R"({"protocol":"classical","k":1,"message":"1","hadamard":true,"keys":{"fa":"x","fb":"xbar"}})";
    ASSERT_EQ(qnk_run(req, &r), QNK_OK);
    EXPECT_EQ(qnk_result_status(r), QNK_OK);
    EXPECT_NE(std::string(qnk_result_summary(r)).find("recovered: 1"), std::string::npos);
    const std::string doc = qnk_result_document(r);
    qnk_result_free(r);

    qnk_result *v = nullptr;
    ASSERT_EQ(qnk_verify(doc.c_str(), &v), QNK_OK);
    qnk_result_free(v);

    std::string bad = doc;
    const auto pos = bad.find("\"fidelity\":1.0");
    ASSERT_NE(pos, std::string::npos);
    bad.replace(pos, 14, "\"fidelity\":0.5");
    ASSERT_EQ(qnk_verify(bad.c_str(), &v), QNK_ERR_CHECK_FAILED);
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(qnk_result_status(v), QNK_ERR_CHECK_FAILED);
    qnk_result_free(v);

    EXPECT_EQ(qnk_run("{not json", &r), QNK_ERR_USAGE);
    EXPECT_EQ(r, nullptr);
    EXPECT_EQ(qnk_attack(R"({"protocol":"basic","k":1})", &r), QNK_ERR_USAGE);

    ASSERT_EQ(qnk_analyze(R"({"protocol":"classical","k":1,"pass":1,"messages":["0","1"]})", &r), QNK_OK);
    EXPECT_NE(std::string(qnk_result_document(r)).find("\"trace_distance\":0.5"), std::string::npos);
    qnk_result_free(r);
}

}  // namespace
