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

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "boolfn.hpp"
#include "error.hpp"
#include "support/oracles.hpp"

namespace qnokey {
namespace {

TEST(BooleanFunctionTest, ShapeIsValidated) {
    EXPECT_THROW(BooleanFunction(1, 1, {0}), UsageError);
    EXPECT_THROW(BooleanFunction(1, 1, {0, 2}), UsageError);
    EXPECT_THROW(BooleanFunction(0, 1, {0}), UsageError);
    EXPECT_THROW(BooleanFunction(17, 1, std::vector<std::uint32_t>(1 << 17)), UsageError);
    EXPECT_NO_THROW(BooleanFunction(2, 3, {0, 7, 3, 4}));
}

TEST(BooleanFunctionTest, SerializedForm) {
    const BooleanFunction f(2, 3, {0, 7, 3, 4});
    EXPECT_EQ(serialize(f), "2:3:0,7,3,4");
    const BooleanFunction g(1, 5, {0x1f, 0x2});
    EXPECT_EQ(serialize(g), "1:5:1f,02");
    EXPECT_EQ(deserialize("1:5:1F,2"), g);
    EXPECT_EQ(deserialize(serialize(f)), f);
    EXPECT_THROW(deserialize("1:1:0"), UsageError);
    EXPECT_THROW(deserialize("1:1:0,2"), UsageError);
    EXPECT_THROW(deserialize("1:1:0,,1"), UsageError);
    EXPECT_THROW(deserialize("x"), UsageError);
}

TEST(BooleanFunctionTest, ShortNamesForOneBit) {
    EXPECT_EQ(parse_function("0").table(), (std::vector<std::uint32_t>{0, 0}));
    EXPECT_EQ(parse_function("1").table(), (std::vector<std::uint32_t>{1, 1}));
    EXPECT_EQ(parse_function("x").table(), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(parse_function("xbar").table(), (std::vector<std::uint32_t>{1, 0}));
}

TEST(BooleanFunctionTest, EvalAndXor) {
    const BooleanFunction f(2, 2, {1, 2, 3, 0});
    const BooleanFunction g(2, 2, {3, 3, 1, 1});
    EXPECT_EQ(eval(f, BitString::parse("01")).str(), "10");
    const auto h = xor_functions(f, g);
    EXPECT_EQ(h.table(), (std::vector<std::uint32_t>{2, 1, 2, 1}));
    EXPECT_THROW(xor_functions(f, BooleanFunction::identity(1)), UsageError);
    EXPECT_THROW(eval(f, BitString::parse("1")), UsageError);
}

TEST(BooleanFunctionTest, RandomIsSeededAndInRange) {
    const auto a = random_function(3, 5, 42);
    EXPECT_EQ(a, random_function(3, 5, 42));
    EXPECT_NE(a, random_function(3, 5, 43));
    for (auto v : a.table()) {
        EXPECT_LT(v, 32u);
    }
    // Every one-bit function shows up across seeds with roughly equal
    // frequency.
    std::map<std::vector<std::uint32_t>, int> counts;
    for (std::uint64_t s = 0; s < 4000; ++s) {
        ++counts[random_function(1, 1, s).table()];
    }
    EXPECT_EQ(counts.size(), 4u);
    for (const auto &[t, c] : counts) {
        EXPECT_NEAR(c / 4000.0, 0.25, 0.04);
    }
}

TEST(BooleanFunctionTest, PermutationsAndInverse) {
    const BooleanFunction p(2, 2, {2, 0, 3, 1});
    EXPECT_EQ(is_permutation(p), std::optional<bool>(true));
    EXPECT_EQ(inverse(p).table(), (std::vector<std::uint32_t>{1, 3, 0, 2}));
    EXPECT_EQ(is_permutation(BooleanFunction(2, 2, {0, 0, 1, 2})), std::optional<bool>(false));
    EXPECT_EQ(is_permutation(BooleanFunction(1, 2, {0, 1})), std::nullopt);
    EXPECT_THROW(inverse(BooleanFunction(2, 2, {0, 0, 1, 2})), UsageError);
}

TEST(BooleanFunctionTest, IndexOrderingIsLexicographic) {
    EXPECT_EQ(function_count(1, 1), std::optional<std::uint64_t>(4));
    EXPECT_EQ(function_count(2, 2), std::optional<std::uint64_t>(256));
    EXPECT_EQ(function_count(6, 1), std::nullopt);
    EXPECT_EQ(function_from_index(1, 1, 0), parse_function("0"));
    EXPECT_EQ(function_from_index(1, 1, 1), parse_function("x"));
    EXPECT_EQ(function_from_index(1, 1, 2), parse_function("xbar"));
    EXPECT_EQ(function_from_index(1, 1, 3), parse_function("1"));
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t i = 0; i < 256; ++i) {
        const auto f = function_from_index(2, 2, i);
        EXPECT_EQ(f.table(), oracles::table_from_index(2, 2, i));
        seen.insert(f.table());
    }
    EXPECT_EQ(seen.size(), 256u);
}

TEST(KeyPairTest, RequiresMatchingShapes) {
    EXPECT_NO_THROW(KeyPair(parse_function("x"), parse_function("1")));
    EXPECT_THROW(KeyPair(parse_function("x"), BooleanFunction(2, 1, {0, 1, 1, 0})), UsageError);
}

}  // namespace
}  // namespace qnokey
