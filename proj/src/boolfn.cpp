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

#include "boolfn.hpp"

#include <algorithm>
#include <charconv>

#include "error.hpp"

namespace qnokey {

namespace {

void check_shape(unsigned arity, unsigned width) {
    if (arity < 1 || arity > kMaxArity) {
        throw UsageError("function arity must be in [1, " + std::to_string(kMaxArity) + "], got " +
                         std::to_string(arity));
    }
    if (width < 1 || width > kMaxWidth) {
        throw UsageError("function width must be in [1, " + std::to_string(kMaxWidth) + "], got " +
                         std::to_string(width));
    }
}

std::uint64_t width_mask(unsigned width) { return (std::uint64_t{1} << width) - 1; }

unsigned parse_unsigned(std::string_view text, const char *what) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError(std::string("malformed ") + what + " in function text");
    }
    return v;
}

}  // namespace

BooleanFunction::BooleanFunction(unsigned arity, unsigned width, std::vector<std::uint32_t> table)
    : arity_(arity), width_(width), table_(std::move(table)) {
    check_shape(arity_, width_);
    if (table_.size() != (std::size_t{1} << arity_)) {
        throw UsageError("truth table must have 2^" + std::to_string(arity_) + " entries, got " +
                         std::to_string(table_.size()));
    }
    for (auto e : table_) {
        if (e > width_mask(width_)) {
            throw UsageError("truth table entry " + std::to_string(e) + " does not fit in " + std::to_string(width_) +
                             " bits");
        }
    }
}

BooleanFunction BooleanFunction::constant(unsigned arity, unsigned width, std::uint32_t value) {
    check_shape(arity, width);
    return BooleanFunction(arity, width, std::vector<std::uint32_t>(std::size_t{1} << arity, value));
}

BooleanFunction BooleanFunction::identity(unsigned bits) {
    check_shape(bits, bits);
    std::vector<std::uint32_t> t(std::size_t{1} << bits);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = static_cast<std::uint32_t>(i);
    }
    return BooleanFunction(bits, bits, std::move(t));
}

KeyPair::KeyPair(BooleanFunction session, BooleanFunction id) : f(std::move(session)), s(std::move(id)) {
    if (f.arity() != s.arity() || f.width() != s.width()) {
        throw UsageError("session function and identification key must share arity and width");
    }
}

BitString eval(const BooleanFunction &f, const BitString &m) {
    if (m.width != f.arity()) {
        throw UsageError("input has " + std::to_string(m.width) + " bits, function arity is " +
                         std::to_string(f.arity()));
    }
    return BitString{f(m.value), f.width()};
}

BooleanFunction xor_functions(const BooleanFunction &f, const BooleanFunction &g) {
    if (f.arity() != g.arity() || f.width() != g.width()) {
        throw UsageError("xor requires functions of the same arity and width");
    }
    std::vector<std::uint32_t> t(f.table().size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = f.table()[i] ^ g.table()[i];
    }
    return BooleanFunction(f.arity(), f.width(), std::move(t));
}

BooleanFunction random_function(unsigned arity, unsigned width, Seed seed) {
    check_shape(arity, width);
    Rng rng(seed);
    std::vector<std::uint32_t> t(std::size_t{1} << arity);
    for (auto &e : t) {
        e = static_cast<std::uint32_t>(rng.uniform_bits(width));
    }
    return BooleanFunction(arity, width, std::move(t));
}

std::optional<bool> is_permutation(const BooleanFunction &f) {
    if (f.arity() != f.width()) {
        return std::nullopt;
    }
    auto sorted = f.table();
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) {
            return false;
        }
    }
    return true;
}

BooleanFunction inverse(const BooleanFunction &f) {
    if (is_permutation(f) != std::optional<bool>(true)) {
        throw UsageError("function is not a bijection");
    }
    std::vector<std::uint32_t> t(f.table().size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[f.table()[i]] = static_cast<std::uint32_t>(i);
    }
    return BooleanFunction(f.arity(), f.width(), std::move(t));
}

std::string serialize(const BooleanFunction &f) {
    static constexpr char kHex[] = "0123456789abcdef";
    const unsigned digits = (f.width() + 3) / 4;
    std::string out = std::to_string(f.arity()) + ":" + std::to_string(f.width()) + ":";
    for (std::size_t i = 0; i < f.table().size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        const std::uint32_t e = f.table()[i];
        for (unsigned d = digits; d-- > 0;) {
            out += kHex[(e >> (4 * d)) & 0xF];
        }
    }
    return out;
}

BooleanFunction deserialize(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
        throw UsageError("function text must look like 'k:n:e0,e1,...', got '" + std::string(text) + "'");
    }
    const unsigned arity = parse_unsigned(text.substr(0, c1), "arity");
    const unsigned width = parse_unsigned(text.substr(c1 + 1, c2 - c1 - 1), "width");
    check_shape(arity, width);
    std::vector<std::uint32_t> table;
    std::string_view rest = text.substr(c2 + 1);
    for (;;) {
        const auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        if (item.empty() || item.size() > 8) {
            throw UsageError("malformed truth table entry in '" + std::string(text) + "'");
        }
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v, 16);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw UsageError("malformed truth table entry '" + std::string(item) + "'");
        }
        table.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    return BooleanFunction(arity, width, std::move(table));
}

BooleanFunction parse_function(std::string_view text) {
    if (text == "0") {
        return BooleanFunction(1, 1, {0, 0});
    }
    if (text == "1") {
        return BooleanFunction(1, 1, {1, 1});
    }
    if (text == "x") {
        return BooleanFunction(1, 1, {0, 1});
    }
    if (text == "xbar") {
        return BooleanFunction(1, 1, {1, 0});
    }
    return deserialize(text);
}

std::optional<std::uint64_t> function_count(unsigned arity, unsigned width) {
    check_shape(arity, width);
    const std::uint64_t bits = (std::uint64_t{1} << arity) * width;
    if (bits >= 63) {
        return std::nullopt;
    }
    return std::uint64_t{1} << bits;
}

BooleanFunction function_from_index(unsigned arity, unsigned width, std::uint64_t index) {
    const auto count = function_count(arity, width);
    if (!count || index >= *count) {
        throw UsageError("function index out of range");
    }
    std::vector<std::uint32_t> t(std::size_t{1} << arity);
    for (std::size_t i = t.size(); i-- > 0;) {
        t[i] = static_cast<std::uint32_t>(index & width_mask(width));
        index >>= width;
    }
    return BooleanFunction(arity, width, std::move(t));
}

}  // namespace qnokey
