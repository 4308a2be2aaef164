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

#ifndef QNOKEY_BOOLFN_HPP
#define QNOKEY_BOOLFN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rng.hpp"
#include "statevector.hpp"

namespace qnokey {

inline constexpr unsigned kMaxArity = 16;
inline constexpr unsigned kMaxWidth = 32;

/// Truth table of a k-input, n-output Boolean function.
class BooleanFunction {
  public:
    BooleanFunction(unsigned arity, unsigned width, std::vector<std::uint32_t> table);

    static BooleanFunction constant(unsigned arity, unsigned width, std::uint32_t value);
    static BooleanFunction identity(unsigned bits);

    unsigned arity() const { return arity_; }
    unsigned width() const { return width_; }
    const std::vector<std::uint32_t> &table() const { return table_; }
    std::uint32_t operator()(std::uint64_t input) const { return table_.at(input); }

    friend bool operator==(const BooleanFunction &, const BooleanFunction &) = default;

  private:
    unsigned arity_;
    unsigned width_;
    std::vector<std::uint32_t> table_;
};

/// Session function plus the preshared identification key.
struct KeyPair {
    KeyPair(BooleanFunction session, BooleanFunction id);
    BooleanFunction f;
    BooleanFunction s;
};

BitString eval(const BooleanFunction &f, const BitString &m);

/// Pointwise XOR of two tables of the same shape.
BooleanFunction xor_functions(const BooleanFunction &f, const BooleanFunction &g);

/// Each entry i.i.d. uniform over [0, 2^width).
BooleanFunction random_function(unsigned arity, unsigned width, Seed seed);

/// True iff the table is a bijection. std::nullopt when arity != width.
std::optional<bool> is_permutation(const BooleanFunction &f);

/// Inverse of a bijective function; throws UsageError otherwise.
BooleanFunction inverse(const BooleanFunction &f);

/// "k:n:e0,e1,..." with lower-case hex entries of width ceil(n/4).
std::string serialize(const BooleanFunction &f);
BooleanFunction deserialize(std::string_view text);

/// Accepts the serialized form or, for k = n = 1, the names 0, 1, x, xbar.
BooleanFunction parse_function(std::string_view text);

/// Number of distinct functions with this shape, or nullopt past 2^63.
std::optional<std::uint64_t> function_count(unsigned arity, unsigned width);

/// The `index`-th function in lexicographic table order (entry 0 most
/// significant). Used to enumerate small key spaces.
BooleanFunction function_from_index(unsigned arity, unsigned width, std::uint64_t index);

}  // namespace qnokey

#endif  // QNOKEY_BOOLFN_HPP
