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

#ifndef QNOKEY_ORACLE_HPP
#define QNOKEY_ORACLE_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boolfn.hpp"
#include "statevector.hpp"

namespace qnokey {

/// |m>_source |y>_target -> |m>_source |y ^ f(m)>_target. A permutation of
/// basis amplitudes.
QuantumState apply_oracle(const QuantumState &state, const BooleanFunction &f, std::string_view source,
                          std::string_view target);

/// Single-qubit Hadamard on every qubit of `reg`.
QuantumState apply_hadamard(const QuantumState &state, std::string_view reg);

/// X on every qubit of `reg` whose bit is set in `mask` (bit 1 = MSB).
QuantumState apply_x_mask(const QuantumState &state, std::string_view reg, std::uint64_t mask);

/// |m>_reg -> |s(m)>_reg. Requires a bijective s.
QuantumState apply_permutation(const QuantumState &state, const BooleanFunction &s, std::string_view reg);

/// Appends a fresh |0> register as the least significant register.
QuantumState attach_register(const QuantumState &state, std::string name, unsigned width);

/// True when `reg` is |0> with probability 1 or unentangled with the rest
/// (reduced state pure), both within kStateTolerance.
bool is_detachable(const QuantumState &state, std::string_view reg);

/// Removes `reg`. Refuses (StateError) when the register is entangled and
/// not cleared.
QuantumState detach_register(const QuantumState &state, std::string_view reg);

QuantumState rename_register(const QuantumState &state, std::string_view from, std::string to);

struct Gate {
    enum class Kind { X, CX, MCX };

    Kind kind = Kind::X;
    std::vector<unsigned> controls;
    unsigned target = 0;

    friend bool operator==(const Gate &, const Gate &) = default;
};

using GateList = std::vector<Gate>;

/// One (multi-)controlled X per monomial of each output bit's algebraic
/// normal form; controls are all positive. Qubits are global indices,
/// 0 = most significant.
GateList compile_oracle(const BooleanFunction &f, std::span<const unsigned> source_qubits,
                        std::span<const unsigned> target_qubits);
GateList compile_oracle(const BooleanFunction &f, const RegisterLayout &layout, std::string_view source,
                        std::string_view target);

QuantumState apply_gates(const QuantumState &state, const GateList &gates);

const char *gate_name(Gate::Kind kind);

}  // namespace qnokey

#endif  // QNOKEY_ORACLE_HPP
