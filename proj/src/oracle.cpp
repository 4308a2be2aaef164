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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace qnokey {

QuantumState apply_oracle(const QuantumState &state, const BooleanFunction &f, std::string_view source,
                          std::string_view target) {
    const auto &layout = state.layout();
    if (source == target) {
        throw UsageError("oracle source and target must be different registers");
    }
    if (layout.width(source) != f.arity()) {
        throw UsageError("register '" + std::string(source) + "' has width " + std::to_string(layout.width(source)) +
                         " but the function arity is " + std::to_string(f.arity()));
    }
    if (layout.width(target) != f.width()) {
        throw UsageError("register '" + std::string(target) + "' has width " + std::to_string(layout.width(target)) +
                         " but the function width is " + std::to_string(f.width()));
    }
    const std::uint64_t src_mask = layout.mask(source);
    const unsigned src_shift = layout.shift(source);
    const unsigned tgt_shift = layout.shift(target);
    std::vector<Complex> out(state.dimension());
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const std::uint64_t m = (i & src_mask) >> src_shift;
        out[i ^ (std::uint64_t{f(m)} << tgt_shift)] = state.amplitudes()[i];
    }
    return QuantumState(layout, std::move(out));
}

QuantumState apply_hadamard(const QuantumState &state, std::string_view reg) {
    const auto &layout = state.layout();
    const unsigned shift = layout.shift(reg);
    const unsigned width = layout.width(reg);
    std::vector<Complex> amps = state.amplitudes();
    const double h = 1.0 / std::numbers::sqrt2;
    for (unsigned b = 0; b < width; ++b) {
        const std::size_t bit = std::size_t{1} << (shift + b);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & bit) {
                continue;
            }
            const Complex a0 = amps[i];
            const Complex a1 = amps[i | bit];
            amps[i] = h * (a0 + a1);
            amps[i | bit] = h * (a0 - a1);
        }
    }
    return QuantumState(layout, std::move(amps));
}

QuantumState apply_x_mask(const QuantumState &state, std::string_view reg, std::uint64_t mask) {
    const auto &layout = state.layout();
    if (mask >> layout.width(reg)) {
        throw UsageError("flip mask does not fit register '" + std::string(reg) + "'");
    }
    const std::uint64_t flip = mask << layout.shift(reg);
    std::vector<Complex> out(state.dimension());
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        out[i ^ flip] = state.amplitudes()[i];
    }
    return QuantumState(layout, std::move(out));
}

QuantumState apply_permutation(const QuantumState &state, const BooleanFunction &s, std::string_view reg) {
    const auto &layout = state.layout();
    if (is_permutation(s) != std::optional<bool>(true)) {
        throw UsageError("scheme requires bijective s");
    }
    if (layout.width(reg) != s.arity()) {
        throw UsageError("permutation arity does not match register '" + std::string(reg) + "'");
    }
    const std::uint64_t mask = layout.mask(reg);
    const unsigned shift = layout.shift(reg);
    std::vector<Complex> out(state.dimension());
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const std::uint64_t m = (i & mask) >> shift;
        out[(i & ~mask) | (std::uint64_t{s(m)} << shift)] = state.amplitudes()[i];
    }
    return QuantumState(layout, std::move(out));
}

QuantumState attach_register(const QuantumState &state, std::string name, unsigned width) {
    if (state.layout().contains(name)) {
        throw UsageError("register '" + name + "' already exists");
    }
    auto layout = state.layout().with_register(Register{std::move(name), width});
    std::vector<Complex> amps(layout.dimension());
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        amps[i << width] = state.amplitudes()[i];
    }
    return QuantumState(std::move(layout), std::move(amps));
}

namespace {

// Amplitudes with `reg` fixed to `value`, re-indexed over the remaining
// registers.
std::vector<Complex> slice(const QuantumState &state, std::string_view reg, std::uint64_t value) {
    const auto &layout = state.layout();
    const unsigned shift = layout.shift(reg);
    const unsigned width = layout.width(reg);
    const std::uint64_t low = (std::uint64_t{1} << shift) - 1;
    std::vector<Complex> out(state.dimension() >> width);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::uint64_t i = ((j & ~low) << width) | (value << shift) | (j & low);
        out[j] = state.amplitudes()[i];
    }
    return out;
}

}  // namespace

bool is_detachable(const QuantumState &state, std::string_view reg) {
    if (zero_probability(state, reg) >= 1.0 - kStateTolerance) {
        return true;
    }
    if (state.layout().width(reg) > 12) {
        return false;
    }
    const std::string name(reg);
    return reduced_density_matrix(state, {name}).purity() >= 1.0 - kStateTolerance;
}

QuantumState detach_register(const QuantumState &state, std::string_view reg) {
    auto layout = state.layout().without_register(reg);
    if (zero_probability(state, reg) >= 1.0 - kStateTolerance) {
        return QuantumState(std::move(layout), slice(state, reg, 0));
    }
    if (!is_detachable(state, reg)) {
        throw StateError("register '" + std::string(reg) + "' is entangled with the rest of the state and not cleared");
    }
    // Product state: any slice with non-zero weight is the remaining factor up
    // to a global phase. Take the heaviest one.
    const auto dist = register_distribution(state, reg);
    const auto best = static_cast<std::uint64_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
    auto rest = slice(state, reg, best);
    const double scale = 1.0 / std::sqrt(dist[best]);
    for (auto &a : rest) {
        a *= scale;
    }
    return QuantumState(std::move(layout), std::move(rest));
}

QuantumState rename_register(const QuantumState &state, std::string_view from, std::string to) {
    return QuantumState(state.layout().renamed(from, std::move(to)), state.amplitudes());
}

const char *gate_name(Gate::Kind kind) {
    switch (kind) {
    case Gate::Kind::X:
        return "X";
    case Gate::Kind::CX:
        return "CX";
    case Gate::Kind::MCX:
        return "MCX";
    }
    return "?";
}

GateList compile_oracle(const BooleanFunction &f, std::span<const unsigned> source_qubits,
                        std::span<const unsigned> target_qubits) {
    if (source_qubits.size() != f.arity() || target_qubits.size() != f.width()) {
        throw UsageError("compile_oracle: qubit lists do not match the function shape");
    }
    for (unsigned s : source_qubits) {
        if (std::find(target_qubits.begin(), target_qubits.end(), s) != target_qubits.end()) {
            throw UsageError("compile_oracle: source and target qubits overlap");
        }
    }
    const std::size_t n_inputs = f.table().size();
    GateList gates;
    for (unsigned j = 0; j < f.width(); ++j) {
        // Output bit j, counted from the most significant bit.
        std::vector<std::uint8_t> anf(n_inputs);
        for (std::size_t m = 0; m < n_inputs; ++m) {
            anf[m] = (f(m) >> (f.width() - 1 - j)) & 1U;
        }
        // Binary Moebius transform: truth table -> ANF coefficients.
        for (unsigned b = 0; b < f.arity(); ++b) {
            const std::size_t bit = std::size_t{1} << b;
            for (std::size_t m = 0; m < n_inputs; ++m) {
                if (m & bit) {
                    anf[m] ^= anf[m ^ bit];
                }
            }
        }
        for (std::size_t monomial = 0; monomial < n_inputs; ++monomial) {
            if (!anf[monomial]) {
                continue;
            }
            Gate g;
            g.target = target_qubits[j];
            for (unsigned b = 0; b < f.arity(); ++b) {
                if ((monomial >> (f.arity() - 1 - b)) & 1U) {
                    g.controls.push_back(source_qubits[b]);
                }
            }
            g.kind = g.controls.empty() ? Gate::Kind::X : g.controls.size() == 1 ? Gate::Kind::CX : Gate::Kind::MCX;
            gates.push_back(std::move(g));
        }
    }
    return gates;
}

GateList compile_oracle(const BooleanFunction &f, const RegisterLayout &layout, std::string_view source,
                        std::string_view target) {
    if (source == target) {
        throw UsageError("oracle source and target must be different registers");
    }
    if (layout.width(source) != f.arity() || layout.width(target) != f.width()) {
        throw UsageError("compile_oracle: register widths do not match the function shape");
    }
    std::vector<unsigned> src;
    std::vector<unsigned> tgt;
    for (unsigned b = 0; b < f.arity(); ++b) {
        src.push_back(layout.qubit(source, b));
    }
    for (unsigned b = 0; b < f.width(); ++b) {
        tgt.push_back(layout.qubit(target, b));
    }
    return compile_oracle(f, src, tgt);
}

QuantumState apply_gates(const QuantumState &state, const GateList &gates) {
    const unsigned total = state.layout().total_width();
    std::vector<Complex> amps = state.amplitudes();
    for (const auto &g : gates) {
        const std::size_t expected = g.kind == Gate::Kind::X ? 0 : g.kind == Gate::Kind::CX ? 1 : 2;
        if (g.kind == Gate::Kind::MCX ? g.controls.size() < expected : g.controls.size() != expected) {
            throw UsageError(std::string("gate ") + gate_name(g.kind) + " has the wrong number of controls");
        }
        if (g.target >= total) {
            throw UsageError("gate target out of range");
        }
        std::uint64_t control_mask = 0;
        for (unsigned c : g.controls) {
            if (c >= total || c == g.target) {
                throw UsageError("gate control out of range or equal to target");
            }
            control_mask |= std::uint64_t{1} << (total - 1 - c);
        }
        const std::uint64_t tbit = std::uint64_t{1} << (total - 1 - g.target);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & tbit) == 0 && (i & control_mask) == control_mask) {
                std::swap(amps[i], amps[i | tbit]);
            }
        }
    }
    return QuantumState(state.layout(), std::move(amps));
}

}  // namespace qnokey
