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

#ifndef QNOKEY_STATEVECTOR_HPP
#define QNOKEY_STATEVECTOR_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rng.hpp"

namespace qnokey {

using Complex = std::complex<double>;

/// Tolerance for internal invariants (norm, trace, hermiticity, clearing).
inline constexpr double kStateTolerance = 1e-9;
/// Tolerance on user-supplied normalization before renormalizing.
inline constexpr double kInputTolerance = 1e-6;
/// Largest matrix dimension we diagonalize or materialize.
inline constexpr std::size_t kMaxMatrixDimension = std::size_t{1} << 12;

/// Upper bound on the total qubit count of a layout. Defaults to 24;
/// QNOKEY_MAX_QUBITS in the environment overrides it.
unsigned max_total_qubits();

/// Fixed-width classical bit string. Bit 1 (leftmost when printed) is the
/// most significant bit of `value`.
struct BitString {
    std::uint64_t value = 0;
    unsigned width = 0;

    static BitString parse(std::string_view text);
    std::string str() const;

    friend bool operator==(const BitString &, const BitString &) = default;
};

struct Register {
    std::string name;
    unsigned width = 0;

    friend bool operator==(const Register &, const Register &) = default;
};

/// Ordered named registers. The first register occupies the most significant
/// bits of a basis index, the last register the least significant.
class RegisterLayout {
  public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> registers);

    const std::vector<Register> &registers() const { return registers_; }
    unsigned total_width() const { return total_width_; }
    std::size_t dimension() const { return std::size_t{1} << total_width_; }

    bool contains(std::string_view name) const;
    const Register &at(std::string_view name) const;
    std::size_t position(std::string_view name) const;
    unsigned width(std::string_view name) const { return at(name).width; }

    /// Bit offset of the register's least significant qubit inside an index.
    unsigned shift(std::string_view name) const;
    std::uint64_t mask(std::string_view name) const;
    std::uint64_t extract(std::uint64_t index, std::string_view name) const {
        return (index & mask(name)) >> shift(name);
    }

    /// Global qubit index (0 = most significant qubit of the first register)
    /// of bit `bit` (0 = most significant) of a register.
    unsigned qubit(std::string_view name, unsigned bit) const;

    RegisterLayout with_register(Register reg) const;
    RegisterLayout without_register(std::string_view name) const;
    RegisterLayout renamed(std::string_view from, std::string to) const;

    friend bool operator==(const RegisterLayout &, const RegisterLayout &) = default;

  private:
    std::vector<Register> registers_;
    unsigned total_width_ = 0;
};

/// Normalized pure state over a register layout.
class QuantumState {
  public:
    /// Validates length (2^total_width) and norm (within kStateTolerance).
    QuantumState(RegisterLayout layout, std::vector<Complex> amplitudes);

    const RegisterLayout &layout() const { return layout_; }
    const std::vector<Complex> &amplitudes() const { return amplitudes_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }
    double norm() const;

  private:
    RegisterLayout layout_;
    std::vector<Complex> amplitudes_;
};

/// Dense density matrix. Construction via from_matrix validates hermiticity,
/// unit trace and (for dimensions up to kMaxMatrixDimension) positivity.
class DensityMatrix {
  public:
    static DensityMatrix from_matrix(Eigen::MatrixXcd m);
    static DensityMatrix pure(std::span<const Complex> amplitudes);

    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return m_; }
    Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    double purity() const;

  private:
    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
    Eigen::MatrixXcd m_;

    friend DensityMatrix reduced_density_matrix(const QuantumState &, std::span<const std::string>);
};

struct MeasurementOutcome {
    std::string register_name;
    BitString value;
    double probability = 0.0;
    QuantumState post_state;
};

/// Prepares sum_m alpha_m |m>_first |0>_rest when `ancillas_zero` is set
/// (`message` spans the first register); otherwise `message` spans the whole
/// layout. Input is renormalized after a kInputTolerance norm check.
QuantumState make_state(const RegisterLayout &layout, std::span<const Complex> message,
                        bool ancillas_zero = true);

/// Computational basis state |value> on a single-register layout.
QuantumState basis_state(const RegisterLayout &layout, std::uint64_t index);

/// |<a|b>|^2. Layouts must match.
double fidelity(const QuantumState &a, const QuantumState &b);
/// <psi|rho|psi>.
double fidelity(const DensityMatrix &rho, std::span<const Complex> psi);

/// Marginal Born distribution of a register, indexed by register value.
std::vector<double> register_distribution(const QuantumState &state, std::string_view reg);

/// Probability that `reg` reads all zeros.
double zero_probability(const QuantumState &state, std::string_view reg);

/// Projects `reg` onto `value` and renormalizes. Throws StateError when the
/// outcome has zero probability.
QuantumState project_register(const QuantumState &state, std::string_view reg, std::uint64_t value);

MeasurementOutcome measure_register(const QuantumState &state, std::string_view reg, Seed seed);

/// Partial trace over every register not in `keep`. Rows are indexed by the
/// kept registers' contents concatenated in layout order.
DensityMatrix reduced_density_matrix(const QuantumState &state, std::span<const std::string> keep);
DensityMatrix reduced_density_matrix(const QuantumState &state, std::initializer_list<std::string> keep);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace qnokey

#endif  // QNOKEY_STATEVECTOR_HPP
