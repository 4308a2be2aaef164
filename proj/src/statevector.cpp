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

#include "statevector.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>

#include "error.hpp"

namespace qnokey {

unsigned max_total_qubits() {
    const char *env = std::getenv("QNOKEY_MAX_QUBITS");
    if (env == nullptr || *env == '\0') {
        return 24;
    }
    unsigned value = 0;
    std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0 || value > 30) {
        throw UsageError("QNOKEY_MAX_QUBITS must be an integer in [1, 30], got '" + std::string(text) + "'");
    }
    return value;
}

BitString BitString::parse(std::string_view text) {
    if (text.empty() || text.size() > 64) {
        throw UsageError("bit string must have 1..64 characters, got '" + std::string(text) + "'");
    }
    BitString out;
    out.width = static_cast<unsigned>(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw UsageError("bit string may only contain 0 and 1, got '" + std::string(text) + "'");
        }
        out.value = (out.value << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return out;
}

std::string BitString::str() const {
    std::string out(width, '0');
    for (unsigned i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1U) {
            out[i] = '1';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
    std::set<std::string> names;
    for (const auto &r : registers_) {
        if (r.name.empty()) {
            throw UsageError("register names must be non-empty");
        }
        if (r.width == 0) {
            throw UsageError("register '" + r.name + "' must have width >= 1");
        }
        if (!names.insert(r.name).second) {
            throw UsageError("duplicate register name '" + r.name + "'");
        }
        total_width_ += r.width;
    }
    if (total_width_ > max_total_qubits()) {
        throw UsageError("layout needs " + std::to_string(total_width_) + " qubits; the maximum is " +
                         std::to_string(max_total_qubits()));
    }
}

bool RegisterLayout::contains(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(), [&](const Register &r) { return r.name == name; });
}

std::size_t RegisterLayout::position(std::string_view name) const {
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        if (registers_[i].name == name) {
            return i;
        }
    }
    throw UsageError("unknown register '" + std::string(name) + "'");
}

const Register &RegisterLayout::at(std::string_view name) const { return registers_[position(name)]; }

unsigned RegisterLayout::shift(std::string_view name) const {
    unsigned s = 0;
    for (std::size_t i = registers_.size(); i-- > position(name) + 1;) {
        s += registers_[i].width;
    }
    return s;
}

std::uint64_t RegisterLayout::mask(std::string_view name) const {
    return ((std::uint64_t{1} << width(name)) - 1) << shift(name);
}

unsigned RegisterLayout::qubit(std::string_view name, unsigned bit) const {
    const Register &r = at(name);
    if (bit >= r.width) {
        throw UsageError("bit " + std::to_string(bit) + " out of range for register '" + r.name + "'");
    }
    return total_width_ - shift(name) - r.width + bit;
}

RegisterLayout RegisterLayout::with_register(Register reg) const {
    auto regs = registers_;
    regs.push_back(std::move(reg));
    return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::without_register(std::string_view name) const {
    auto regs = registers_;
    regs.erase(regs.begin() + static_cast<std::ptrdiff_t>(position(name)));
    return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::renamed(std::string_view from, std::string to) const {
    auto regs = registers_;
    regs[position(from)].name = std::move(to);
    return RegisterLayout(std::move(regs));
}

// ---------------------------------------------------------------------------
// QuantumState

namespace {

double squared_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto &a : v) {
        s += std::norm(a);
    }
    return s;
}

}  // namespace

QuantumState::QuantumState(RegisterLayout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.dimension()) {
        throw UsageError("amplitude count " + std::to_string(amplitudes_.size()) + " does not match layout dimension " +
                         std::to_string(layout_.dimension()));
    }
    if (std::abs(norm() - 1.0) > kStateTolerance) {
        throw InvariantViolation("state norm deviates from 1 by more than 1e-9");
    }
}

double QuantumState::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::from_matrix(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw UsageError("density matrix must be square and non-empty");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
        throw UsageError("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > kStateTolerance) {
        throw UsageError("density matrix trace is not 1");
    }
    if (static_cast<std::size_t>(m.rows()) <= kMaxMatrixDimension) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -kStateTolerance) {
            throw UsageError("density matrix has a negative eigenvalue");
        }
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes) {
    Eigen::Map<const Eigen::VectorXcd> v(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size()));
    return from_matrix(v * v.adjoint());
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

// ---------------------------------------------------------------------------
// Operations

QuantumState make_state(const RegisterLayout &layout, std::span<const Complex> message, bool ancillas_zero) {
    if (layout.registers().empty()) {
        throw UsageError("layout has no registers");
    }
    const std::size_t expected =
        ancillas_zero ? std::size_t{1} << layout.registers().front().width : layout.dimension();
    if (message.size() != expected) {
        throw UsageError("message has " + std::to_string(message.size()) + " amplitudes, expected " +
                         std::to_string(expected));
    }
    const double n2 = squared_norm(message);
    if (n2 == 0.0) {
        throw UsageError("message is the zero vector");
    }
    const double n = std::sqrt(n2);
    if (std::abs(n - 1.0) > kInputTolerance) {
        throw UsageError("message norm " + std::to_string(n) + " is not 1 within 1e-6");
    }
    std::vector<Complex> amps(layout.dimension());
    const unsigned first_shift = ancillas_zero ? layout.total_width() - layout.registers().front().width : 0;
    for (std::size_t m = 0; m < message.size(); ++m) {
        amps[m << first_shift] = message[m] / n;
    }
    return QuantumState(layout, std::move(amps));
}

QuantumState basis_state(const RegisterLayout &layout, std::uint64_t index) {
    if (index >= layout.dimension()) {
        throw UsageError("basis index out of range");
    }
    std::vector<Complex> amps(layout.dimension());
    amps[index] = 1.0;
    return QuantumState(layout, std::move(amps));
}

double fidelity(const QuantumState &a, const QuantumState &b) {
    if (!(a.layout() == b.layout())) {
        throw UsageError("fidelity requires identical layouts");
    }
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double fidelity(const DensityMatrix &rho, std::span<const Complex> psi) {
    if (psi.size() != rho.dimension()) {
        throw UsageError("fidelity: dimension mismatch");
    }
    Eigen::Map<const Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
    Complex f = v.adjoint() * rho.matrix() * v;
    return std::clamp(f.real(), 0.0, 1.0);
}

std::vector<double> register_distribution(const QuantumState &state, std::string_view reg) {
    const auto &layout = state.layout();
    std::vector<double> dist(std::size_t{1} << layout.width(reg), 0.0);
    const std::uint64_t mask = layout.mask(reg);
    const unsigned shift = layout.shift(reg);
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        dist[(i & mask) >> shift] += std::norm(state.amplitudes()[i]);
    }
    return dist;
}

double zero_probability(const QuantumState &state, std::string_view reg) {
    const std::uint64_t mask = state.layout().mask(reg);
    double p = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if ((i & mask) == 0) {
            p += std::norm(state.amplitudes()[i]);
        }
    }
    return std::min(p, 1.0);
}

QuantumState project_register(const QuantumState &state, std::string_view reg, std::uint64_t value) {
    const auto &layout = state.layout();
    const std::uint64_t mask = layout.mask(reg);
    const std::uint64_t want = value << layout.shift(reg);
    if ((want & ~mask) != 0) {
        throw UsageError("value does not fit register '" + std::string(reg) + "'");
    }
    std::vector<Complex> amps(state.dimension());
    double p = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if ((i & mask) == want) {
            amps[i] = state.amplitudes()[i];
            p += std::norm(amps[i]);
        }
    }
    if (p <= 0.0) {
        throw StateError("projection onto an outcome of probability zero");
    }
    const double scale = 1.0 / std::sqrt(p);
    for (auto &a : amps) {
        a *= scale;
    }
    return QuantumState(layout, std::move(amps));
}

MeasurementOutcome measure_register(const QuantumState &state, std::string_view reg, Seed seed) {
    const auto dist = register_distribution(state, reg);
    Rng rng(seed);
    const double u = rng.uniform_real();
    double acc = 0.0;
    std::size_t pick = dist.size();
    for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] <= 0.0) {
            continue;
        }
        acc += dist[v];
        pick = v;
        if (u < acc) {
            break;
        }
    }
    // Round-off can leave u >= acc; `pick` is then the last non-zero outcome.
    const unsigned width = state.layout().width(reg);
    return MeasurementOutcome{std::string(reg), BitString{pick, width}, std::min(dist[pick], 1.0),
                              project_register(state, reg, pick)};
}

DensityMatrix reduced_density_matrix(const QuantumState &state, std::span<const std::string> keep) {
    const auto &layout = state.layout();
    if (keep.empty()) {
        throw UsageError("reduced_density_matrix: keep set is empty");
    }
    std::set<std::string> keep_set;
    for (const auto &k : keep) {
        if (!layout.contains(k)) {
            throw UsageError("unknown register '" + k + "'");
        }
        keep_set.insert(k);
    }
    unsigned keep_width = 0;
    for (const auto &r : layout.registers()) {
        if (keep_set.count(r.name)) {
            keep_width += r.width;
        }
    }
    const std::size_t dim_keep = std::size_t{1} << keep_width;
    const std::size_t dim_rest = state.dimension() / dim_keep;
    if (dim_keep > kMaxMatrixDimension) {
        throw UsageError("reduced density matrix dimension exceeds 4096");
    }
    // Rows: kept index, columns: traced-out index.
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_keep),
                                                  static_cast<Eigen::Index>(dim_rest));
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        std::uint64_t kept = 0;
        std::uint64_t rest = 0;
        for (const auto &r : layout.registers()) {
            const std::uint64_t v = layout.extract(i, r.name);
            if (keep_set.count(r.name)) {
                kept = (kept << r.width) | v;
            } else {
                rest = (rest << r.width) | v;
            }
        }
        psi(static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(rest)) = state.amplitudes()[i];
    }
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    // Exact hermiticity; the product can differ from its adjoint in the last ulp.
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(std::move(rho));
}

DensityMatrix reduced_density_matrix(const QuantumState &state, std::initializer_list<std::string> keep) {
    std::vector<std::string> v(keep);
    return reduced_density_matrix(state, std::span<const std::string>(v));
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dimension() != b.dimension()) {
        throw UsageError("trace_distance: dimension mismatch");
    }
    if (a.dimension() > kMaxMatrixDimension) {
        throw UsageError("trace_distance: dimension exceeds 4096");
    }
    Eigen::MatrixXcd diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    const double d = 0.5 * solver.eigenvalues().cwiseAbs().sum();
    return std::clamp(d, 0.0, 1.0);
}

}  // namespace qnokey
