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

#ifndef QNOKEY_RNG_HPP
#define QNOKEY_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace qnokey {

using Seed = std::uint64_t;

/// Mixes a master seed with a stream tag (splitmix64 finalizer). Used to give
/// every stochastic step and every Monte Carlo trial its own seed.
Seed derive_seed(Seed master, std::uint64_t stream);
Seed derive_seed(Seed master, std::string_view stream);

/// Seeded PRNG. All draws are mapped from raw mt19937_64 output by fixed
/// arithmetic (no std:: distributions) so results are identical across
/// standard library implementations.
class Rng {
  public:
    explicit Rng(Seed seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform over [0, 2^bits), bits in [0, 64].
    std::uint64_t uniform_bits(unsigned bits);

    /// Uniform over [0, bound).
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 bits of randomness.
    double uniform_real();

    /// Standard normal via Box-Muller.
    double normal();

  private:
    std::mt19937_64 engine_;
};

/// Haar-random pure state on `dimension` basis states (normalized complex
/// Gaussian vector).
std::vector<std::complex<double>> random_amplitudes(std::size_t dimension, Seed seed);

}  // namespace qnokey

#endif  // QNOKEY_RNG_HPP
