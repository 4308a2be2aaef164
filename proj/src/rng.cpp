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

#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace qnokey {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

Seed derive_seed(Seed master, std::string_view stream) {
    // FNV-1a over the tag.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return derive_seed(master, h);
}

std::uint64_t Rng::uniform_bits(unsigned bits) {
    if (bits == 0) {
        return 0;
    }
    std::uint64_t raw = engine_();
    return bits >= 64 ? raw : raw >> (64 - bits);
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    // Rejection sampling on the smallest covering power of two.
    unsigned bits = 0;
    while (bits < 64 && (std::uint64_t{1} << bits) < bound) {
        ++bits;
    }
    for (;;) {
        std::uint64_t v = uniform_bits(bits);
        if (v < bound) {
            return v;
        }
    }
}

double Rng::uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    double u1 = uniform_real();
    while (u1 <= 0.0) {
        u1 = uniform_real();
    }
    double u2 = uniform_real();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::complex<double>> random_amplitudes(std::size_t dimension, Seed seed) {
    Rng rng(seed);
    std::vector<std::complex<double>> out(dimension);
    double norm2 = 0.0;
    for (auto &a : out) {
        double re = rng.normal();
        double im = rng.normal();
        a = {re, im};
        norm2 += re * re + im * im;
    }
    double scale = 1.0 / std::sqrt(norm2);
    for (auto &a : out) {
        a *= scale;
    }
    return out;
}

}  // namespace qnokey
