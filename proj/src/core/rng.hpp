// SPDX-License-Identifier: Apache-2.0
//
// xljrc - dual-polarized XL-MIMO joint radar and communication simulator
// Copyright (C) 2025-2026 the xljrc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef XLJRC_CORE_RNG_HPP
#define XLJRC_CORE_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "common.hpp"

namespace xljrc
{
    // Deterministic per-trial random stream. Streams derived from the same
    // master seed but different indices are statistically independent; the
    // same (seed, indices) pair always reproduces the same draw sequence.
    //
    // All distributions are generated from raw 64-bit engine output
    // (uniform via 53-bit mantissa, Gaussian via Box-Muller), so draw
    // sequences do not depend on the standard library's distribution
    // implementations.
    class RngStream
    {
    public:
        RngStream(std::uint64_t seed, std::uint64_t stream_index)
            : RngStream(seed, {stream_index}) {}

        RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> indices)
        {
            std::uint64_t state = mix(seed ^ 0x8E54F1D5B7A9C3E1ull);
            for (std::uint64_t idx : indices)
                state = mix(state ^ mix(idx + 0x9E3779B97F4A7C15ull));
            engine_.seed(state);
            engine_.discard(8); // flush low-entropy startup state
        }

        std::uint64_t next_u64() { return engine_(); }

        // Uniform in [0, 1)
        double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Uniform integer in [0, n)
        std::uint64_t uniform_int(std::uint64_t n)
        {
            // modulo rejection to avoid bias
            const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
            std::uint64_t v;
            do
                v = next_u64();
            while (v >= limit);
            return v % n;
        }

        bool bernoulli(double p) { return uniform() < p; }

        // Standard normal via Box-Muller
        double gaussian()
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            double u1, u2;
            do
                u1 = uniform();
            while (u1 <= 0.0);
            u2 = uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            spare_ = r * std::sin(TWO_PI * u2);
            has_spare_ = true;
            return r * std::cos(TWO_PI * u2);
        }

        // Circularly-symmetric complex Gaussian with E[|w|^2] = variance
        cdouble cgaussian(double variance)
        {
            const double s = std::sqrt(variance * 0.5);
            return {s * gaussian(), s * gaussian()};
        }

        // Exponential with the given mean
        double exponential(double mean)
        {
            double u;
            do
                u = uniform();
            while (u <= 0.0);
            return -mean * std::log(u);
        }

    private:
        static std::uint64_t mix(std::uint64_t z)
        {
            // splitmix64 finalizer
            z += 0x9E3779B97F4A7C15ull;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return z ^ (z >> 31);
        }

        std::mt19937_64 engine_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };

    // Spec surface: independent stream for one Monte Carlo trial
    inline RngStream rng_stream(std::uint64_t seed, std::uint64_t trial_index)
    {
        return RngStream(seed, trial_index);
    }
}

#endif
