// SPDX-License-Identifier: Apache-2.0
//
// monotrack - monopulse beam tracking simulator for sparse MIMO channels
// Copyright (C) 2026 The monotrack authors
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

#pragma once

#include <complex>
#include <cstdint>
#include <limits>

namespace monotrack
{
    /// SplitMix64 stream. The exact bit sequence is documented in README.md so
    /// that ports in other languages can reproduce it.
    class Rng
    {
    public:
        using result_type = std::uint64_t;

        explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

        static constexpr result_type min() noexcept { return 0; }
        static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

        result_type operator()() noexcept
        {
            std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

        /// Uniform in [0, 1), 53 bits.
        double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

        /// Uniform integer in [0, n). Plain modulo; bias is below 2^-50 for the
        /// small n used here.
        std::uint64_t below(std::uint64_t n) noexcept { return (*this)() % n; }

        /// Standard normal via Box-Muller (cosine branch only, two uniforms per call).
        double normal() noexcept;

        /// Circular complex Gaussian with E|z|^2 = variance.
        std::complex<double> complex_normal(double variance) noexcept;

        /// Independent stream for trial i of a run seeded with `seed`.
        static Rng for_trial(std::uint64_t seed, std::uint64_t trial) noexcept { return Rng(seed + trial); }

    private:
        std::uint64_t state_;
    };
}
