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

#include "monotrack/array.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace monotrack
{
    /// Row-major square matrix of reals.
    struct RealMatrix
    {
        std::size_t n = 0;
        std::vector<double> data;

        double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
        double &operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    };

    struct HpbwMeasurement
    {
        std::size_t beam_index = 0;
        double width_u = 0.0;
        std::optional<double> width_theta; // absent when a half-power point is not visible
        double lower_u = 0.0;              // half-power crossings, unwrapped u
        double upper_u = 0.0;
    };

    /// DFT codebook: beam k points at u_k = -1 + 2k/N.
    class Codebook
    {
    public:
        Codebook(UlaConfig cfg, std::vector<SteeringVector> beams, std::vector<double> mra_u,
                 std::optional<unsigned> quantization_bits);

        const UlaConfig &config() const noexcept { return cfg_; }
        std::size_t size() const noexcept { return beams_.size(); }
        const SteeringVector &beam(std::size_t k) const;
        double mra_u(std::size_t k) const;
        const std::vector<double> &mra_grid() const noexcept { return mra_u_; }
        std::optional<unsigned> quantization_bits() const noexcept { return bits_; }

        /// Spacing of the MRA grid in u (2/N).
        double grid_spacing() const noexcept { return 2.0 / static_cast<double>(beams_.size()); }

    private:
        UlaConfig cfg_;
        std::vector<SteeringVector> beams_;
        std::vector<double> mra_u_;
        std::optional<unsigned> bits_;
    };

    Codebook generate_codebook(const UlaConfig &cfg);

    /// |AF|^2 of beam k at each grid point.
    std::vector<double> beam_pattern(const Codebook &cb, std::size_t k, std::span<const double> u_grid);

    /// Half-power width by bisection on |AF|^2 = N^2/2 either side of the MRA.
    HpbwMeasurement measure_hpbw(const Codebook &cb, std::size_t k);

    /// Nearest multiple of 2 pi / 2^bits; ties go to the smaller phase.
    double quantize_phase(double phase, unsigned bits);
    SteeringVector quantize_weights(const SteeringVector &w, unsigned bits);
    Codebook quantize_codebook(const Codebook &cb, unsigned bits);

    /// |<beam_i, beam_j>| for all pairs.
    RealMatrix orthogonality_gram(const Codebook &cb);

    /// Largest off-diagonal Gram entry divided by N.
    double max_leakage(const Codebook &cb);
}
