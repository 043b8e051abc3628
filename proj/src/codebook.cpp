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

#include "monotrack/codebook.hpp"
#include "monotrack/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace monotrack
{
    namespace
    {
        constexpr double kHpbwTolerance = 1e-9;

        double power_at(const Codebook &cb, std::size_t k, double u)
        {
            return std::norm(array_factor(cb.config(), cb.beam(k).weights, u));
        }

        // Finds x in [lo, hi] with f(lo) > 0 >= f(hi) to within kHpbwTolerance.
        template <typename F>
        double bisect(F f, double lo, double hi)
        {
            while (hi - lo > kHpbwTolerance)
            {
                const double mid = 0.5 * (lo + hi);
                if (f(mid) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }

    Codebook::Codebook(UlaConfig cfg, std::vector<SteeringVector> beams, std::vector<double> mra_u,
                       std::optional<unsigned> quantization_bits)
        : cfg_(cfg), beams_(std::move(beams)), mra_u_(std::move(mra_u)), bits_(quantization_bits)
    {
        if (beams_.size() != cfg_.n_elements || mra_u_.size() != cfg_.n_elements)
            throw ContractViolation("Codebook: beam and MRA count must equal n_elements");
    }

    const SteeringVector &Codebook::beam(std::size_t k) const
    {
        if (k >= beams_.size())
            throw std::out_of_range("Codebook: beam index " + std::to_string(k) + " out of range");
        return beams_[k];
    }

    double Codebook::mra_u(std::size_t k) const
    {
        if (k >= mra_u_.size())
            throw std::out_of_range("Codebook: beam index " + std::to_string(k) + " out of range");
        return mra_u_[k];
    }

    Codebook generate_codebook(const UlaConfig &cfg)
    {
        cfg.validate();
        const std::size_t n = cfg.n_elements;
        std::vector<SteeringVector> beams;
        std::vector<double> mra;
        beams.reserve(n);
        mra.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            const double u = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n);
            mra.push_back(u);
            beams.push_back(steering_vector(cfg, USpaceAngle(u)));
        }
        return Codebook(cfg, std::move(beams), std::move(mra), std::nullopt);
    }

    std::vector<double> beam_pattern(const Codebook &cb, std::size_t k, std::span<const double> u_grid)
    {
        const auto &w = cb.beam(k);
        std::vector<double> out;
        out.reserve(u_grid.size());
        for (double u : u_grid)
            out.push_back(std::norm(array_factor(cb.config(), w.weights, u)));
        return out;
    }

    HpbwMeasurement measure_hpbw(const Codebook &cb, std::size_t k)
    {
        const double mra = cb.mra_u(k);
        const double n = static_cast<double>(cb.size());
        const double peak = power_at(cb, k, mra);
        const double half = 0.5 * peak;

        // first null of the unquantized beam sits 1/(N d) away from the MRA
        const double reach = 1.0 / (n * cb.config().spacing_wavelengths);

        const double right = bisect([&](double x) { return power_at(cb, k, mra + x) - half; }, 0.0, reach);
        const double left = bisect([&](double x) { return power_at(cb, k, mra - x) - half; }, 0.0, reach);

        HpbwMeasurement m;
        m.beam_index = k;
        m.lower_u = mra - left;
        m.upper_u = mra + right;
        m.width_u = left + right;
        if (m.lower_u > -1.0 && m.upper_u < 1.0)
            m.width_theta = std::asin(m.upper_u) - std::asin(m.lower_u);
        return m;
    }

    double quantize_phase(double phase, unsigned bits)
    {
        if (bits < 1 || bits > 16)
            throw ConfigError("quantization bits must be in [1, 16], got " + std::to_string(bits));
        const double step = 2.0 * std::numbers::pi / static_cast<double>(1u << bits);
        // ceil(x - 0.5) rounds to nearest with halves going down
        const double level = std::ceil(phase / step - 0.5);
        return level * step;
    }

    SteeringVector quantize_weights(const SteeringVector &w, unsigned bits)
    {
        SteeringVector q;
        q.weights.reserve(w.size());
        for (const auto &x : w.weights)
            q.weights.push_back(std::polar(1.0, quantize_phase(std::arg(x), bits)));
        return q;
    }

    Codebook quantize_codebook(const Codebook &cb, unsigned bits)
    {
        std::vector<SteeringVector> beams;
        beams.reserve(cb.size());
        for (std::size_t k = 0; k < cb.size(); ++k)
            beams.push_back(quantize_weights(cb.beam(k), bits));
        return Codebook(cb.config(), std::move(beams), cb.mra_grid(), bits);
    }

    RealMatrix orthogonality_gram(const Codebook &cb)
    {
        const std::size_t n = cb.size();
        RealMatrix g{n, std::vector<double>(n * n, 0.0)};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
            {
                cdouble acc(0.0, 0.0);
                const auto &a = cb.beam(i).weights;
                const auto &b = cb.beam(j).weights;
                for (std::size_t e = 0; e < a.size(); ++e)
                    acc += std::conj(a[e]) * b[e];
                g(i, j) = std::abs(acc);
            }
        return g;
    }

    double max_leakage(const Codebook &cb)
    {
        const auto g = orthogonality_gram(cb);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                if (i != j)
                    worst = std::max(worst, g(i, j));
        return worst / static_cast<double>(g.n);
    }
}
