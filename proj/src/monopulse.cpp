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

#include "monotrack/monopulse.hpp"
#include "monotrack/errors.hpp"

#include <cmath>
#include <string>

namespace monotrack
{
    MonopulseError make_monopulse_error(double p_left, double p_right, double p_boresight)
    {
        MonopulseError e;
        e.p_left = p_left;
        e.p_right = p_right;
        e.p_boresight = p_boresight;
        const double sum = p_left + p_right;
        e.value = sum > 0.0 ? (p_right - p_left) / sum : 0.0;
        return e;
    }

    double default_squint(const Codebook &cb)
    {
        return cb.grid_spacing() / 4.0;
    }

    MonopulseComparator::MonopulseComparator(const Codebook &cb, std::optional<double> squint_u)
        : cb_(cb), squint_(squint_u.value_or(default_squint(cb)))
    {
        if (!(squint_ > 0.0) || !(squint_ < cb.grid_spacing()))
            throw ConfigError("squint_u must lie in (0, grid spacing = " + std::to_string(cb.grid_spacing()) + ")");

        left_.reserve(cb.size());
        right_.reserve(cb.size());
        for (std::size_t k = 0; k < cb.size(); ++k)
        {
            auto l = phase_progression(cb.config(), cb.mra_u(k) - squint_);
            auto r = phase_progression(cb.config(), cb.mra_u(k) + squint_);
            if (const auto bits = cb.quantization_bits())
            {
                l = quantize_weights(l, *bits);
                r = quantize_weights(r, *bits);
            }
            left_.push_back(std::move(l));
            right_.push_back(std::move(r));
        }
    }

    MonopulseError MonopulseComparator::error(std::size_t k, const RssiProbe &measure) const
    {
        if (k >= cb_.size())
            throw std::out_of_range("monopulse: beam index " + std::to_string(k) + " out of range");
        const double pl = measure(left_[k]).power;
        const double pr = measure(right_[k]).power;
        const double pb = measure(cb_.beam(k)).power;
        return make_monopulse_error(pl, pr, pb);
    }

    MonopulseError MonopulseComparator::discriminator(std::size_t k, double u) const
    {
        if (k >= cb_.size())
            throw std::out_of_range("monopulse: beam index " + std::to_string(k) + " out of range");
        const auto &cfg = cb_.config();
        return make_monopulse_error(std::norm(array_factor(cfg, left_[k].weights, u)),
                                    std::norm(array_factor(cfg, right_[k].weights, u)),
                                    std::norm(array_factor(cfg, cb_.beam(k).weights, u)));
    }

    double MonopulseComparator::midpoint_threshold() const
    {
        const std::size_t k = cb_.size() / 2; // u = 0 beam
        return std::abs(discriminator(k, cb_.mra_u(k) + cb_.grid_spacing() / 2.0).value);
    }

    MonopulseError monopulse_error(const Codebook &cb_rx, std::size_t k, const RssiProbe &measure,
                                   std::optional<double> squint_u)
    {
        return MonopulseComparator(cb_rx, squint_u).error(k, measure);
    }
}
