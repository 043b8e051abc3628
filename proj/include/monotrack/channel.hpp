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
#include "monotrack/rng.hpp"

#include <vector>

namespace monotrack
{
    struct PathComponent
    {
        double aoa_u = 0.0; // receive side
        double aod_u = 0.0; // transmit side
        cdouble gain{1.0, 0.0};
    };

    struct RssiSample
    {
        double power = 0.0;

        /// 10 log10(power); -inf for zero power.
        double db() const;
    };

    /// Sparse channel H = sum_p g_p a_rx(aoa_p) a_tx(aod_p)^H plus receiver noise.
    class ChannelState
    {
    public:
        ChannelState(UlaConfig tx, UlaConfig rx, std::vector<PathComponent> paths, double noise_variance = 0.0,
                     double tx_power = 1.0);

        const UlaConfig &tx_config() const noexcept { return tx_; }
        const UlaConfig &rx_config() const noexcept { return rx_; }
        const std::vector<PathComponent> &paths() const noexcept { return paths_; }
        double noise_variance() const noexcept { return noise_variance_; }
        double tx_power() const noexcept { return tx_power_; }

        /// Copy with the first path's AoA replaced (trajectory driving).
        ChannelState with_aoa(double aoa_u) const;
        /// Copy with every path gain multiplied by `scale`.
        ChannelState with_gain_scale(cdouble scale) const;
        ChannelState with_noise_variance(double noise_variance) const;

    private:
        UlaConfig tx_;
        UlaConfig rx_;
        std::vector<PathComponent> paths_;
        double noise_variance_;
        double tx_power_;
    };

    /// w_rx^H H w_tx, accumulated path by path.
    cdouble effective_gain(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx);

    /// Builds H explicitly (N_rx x N_tx, row-major). For cross-checks on small arrays.
    std::vector<cdouble> channel_matrix(const ChannelState &ch);
    cdouble effective_gain_dense(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx);

    /// |sqrt(P) w_rx^H H w_tx + eta|^2 with eta ~ CN(0, sigma^2 N_rx).
    /// A noiseless channel draws nothing from `rng`.
    RssiSample measure_rssi(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx, Rng &rng);

    /// Mean of `count` independent RSSI draws.
    RssiSample measure_rssi_mean(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx,
                                 Rng &rng, std::size_t count);
}
