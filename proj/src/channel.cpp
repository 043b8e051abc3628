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

#include "monotrack/channel.hpp"
#include "monotrack/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace monotrack
{
    double RssiSample::db() const
    {
        if (power <= 0.0)
            return -std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(power);
    }

    ChannelState::ChannelState(UlaConfig tx, UlaConfig rx, std::vector<PathComponent> paths, double noise_variance,
                               double tx_power)
        : tx_(tx), rx_(rx), paths_(std::move(paths)), noise_variance_(noise_variance), tx_power_(tx_power)
    {
        tx_.validate();
        rx_.validate();
        if (paths_.empty())
            throw ConfigError("channel: at least one path is required");
        for (const auto &p : paths_)
            if (!(std::abs(p.aoa_u) <= 1.0) || !(std::abs(p.aod_u) <= 1.0))
                throw ConfigError("channel: path AoA/AoD must satisfy |u| <= 1");
        if (!(noise_variance_ >= 0.0) || !std::isfinite(noise_variance_))
            throw ConfigError("channel: noise_variance must be >= 0");
        if (!(tx_power_ > 0.0) || !std::isfinite(tx_power_))
            throw ConfigError("channel: tx_power must be > 0");
    }

    ChannelState ChannelState::with_aoa(double aoa_u) const
    {
        auto paths = paths_;
        paths.front().aoa_u = aoa_u;
        return ChannelState(tx_, rx_, std::move(paths), noise_variance_, tx_power_);
    }

    ChannelState ChannelState::with_gain_scale(cdouble scale) const
    {
        auto paths = paths_;
        for (auto &p : paths)
            p.gain *= scale;
        return ChannelState(tx_, rx_, std::move(paths), noise_variance_, tx_power_);
    }

    ChannelState ChannelState::with_noise_variance(double noise_variance) const
    {
        return ChannelState(tx_, rx_, paths_, noise_variance, tx_power_);
    }

    namespace
    {
        void check_dims(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx)
        {
            if (w_tx.size() != ch.tx_config().n_elements || w_rx.size() != ch.rx_config().n_elements)
                throw ContractViolation("beamforming vector length does not match the array");
        }
    }

    cdouble effective_gain(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx)
    {
        check_dims(ch, w_tx, w_rx);
        cdouble acc(0.0, 0.0);
        for (const auto &p : ch.paths())
        {
            // w_rx^H a_rx(aoa) is the array factor; a_tx(aod)^H w_tx is its conjugate on the Tx side
            const cdouble rx = array_factor(ch.rx_config(), w_rx.weights, p.aoa_u);
            const cdouble tx = std::conj(array_factor(ch.tx_config(), w_tx.weights, p.aod_u));
            acc += p.gain * rx * tx;
        }
        return acc;
    }

    std::vector<cdouble> channel_matrix(const ChannelState &ch)
    {
        const std::size_t nr = ch.rx_config().n_elements;
        const std::size_t nt = ch.tx_config().n_elements;
        std::vector<cdouble> h(nr * nt, cdouble(0.0, 0.0));
        for (const auto &p : ch.paths())
        {
            const auto a_rx = phase_progression(ch.rx_config(), p.aoa_u);
            const auto a_tx = phase_progression(ch.tx_config(), p.aod_u);
            for (std::size_t r = 0; r < nr; ++r)
                for (std::size_t t = 0; t < nt; ++t)
                    h[r * nt + t] += p.gain * a_rx[r] * std::conj(a_tx[t]);
        }
        return h;
    }

    cdouble effective_gain_dense(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx)
    {
        check_dims(ch, w_tx, w_rx);
        const auto h = channel_matrix(ch);
        const std::size_t nr = ch.rx_config().n_elements;
        const std::size_t nt = ch.tx_config().n_elements;
        cdouble acc(0.0, 0.0);
        for (std::size_t r = 0; r < nr; ++r)
        {
            cdouble row(0.0, 0.0);
            for (std::size_t t = 0; t < nt; ++t)
                row += h[r * nt + t] * w_tx[t];
            acc += std::conj(w_rx[r]) * row;
        }
        return acc;
    }

    RssiSample measure_rssi(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx, Rng &rng)
    {
        cdouble y = std::sqrt(ch.tx_power()) * effective_gain(ch, w_tx, w_rx);
        if (ch.noise_variance() > 0.0)
            y += rng.complex_normal(ch.noise_variance() * static_cast<double>(ch.rx_config().n_elements));
        return RssiSample{std::norm(y)};
    }

    RssiSample measure_rssi_mean(const ChannelState &ch, const SteeringVector &w_tx, const SteeringVector &w_rx,
                                 Rng &rng, std::size_t count)
    {
        if (count == 0)
            throw ContractViolation("measure_rssi_mean: count must be positive");
        if (ch.noise_variance() == 0.0)
            return measure_rssi(ch, w_tx, w_rx, rng);

        const cdouble clean = std::sqrt(ch.tx_power()) * effective_gain(ch, w_tx, w_rx);
        const double var = ch.noise_variance() * static_cast<double>(ch.rx_config().n_elements);
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            sum += std::norm(clean + rng.complex_normal(var));
        return RssiSample{sum / static_cast<double>(count)};
    }
}
