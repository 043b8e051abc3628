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

#include "monotrack/tracker.hpp"
#include "monotrack/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monotrack
{
    void TrackerConfig::validate() const
    {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw ConfigError("tracker: epsilon must lie in (0, 1)");
        if (max_iterations == 0)
            throw ConfigError("tracker: max_iterations must be positive");
        if (averaging_count == 0)
            throw ConfigError("tracker: averaging_count must be positive");
        if (!(boresight_gate >= 0.0) || !std::isfinite(boresight_gate))
            throw ConfigError("tracker: boresight_gate must be >= 0");
        if (!(dark_factor >= 0.0) || !std::isfinite(dark_factor))
            throw ConfigError("tracker: dark_factor must be >= 0");
        if (!(noise_floor >= 0.0) || !std::isfinite(noise_floor))
            throw ConfigError("tracker: noise_floor must be >= 0");
    }

    TrackerConfig default_tracker_config(const MonopulseComparator &rx, bool noisy)
    {
        TrackerConfig cfg;
        cfg.epsilon = rx.midpoint_threshold();
        cfg.max_iterations = 4 * rx.codebook().size();
        cfg.averaging_count = noisy ? 8 : 1;
        return cfg;
    }

    SearchResult exhaustive_search(const ChannelState &ch, const Codebook &cb_tx, const Codebook &cb_rx, Rng &rng,
                                   std::size_t averaging_count)
    {
        SearchResult best;
        bool first = true;
        for (std::size_t t = 0; t < cb_tx.size(); ++t)
            for (std::size_t r = 0; r < cb_rx.size(); ++r)
            {
                const auto s = measure_rssi_mean(ch, cb_tx.beam(t), cb_rx.beam(r), rng, averaging_count);
                if (first || s.power > best.rssi.power)
                {
                    best = SearchResult{t, r, s};
                    first = false;
                }
            }
        return best;
    }

    namespace
    {
        bool is_dark(const TrackerConfig &cfg, double power) { return power < cfg.dark_factor * cfg.noise_floor; }
    }

    bool error_retains_beam(const TrackerConfig &cfg, const MonopulseError &err)
    {
        return std::abs(err.value) <= cfg.epsilon && !is_dark(cfg, err.p_boresight) &&
               err.p_boresight >= cfg.boresight_gate * std::max(err.p_left, err.p_right);
    }

    TrackerState tracker_step(const TrackerState &st, const TrackerConfig &cfg, const MonopulseError &err,
                              std::size_t n_beams)
    {
        if (st.converged)
            throw ContractViolation("tracker_step called on a converged state");
        if (st.rx_beam >= n_beams)
            throw ContractViolation("tracker_step: rx_beam out of range");

        TrackerState next = st;
        next.iterations = st.iterations + 1;
        next.last_error = err;

        if (error_retains_beam(cfg, err))
        {
            next.converged = true;
            return next;
        }

        // a symmetric reading with a dark boresight has no preferred side; go right
        const bool right = err.value >= 0.0 || is_dark(cfg, std::max(err.p_left, err.p_right));
        if (cfg.circular)
            next.rx_beam = right ? (st.rx_beam + 1) % n_beams : (st.rx_beam + n_beams - 1) % n_beams;
        else if (right)
            next.rx_beam = std::min(st.rx_beam + 1, n_beams - 1);
        else
            next.rx_beam = st.rx_beam == 0 ? 0 : st.rx_beam - 1;
        return next;
    }

    TrackTrace track_until_converged(const ChannelState &ch, const Codebook &cb_tx, const MonopulseComparator &rx,
                                     const SearchResult &seed, const TrackerConfig &cfg, Rng &rng)
    {
        TrackerConfig run_cfg = cfg;
        run_cfg.noise_floor = ch.noise_variance() * static_cast<double>(ch.rx_config().n_elements);
        run_cfg.validate();
        const std::size_t n = rx.codebook().size();
        if (seed.rx_beam >= n || seed.tx_beam >= cb_tx.size())
            throw ContractViolation("track_until_converged: seed beam out of range");

        const auto &w_tx = cb_tx.beam(seed.tx_beam);
        const RssiProbe probe = [&](const SteeringVector &w_rx) {
            return measure_rssi_mean(ch, w_tx, w_rx, rng, cfg.averaging_count);
        };

        TrackTrace trace;
        TrackerState st;
        st.rx_beam = seed.rx_beam;
        st.tx_beam = seed.tx_beam;
        while (!st.converged && st.iterations < cfg.max_iterations)
        {
            st = tracker_step(st, run_cfg, rx.error(st.rx_beam, probe), n);
            trace.states.push_back(st);
        }
        trace.converged = st.converged;
        if (!st.converged)
        {
            trace.track_lost = true;
            trace.states.back().track_lost = true;
        }
        return trace;
    }

    std::size_t count_dither(const std::vector<TrackerState> &states)
    {
        std::size_t count = 0;
        for (std::size_t i = 2; i < states.size(); ++i)
            if (states[i].rx_beam == states[i - 2].rx_beam && states[i].rx_beam != states[i - 1].rx_beam)
                ++count;
        return count;
    }

    std::size_t circular_distance(std::size_t a, std::size_t b, std::size_t n)
    {
        const std::size_t d = (a + n - b) % n;
        return std::min(d, n - d);
    }
}
