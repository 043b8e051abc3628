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

#include "monotrack/channel.hpp"
#include "monotrack/codebook.hpp"
#include "monotrack/monopulse.hpp"
#include "monotrack/rng.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace monotrack
{
    struct SearchResult
    {
        std::size_t tx_beam = 0;
        std::size_t rx_beam = 0;
        RssiSample rssi;
    };

    struct TrackerConfig
    {
        double epsilon = 0.05;            // retain the beam when |error| <= epsilon
        std::size_t max_iterations = 32;  // per convergence episode
        std::size_t averaging_count = 1;  // RSSI draws averaged per lobe
        double boresight_gate = 0.25;     // retain only if P_boresight >= gate * max(P_L, P_R)
        bool circular = true;             // beam index arithmetic mod N; clamped otherwise
        double dark_factor = 4.0;         // readings below dark_factor * noise_floor count as noise
        double noise_floor = 0.0;         // noise-only RSSI; track_until_converged sets it from the channel

        void validate() const;
    };

    /// Defaults for a receive codebook: epsilon at the comparator's midpoint
    /// threshold, 4N iterations, M = 1 noiseless / 8 noisy.
    TrackerConfig default_tracker_config(const MonopulseComparator &rx, bool noisy);

    struct TrackerState
    {
        std::size_t rx_beam = 0;
        std::size_t tx_beam = 0;
        std::optional<MonopulseError> last_error;
        std::size_t iterations = 0;
        bool converged = false;
        bool track_lost = false;
    };

    /// Search over all N_tx x N_rx pairs; ties resolve to the lowest (tx, rx).
    SearchResult exhaustive_search(const ChannelState &ch, const Codebook &cb_tx, const Codebook &cb_rx, Rng &rng,
                                   std::size_t averaging_count = 1);

    /// True when the error says the current beam is the right one. A boresight
    /// reading indistinguishable from noise never retains.
    bool error_retains_beam(const TrackerConfig &cfg, const MonopulseError &err);

    /// One decision: retain (converge) or move one beam toward the error sign.
    /// With both lobes down in the noise the sign is meaningless and the beam sweeps right.
    /// Throws ContractViolation on an already converged state.
    TrackerState tracker_step(const TrackerState &st, const TrackerConfig &cfg, const MonopulseError &err,
                              std::size_t n_beams);

    struct TrackTrace
    {
        std::vector<TrackerState> states; // one entry per iteration
        bool converged = false;
        bool track_lost = false;

        const TrackerState &final_state() const { return states.back(); }
    };

    /// Alternates monopulse measurement and tracker_step from the seed beams
    /// until convergence or cfg.max_iterations.
    TrackTrace track_until_converged(const ChannelState &ch, const Codebook &cb_tx, const MonopulseComparator &rx,
                                     const SearchResult &seed, const TrackerConfig &cfg, Rng &rng);

    /// Number of A -> B -> A beam reversals in a trace.
    std::size_t count_dither(const std::vector<TrackerState> &states);

    std::size_t circular_distance(std::size_t a, std::size_t b, std::size_t n);
}
