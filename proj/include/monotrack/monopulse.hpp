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

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace monotrack
{
    /// Amplitude-comparison monopulse output for one beam position.
    ///
    /// `value` is the normalised power difference (P_R - P_L) / (P_R + P_L),
    /// so it is bounded in [-1, 1] and invariant to the path gain. A positive
    /// value means the source lies to the right (larger u) of the boresight.
    /// `p_boresight` is the sum-channel power through the current beam itself;
    /// it tells a true null-centred track apart from a symmetric reading taken
    /// while the source sits in a null of the current beam.
    struct MonopulseError
    {
        double value = 0.0;
        double p_left = 0.0;
        double p_right = 0.0;
        double p_boresight = 0.0;
    };

    /// Builds a MonopulseError from the three powers (0 when both lobes are dark).
    MonopulseError make_monopulse_error(double p_left, double p_right, double p_boresight);

    /// RSSI measurement through a given receive weight vector.
    using RssiProbe = std::function<RssiSample(const SteeringVector &)>;

    /// Default lobe squint: a quarter of the codebook grid spacing, 1/(2N) in u.
    double default_squint(const Codebook &cb);

    /// Left/right lobes squinted by +-squint_u about every codebook beam. Lobes
    /// use the same phase quantisation as the codebook they are derived from.
    class MonopulseComparator
    {
    public:
        explicit MonopulseComparator(const Codebook &cb, std::optional<double> squint_u = std::nullopt);

        const Codebook &codebook() const noexcept { return cb_; }
        double squint() const noexcept { return squint_; }
        const SteeringVector &left_lobe(std::size_t k) const { return left_.at(k); }
        const SteeringVector &right_lobe(std::size_t k) const { return right_.at(k); }

        MonopulseError error(std::size_t k, const RssiProbe &measure) const;

        /// Noiseless error for a unit source at u (pattern ratio only).
        MonopulseError discriminator(std::size_t k, double u) const;

        /// Noiseless |error| for a source half a grid spacing off the broadside
        /// beam, i.e. where the nearest beam changes.
        double midpoint_threshold() const;

    private:
        Codebook cb_;
        double squint_;
        std::vector<SteeringVector> left_;
        std::vector<SteeringVector> right_;
    };

    MonopulseError monopulse_error(const Codebook &cb_rx, std::size_t k, const RssiProbe &measure,
                                   std::optional<double> squint_u = std::nullopt);
}
