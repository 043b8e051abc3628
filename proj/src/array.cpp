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

#include "monotrack/array.hpp"
#include "monotrack/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace monotrack
{
    void UlaConfig::validate() const
    {
        if (n_elements < 2)
            throw ConfigError("UlaConfig: n_elements must be >= 2, got " + std::to_string(n_elements));
        if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
            throw ConfigError("UlaConfig: spacing_wavelengths must be positive");
        if (spacing_wavelengths > 0.5 && !allow_grating_lobes)
            throw ConfigError("UlaConfig: spacing_wavelengths > 0.5 admits grating lobes (set allow_grating_lobes)");
    }

    USpaceAngle::USpaceAngle(double u) : u_(u)
    {
        if (!(std::abs(u) <= 1.0))
            throw std::domain_error("u-space angle outside [-1, 1]: " + std::to_string(u));
    }

    USpaceAngle u_from_theta(double theta)
    {
        if (!(std::abs(theta) <= std::numbers::pi / 2.0))
            throw std::domain_error("theta outside the ULA visible region [-pi/2, pi/2]");
        return USpaceAngle(std::sin(theta));
    }

    double theta_from_u(USpaceAngle u)
    {
        return std::asin(u.value());
    }

    SteeringVector phase_progression(const UlaConfig &cfg, double u)
    {
        SteeringVector sv;
        sv.weights.resize(cfg.n_elements);
        const double k = -2.0 * std::numbers::pi * cfg.spacing_wavelengths * u;
        sv.weights[0] = cdouble(1.0, 0.0);
        for (std::size_t n = 1; n < cfg.n_elements; ++n)
            sv.weights[n] = std::polar(1.0, k * static_cast<double>(n));
        return sv;
    }

    SteeringVector steering_vector(const UlaConfig &cfg, USpaceAngle u)
    {
        return phase_progression(cfg, u.value());
    }

    cdouble array_factor(const UlaConfig &cfg, std::span<const cdouble> weights, double u)
    {
        if (weights.size() != cfg.n_elements)
            throw ContractViolation("array_factor: weight count " + std::to_string(weights.size()) +
                                    " != n_elements " + std::to_string(cfg.n_elements));
        const double k = -2.0 * std::numbers::pi * cfg.spacing_wavelengths * u;
        cdouble acc(0.0, 0.0);
        for (std::size_t n = 0; n < weights.size(); ++n)
            acc += std::conj(weights[n]) * std::polar(1.0, k * static_cast<double>(n));
        return acc;
    }
}
