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
#include <cstddef>
#include <span>
#include <vector>

namespace monotrack
{
    using cdouble = std::complex<double>;

    /// Uniform linear array geometry. Spacing is d/lambda.
    struct UlaConfig
    {
        std::size_t n_elements = 8;
        double spacing_wavelengths = 0.5;
        bool allow_grating_lobes = false; // permits d/lambda > 0.5

        /// Throws ConfigError when the geometry is unusable.
        void validate() const;

        bool operator==(const UlaConfig &) const = default;
    };

    /// Direction cosine u = sin(theta), theta from broadside. Always |u| <= 1.
    class USpaceAngle
    {
    public:
        explicit USpaceAngle(double u);
        double value() const noexcept { return u_; }

    private:
        double u_;
    };

    /// Unit-modulus weight vector, element 0 is the phase reference.
    struct SteeringVector
    {
        std::vector<cdouble> weights;

        std::size_t size() const noexcept { return weights.size(); }
        const cdouble &operator[](std::size_t i) const { return weights[i]; }
    };

    USpaceAngle u_from_theta(double theta);
    double theta_from_u(USpaceAngle u);

    /// weights[n] = exp(-j 2 pi (d/lambda) n u)
    SteeringVector steering_vector(const UlaConfig &cfg, USpaceAngle u);

    /// Same phase progression without the visible-region check. Used for
    /// squinted lobes that may extend past endfire.
    SteeringVector phase_progression(const UlaConfig &cfg, double u);

    /// sum_n conj(w[n]) exp(-j 2 pi (d/lambda) n u). Evaluates at any real u.
    cdouble array_factor(const UlaConfig &cfg, std::span<const cdouble> weights, double u);
    inline cdouble array_factor(const UlaConfig &cfg, const SteeringVector &w, USpaceAngle u)
    {
        return array_factor(cfg, w.weights, u.value());
    }
}
