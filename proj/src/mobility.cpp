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

#include "monotrack/mobility.hpp"
#include "monotrack/errors.hpp"
#include "monotrack/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace monotrack
{
    double Vec2::norm() const
    {
        return std::hypot(x, y);
    }

    namespace
    {
        Vec2 unit(Vec2 v, const char *what)
        {
            const double n = v.norm();
            if (!(n > 0.0) || !std::isfinite(n))
                throw ConfigError(std::string(what) + " must be a nonzero finite vector");
            return v * (1.0 / n);
        }

        std::size_t sample_count(double duration, double dt)
        {
            return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
        }
    }

    void RoomScenario::validate() const
    {
        unit(ula_axis, "ula_axis");
        if (!(speed >= 0.0) || !std::isfinite(speed))
            throw ConfigError("mobility: speed must be >= 0");
        if (speed > kMaxUserSpeed + 1e-12 && !allow_overspeed)
            throw ConfigError("mobility: speed exceeds 4 km/h (set allow_overspeed)");
        if (!(update_interval > 0.0) || !std::isfinite(update_interval))
            throw ConfigError("mobility: update_interval must be > 0");
    }

    USpaceAngle aoa_of_position(const RoomScenario &sc, Vec2 p)
    {
        const Vec2 d = p - sc.ap_position;
        const double r = d.norm();
        if (!(r > 0.0))
            throw std::domain_error("aoa_of_position: user coincides with the AP");
        const Vec2 axis = unit(sc.ula_axis, "ula_axis");
        // rounding can push the projection a hair past +-1
        return USpaceAngle(std::clamp(d.dot(axis) / r, -1.0, 1.0));
    }

    std::vector<TrajectorySample> generate_trajectory(const RoomScenario &sc, const TrajectoryKind &kind,
                                                      double duration)
    {
        sc.validate();
        if (!(duration > 0.0) || !std::isfinite(duration))
            throw ConfigError("trajectory: duration must be > 0");

        const double dt = sc.update_interval;
        const double step = sc.speed * dt;
        const std::size_t count = sample_count(duration, dt);

        std::vector<Vec2> positions;
        positions.reserve(count);
        positions.push_back(sc.user_start);

        if (const auto *lin = std::get_if<trajectory::Linear>(&kind))
        {
            const Vec2 h = unit(lin->heading, "heading");
            for (std::size_t i = 1; i < count; ++i)
                positions.push_back(sc.user_start + h * (sc.speed * dt * static_cast<double>(i)));
        }
        else if (const auto *wp = std::get_if<trajectory::Waypoints>(&kind))
        {
            if (wp->points.empty())
                throw ConfigError("trajectory: waypoint list is empty");
            Vec2 pos = sc.user_start;
            std::size_t target = 0;
            for (std::size_t i = 1; i < count; ++i)
            {
                double budget = step;
                while (budget > 0.0 && target < wp->points.size())
                {
                    const Vec2 to = wp->points[target] - pos;
                    const double dist = to.norm();
                    if (dist <= budget)
                    {
                        pos = wp->points[target];
                        budget -= dist;
                        ++target;
                    }
                    else
                    {
                        pos = pos + to * (budget / dist);
                        budget = 0.0;
                    }
                }
                positions.push_back(pos);
            }
        }
        else
        {
            Rng rng(std::get<trajectory::RandomWalk>(kind).seed);
            Vec2 pos = sc.user_start;
            for (std::size_t i = 1; i < count; ++i)
            {
                Vec2 next;
                do
                {
                    const double a = 2.0 * std::numbers::pi * rng.uniform();
                    next = pos + Vec2{std::cos(a), std::sin(a)} * step;
                } while ((next - sc.ap_position).norm() <= 0.0);
                pos = next;
                positions.push_back(pos);
            }
        }

        std::vector<TrajectorySample> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back({dt * static_cast<double>(i), positions[i], aoa_of_position(sc, positions[i]).value()});
        return out;
    }
}
