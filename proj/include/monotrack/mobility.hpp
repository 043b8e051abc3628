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

#include <cstdint>
#include <variant>
#include <vector>

namespace monotrack
{
    /// 4 km/h in m/s.
    inline constexpr double kMaxUserSpeed = 4.0 / 3.6;

    struct Vec2
    {
        double x = 0.0;
        double y = 0.0;

        Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
        Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
        Vec2 operator*(double s) const { return {x * s, y * s}; }
        double dot(Vec2 o) const { return x * o.x + y * o.y; }
        double norm() const;
        bool operator==(const Vec2 &) const = default;
    };

    struct RoomScenario
    {
        Vec2 ap_position{0.0, 0.0};
        Vec2 ula_axis{1.0, 0.0}; // normalised on validation
        Vec2 user_start{0.0, 3.0};
        double speed = 0.0;            // m/s
        double update_interval = 0.01; // s
        bool allow_overspeed = false;

        void validate() const;
    };

    struct TrajectorySample
    {
        double t = 0.0;
        Vec2 position;
        double aoa_u = 0.0;
    };

    namespace trajectory
    {
        /// Constant-velocity motion along `heading`.
        struct Linear
        {
            Vec2 heading{1.0, 0.0};
        };

        /// Piecewise-linear path through the waypoints at constant speed,
        /// holding the last one once reached.
        struct Waypoints
        {
            std::vector<Vec2> points;
        };

        /// Fixed-length steps with a uniformly drawn heading each update.
        struct RandomWalk
        {
            std::uint64_t seed = 0;
        };
    }

    using TrajectoryKind = std::variant<trajectory::Linear, trajectory::Waypoints, trajectory::RandomWalk>;

    /// u of the user as seen from the AP array: projection of the unit AP->user
    /// direction on the array axis.
    USpaceAngle aoa_of_position(const RoomScenario &sc, Vec2 p);

    /// Samples at t = 0, dt, 2 dt, ... <= duration.
    std::vector<TrajectorySample> generate_trajectory(const RoomScenario &sc, const TrajectoryKind &kind,
                                                      double duration);
}
