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

#include <catch2/catch_amalgamated.hpp>

#include "monotrack/errors.hpp"
#include "monotrack/monopulse.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace monotrack;
using Catch::Matchers::WithinAbs;

namespace
{
    const UlaConfig kUla8{8, 0.5};

    // Noiseless probe for a single path seen through matched Tx beam 4 (u = 0).
    struct Scene
    {
        Codebook cb = generate_codebook(kUla8);
        ChannelState ch;
        Rng rng{0};

        explicit Scene(double aoa, cdouble g = 1.0) : ch(kUla8, kUla8, {PathComponent{aoa, 0.0, g}}, 0.0, 1.0) {}

        RssiProbe probe()
        {
            return [this](const SteeringVector &w) { return measure_rssi(ch, cb.beam(4), w, rng); };
        }
    };
}

TEST_CASE("make_monopulse_error - formula and degenerate case")
{
    const auto e = make_monopulse_error(1.0, 3.0, 5.0);
    CHECK_THAT(e.value, WithinAbs(0.5, 1e-15));
    CHECK(e.p_boresight == 5.0);
    CHECK(make_monopulse_error(0.0, 0.0, 0.0).value == 0.0);
    CHECK(make_monopulse_error(2.0, 0.0, 0.0).value == -1.0);
}

TEST_CASE("MonopulseComparator - lobe geometry")
{
    const auto cb = generate_codebook(kUla8);
    const MonopulseComparator mc(cb);
    CHECK(mc.squint() == 0.0625);
    for (std::size_t k = 0; k < 8; ++k)
    {
        // lobe peaks sit at mra -+ squint
        CHECK_THAT(std::abs(array_factor(kUla8, mc.left_lobe(k).weights, cb.mra_u(k) - 0.0625)),
                   WithinAbs(8.0, 1e-10));
        CHECK_THAT(std::abs(array_factor(kUla8, mc.right_lobe(k).weights, cb.mra_u(k) + 0.0625)),
                   WithinAbs(8.0, 1e-10));
    }
    CHECK_THROWS_AS(MonopulseComparator(cb, 0.0), ConfigError);
    CHECK_THROWS_AS(MonopulseComparator(cb, 0.25), ConfigError);
}

TEST_CASE("monopulse_error - zero at the MRA")
{
    for (std::size_t k = 0; k < 8; ++k)
    {
        Scene s(-1.0 + 0.25 * static_cast<double>(k));
        const auto e = monopulse_error(s.cb, k, s.probe());
        CHECK(std::abs(e.value) < 1e-12);
        CHECK(e.p_boresight > e.p_left);
    }
}

TEST_CASE("monopulse_error - sign follows the side of the source")
{
    Scene right(0.05);
    CHECK(monopulse_error(right.cb, 4, right.probe()).value > 0.0);
    Scene left(-0.05);
    CHECK(monopulse_error(left.cb, 4, left.probe()).value < 0.0);
}

TEST_CASE("monopulse_error - half-way to the left neighbour")
{
    // brute-force value from closed-form lobe patterns
    const double expect = oracle::squinted_error(8, 0.5, -0.125, 0.0625);
    REQUIRE_THAT(expect, WithinAbs(-0.7953105689549901, 1e-12));
    Scene s(-0.125);
    CHECK_THAT(monopulse_error(s.cb, 4, s.probe()).value, WithinAbs(expect, 1e-12));
}

TEST_CASE("monopulse_error - matches the closed-form discriminator")
{
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> dd(-0.25, 0.25);
    for (int i = 0; i < 200; ++i)
    {
        const double d = dd(gen);
        Scene s(d);
        CHECK_THAT(monopulse_error(s.cb, 4, s.probe()).value,
                   WithinAbs(oracle::squinted_error(8, 0.5, d, 0.0625), 1e-9));
    }
}

TEST_CASE("monopulse_error - sign and monotone magnitude within one grid half-step")
{
    const auto cb = generate_codebook(kUla8);
    const MonopulseComparator mc(cb);
    for (std::size_t k = 1; k + 1 < 8; ++k)
    {
        double prev = 0.0;
        for (int i = 1; i <= 32; ++i)
        {
            const double delta = 0.125 * i / 32.0;
            const double ep = mc.discriminator(k, cb.mra_u(k) + delta).value;
            const double en = mc.discriminator(k, cb.mra_u(k) - delta).value;
            if (i < 32)
            {
                CHECK(ep > 0.0);
                CHECK(en < 0.0);
            }
            CHECK(std::abs(ep) >= prev);
            CHECK_THAT(en, WithinAbs(-ep, 1e-12));
            prev = std::abs(ep);
        }
    }
}

TEST_CASE("monopulse_error - invariant to the path gain")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        const double aoa = 0.2 * ud(gen);
        const cdouble g(ud(gen), ud(gen));
        Scene a(aoa), b(aoa, g);
        if (std::abs(g) < 1e-3)
            continue;
        CHECK_THAT(monopulse_error(b.cb, 4, b.probe()).value, WithinAbs(monopulse_error(a.cb, 4, a.probe()).value, 1e-12));
    }
}

TEST_CASE("midpoint_threshold - value for N = 8")
{
    const MonopulseComparator mc(generate_codebook(kUla8));
    CHECK_THAT(mc.midpoint_threshold(), WithinAbs(oracle::squinted_error(8, 0.5, 0.125, 0.0625), 1e-12));
}

TEST_CASE("monopulse_error - beam index out of range")
{
    Scene s(0.0);
    CHECK_THROWS_AS(monopulse_error(s.cb, 8, s.probe()), std::out_of_range);
}
