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

// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "monotrack/codebook.hpp"
#include "monotrack/sim.hpp"
#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace monotrack;
using nlohmann::json;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::string detail;

        void require(bool cond, const std::string &what)
        {
            if (!cond && pass)
            {
                pass = false;
                detail = what;
            }
        }
    };

    const UlaConfig kUla8{8, 0.5};

    // 1. 8-point codebook matches the reference weights (0.707 read as sqrt(2)/2).
    Outcome table_one()
    {
        Outcome o;
        const double h = std::sqrt(2.0) / 2.0;
        using c = cdouble;
        // rows: element index; columns: u = -1, -0.75, ..., 0.75
        const c table[8][8] = {
            {c(1, 0), c(1, 0), c(1, 0), c(1, 0), c(1, 0), c(1, 0), c(1, 0), c(1, 0)},
            {c(-1, 0), c(-h, h), c(0, 1), c(h, h), c(1, 0), c(h, -h), c(0, -1), c(-h, -h)},
            {c(1, 0), c(0, -1), c(-1, 0), c(0, 1), c(1, 0), c(0, -1), c(-1, 0), c(0, 1)},
            {c(-1, 0), c(h, h), c(0, -1), c(-h, h), c(1, 0), c(-h, -h), c(0, 1), c(h, -h)},
            {c(1, 0), c(-1, 0), c(1, 0), c(-1, 0), c(1, 0), c(-1, 0), c(1, 0), c(-1, 0)},
            {c(-1, 0), c(h, -h), c(0, 1), c(-h, -h), c(1, 0), c(-h, h), c(0, -1), c(h, h)},
            {c(1, 0), c(0, 1), c(-1, 0), c(0, -1), c(1, 0), c(0, 1), c(-1, 0), c(0, -1)},
            {c(-1, 0), c(-h, -h), c(0, -1), c(h, -h), c(1, 0), c(h, h), c(0, 1), c(-h, h)},
        };
        const auto cb = generate_codebook(kUla8);
        double worst = 0.0;
        for (std::size_t k = 0; k < 8; ++k)
            for (std::size_t n = 0; n < 8; ++n)
                worst = std::max(worst, std::abs(cb.beam(k)[n] - table[n][k]));
        o.require(worst <= 1e-12, "max entry error " + std::to_string(worst));
        if (o.pass)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "max |entry error| = %.2g", worst);
            o.detail = buf;
        }
        return o;
    }

    // 2. Every beam is dark at every other beam's MRA; Gram = 8 I.
    Outcome null_structure()
    {
        Outcome o;
        const auto cb = generate_codebook(kUla8);
        double worst_rel = 0.0;
        for (std::size_t k = 0; k < 8; ++k)
        {
            const auto p = beam_pattern(cb, k, cb.mra_grid());
            for (std::size_t j = 0; j < 8; ++j)
                if (j != k)
                    worst_rel = std::max(worst_rel, p[j] / 64.0);
        }
        o.require(worst_rel < 1e-20, "null power / peak = " + std::to_string(worst_rel));
        const auto g = orthogonality_gram(cb);
        double gram_err = 0.0;
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                gram_err = std::max(gram_err, std::abs(g(i, j) - (i == j ? 8.0 : 0.0)));
        o.require(gram_err <= 1e-10, "Gram deviation " + std::to_string(gram_err));
        if (o.pass)
        {
            char buf[128];
            std::snprintf(buf, sizeof buf, "worst null/peak = %.3g, Gram deviation = %.3g", worst_rel, gram_err);
            o.detail = buf;
        }
        return o;
    }

    // 3. HPBW constant in u across visible beams; grows in theta toward u = 0.75.
    Outcome beamwidth()
    {
        Outcome o;
        const auto cb = generate_codebook(kUla8);
        double lo = 1e9, hi = -1e9;
        for (std::size_t k = 0; k < 8; ++k)
        {
            const auto m = measure_hpbw(cb, k);
            if (!m.width_theta)
                continue;
            lo = std::min(lo, m.width_u);
            hi = std::max(hi, m.width_u);
        }
        o.require(hi - lo <= 1e-6, "u-space HPBW spread " + std::to_string(hi - lo));
        double prev = 0.0;
        for (std::size_t k = 4; k < 8; ++k)
        {
            const double w = *measure_hpbw(cb, k).width_theta;
            o.require(w > prev, "theta HPBW not increasing at beam " + std::to_string(k));
            prev = w;
        }
        if (o.pass)
        {
            char buf[160];
            std::snprintf(buf, sizeof buf, "HPBW_u = %.7f (spread %.2g); HPBW_theta %.2f deg -> %.2f deg", lo, hi - lo,
                          *measure_hpbw(cb, 4).width_theta * 180.0 / M_PI, prev * 180.0 / M_PI);
            o.detail = buf;
        }
        return o;
    }

    // 4. Zero at MRA, sign at +-0.05, monotone |error| over [0, 1/N] at 32 points.
    Outcome monopulse_sign()
    {
        Outcome o;
        const auto cb = generate_codebook(kUla8);
        const MonopulseComparator mc(cb);
        for (std::size_t k = 0; k < 8; ++k)
        {
            const ChannelState ch(kUla8, kUla8, {PathComponent{cb.mra_u(k), 0.0, 1.0}}, 0.0, 1.0);
            Rng rng(0);
            const RssiProbe probe = [&](const SteeringVector &w) { return measure_rssi(ch, cb.beam(4), w, rng); };
            o.require(std::abs(mc.error(k, probe).value) < 1e-12, "nonzero error at MRA of beam " + std::to_string(k));
        }
        for (std::size_t k = 1; k + 1 < 8; ++k)
        {
            o.require(mc.discriminator(k, cb.mra_u(k) + 0.05).value > 0.0, "error not positive at +0.05");
            o.require(mc.discriminator(k, cb.mra_u(k) - 0.05).value < 0.0, "error not negative at -0.05");
            double prev = 0.0;
            for (int i = 0; i < 32; ++i)
            {
                const double d = 0.125 * i / 31.0;
                const double v = std::abs(mc.discriminator(k, cb.mra_u(k) + d).value);
                o.require(v >= prev, "|error| decreases at delta " + std::to_string(d));
                prev = v;
            }
        }
        if (o.pass)
            o.detail = "error at half grid step = " + std::to_string(mc.midpoint_threshold());
        return o;
    }

    // 5. All 64 seed/target pairs converge in circular distance + 1 iterations.
    Outcome convergence()
    {
        Outcome o;
        const auto cb = generate_codebook(kUla8);
        const MonopulseComparator mc(cb);
        const auto cfg = default_tracker_config(mc, false);
        std::size_t max_iters = 0;
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
            {
                const ChannelState ch(kUla8, kUla8, {PathComponent{cb.mra_u(j), 0.0, 1.0}}, 0.0, 1.0);
                Rng rng(0);
                SearchResult seed{4, i, {}};
                const auto tr = track_until_converged(ch, cb, mc, seed, cfg, rng);
                const std::string pair = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
                o.require(tr.converged && tr.final_state().rx_beam == j, "pair " + pair + " did not reach target");
                o.require(tr.states.size() == circular_distance(i, j, 8) + 1, "pair " + pair + " iteration count");
                o.require(std::abs(tr.final_state().last_error->value) < 1e-12, "pair " + pair + " final error");
                max_iters = std::max(max_iters, tr.states.size());

                seed.rx_beam = tr.final_state().rx_beam;
                for (int r = 0; r < 5; ++r)
                {
                    const auto again = track_until_converged(ch, cb, mc, seed, cfg, rng);
                    o.require(again.states.size() == 1 && again.final_state().rx_beam == j,
                              "pair " + pair + " moved after lock");
                }
            }
        if (o.pass)
            o.detail = "64/64 pairs, max iterations " + std::to_string(max_iters);
        return o;
    }

    // 6. 4 km/h tangential pass at 3 m, 10 ms updates, 10 s.
    Outcome mobility()
    {
        Outcome o;
        const double v = kMaxUserSpeed;
        const auto cfg = parse_config(json{{"mobility",
                                            {{"user_start", {-5.0 * v, 3.0}},
                                             {"heading", {1.0, 0.0}},
                                             {"speed_mps", v},
                                             {"update_interval_s", 0.01},
                                             {"duration_s", 10.0}}}});
        const auto run = run_track(cfg);
        const auto traj = generate_trajectory(cfg.mobility->room, cfg.mobility->kind, 10.0);
        o.require(run.summary.track_losses == 0, "track losses " + std::to_string(run.summary.track_losses));
        o.require(run.summary.round_beams.size() == traj.size(), "round count mismatch");
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < traj.size() && i < run.summary.round_beams.size(); ++i)
            mismatches += run.summary.round_beams[i] != oracle::argmax_beam(8, 0.5, traj[i].aoa_u);
        o.require(mismatches == 0, std::to_string(mismatches) + " samples differ from the argmax oracle");
        if (o.pass)
            o.detail = std::to_string(traj.size()) + " samples, " + std::to_string(run.summary.beam_switches) +
                       " beam switches, 0 losses";
        return o;
    }

    // 7. B = 3 exact for N = 8; B = 2 leaks.
    Outcome quantization()
    {
        Outcome o;
        const auto cb = generate_codebook(kUla8);
        const auto q3 = quantize_codebook(cb, 3);
        double worst = 0.0;
        for (std::size_t k = 0; k < 8; ++k)
            for (std::size_t n = 0; n < 8; ++n)
                worst = std::max(worst, std::abs(q3.beam(k)[n] - cb.beam(k)[n]));
        o.require(worst <= 1e-12, "B=3 deviates by " + std::to_string(worst));
        const double leak = max_leakage(quantize_codebook(cb, 2));
        o.require(leak > 1e-6, "B=2 shows no leakage");
        if (o.pass)
        {
            char buf[128];
            std::snprintf(buf, sizeof buf, "B=3 deviation %.2g; B=2 max leakage %.4f (Gram/N)", worst, leak);
            o.detail = buf;
        }
        return o;
    }

    // 8. Noise mean sigma^2 N_rx within 2%; >= 99% of 1000 noisy trials on target.
    Outcome noise()
    {
        Outcome o;
        const auto cb = generate_codebook(kUla8);
        const double sigma2 = 0.5;
        const ChannelState dark(kUla8, kUla8, {PathComponent{0.0, 0.0, 0.0}}, sigma2, 1.0);
        Rng rng(7);
        double sum = 0.0;
        for (int i = 0; i < 100000; ++i)
            sum += measure_rssi(dark, cb.beam(4), cb.beam(4), rng).power;
        const double mean = sum / 100000.0;
        const double rel = std::abs(mean / (sigma2 * 8.0) - 1.0);
        o.require(rel <= 0.02, "noise mean off by " + std::to_string(rel));

        // seeded by exhaustive search, and from a uniformly random start beam
        std::size_t hits[2] = {0, 0};
        for (int mode = 0; mode < 2; ++mode)
        {
            auto cfg = parse_config(json{{"trials", 1000},
                                         {"seed", 2026},
                                         {"tracker", {{"averaging_count", 8}}},
                                         {"montecarlo", {{"seed_beam", mode == 0 ? "search" : "random"}}}});
            for (const auto &r : run_trials(cfg, std::nullopt, 10.0, 4))
                hits[mode] += r.on_target;
            o.require(hits[mode] >= 990, std::string(mode == 0 ? "search" : "random") + " seeding: " +
                                             std::to_string(hits[mode]) + "/1000 on target");
        }
        if (o.pass)
        {
            char buf[192];
            std::snprintf(buf, sizeof buf,
                          "noise mean rel. error %.4f; 10 dB/lobe M=8 on target: %zu/1000 searched, %zu/1000 random start",
                          rel, hits[0], hits[1]);
            o.detail = buf;
        }
        return o;
    }

    // 9. Byte-identical track output for identical config and seed.
    Outcome determinism()
    {
        Outcome o;
        const auto cfg = parse_config(json{{"seed", 99},
                                           {"channel", {{"noise_variance", 0.8}}},
                                           {"mobility",
                                            {{"user_start", {-2.0, 2.5}},
                                             {"speed_mps", 1.0},
                                             {"duration_s", 4.0},
                                             {"heading", {1.0, 0.1}}}}});
        const auto a = cmd_track(cfg, OutputFormat::csv);
        const auto b = cmd_track(cfg, OutputFormat::csv);
        const auto ja = cmd_track(cfg, OutputFormat::json);
        const auto jb = cmd_track(cfg, OutputFormat::json);
        o.require(a == b, "CSV differs between runs");
        o.require(ja == jb, "JSON differs between runs");
        if (o.pass)
            o.detail = std::to_string(a.size()) + " CSV bytes, " + std::to_string(ja.size()) + " JSON bytes identical";
        return o;
    }
}

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"1 codebook table reproduction", table_one},
        {"2 null structure and Gram matrix", null_structure},
        {"3 beamwidth in u and theta", beamwidth},
        {"4 monopulse sign and zero", monopulse_sign},
        {"5 convergence in few iterations", convergence},
        {"6 mobility tracking at 4 km/h", mobility},
        {"7 phase quantisation", quantization},
        {"8 noise model and noisy convergence", noise},
        {"9 determinism", determinism},
    };

    int failed = 0;
    for (const auto &[name, fn] : criteria)
    {
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const std::exception &e)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %-40s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
