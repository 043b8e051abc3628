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

#include "monotrack/errors.hpp"
#include "monotrack/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

namespace monotrack
{
    using nlohmann::ordered_json;

    std::string format_csv_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    namespace
    {
        // JSON has no infinities; zero power reports as null.
        ordered_json json_number(double v)
        {
            if (!std::isfinite(v))
                return nullptr;
            return v;
        }

        ordered_json summary_header(const char *command)
        {
            ordered_json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = command;
            return j;
        }

        struct Session
        {
            Codebook cb_tx;
            MonopulseComparator rx;
            TrackerConfig tracker;
        };

        Session make_session(const SimConfig &cfg, std::optional<unsigned> bits, bool noisy)
        {
            Codebook cb_tx = build_codebook(cfg.tx, bits);
            MonopulseComparator rx(build_codebook(cfg.rx, bits), cfg.tracker.squint_u);
            TrackerConfig tc = resolve_tracker(cfg.tracker, rx, noisy);
            return {std::move(cb_tx), std::move(rx), tc};
        }

        std::vector<double> pattern_grid(std::size_t points)
        {
            // [-1, 1) so that every DFT grid MRA lands on a sample when points is a multiple of N
            std::vector<double> u(points);
            for (std::size_t i = 0; i < points; ++i)
                u[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points);
            return u;
        }
    }

    Codebook build_codebook(const UlaConfig &cfg, std::optional<unsigned> bits)
    {
        auto cb = generate_codebook(cfg);
        if (bits)
            return quantize_codebook(cb, *bits);
        return cb;
    }

    TrackerConfig resolve_tracker(const TrackerSettings &s, const MonopulseComparator &rx, bool noisy)
    {
        TrackerConfig tc = default_tracker_config(rx, noisy);
        if (s.epsilon)
            tc.epsilon = *s.epsilon;
        if (s.max_iterations)
            tc.max_iterations = *s.max_iterations;
        if (s.averaging_count)
            tc.averaging_count = *s.averaging_count;
        tc.boresight_gate = s.boresight_gate;
        tc.dark_factor = s.dark_factor;
        tc.circular = s.circular;
        tc.validate();
        return tc;
    }

    // ---- codebook -----------------------------------------------------------

    std::string cmd_codebook(const SimConfig &cfg)
    {
        const Codebook cb = build_codebook(cfg.rx, cfg.quantization_bits);
        ordered_json j = summary_header("codebook");
        j["n_elements"] = cb.config().n_elements;
        j["spacing_wavelengths"] = cb.config().spacing_wavelengths;
        j["quantization_bits"] = cb.quantization_bits() ? ordered_json(*cb.quantization_bits()) : ordered_json(nullptr);
        j["mra_u"] = cb.mra_grid();
        ordered_json beams = ordered_json::array();
        for (std::size_t k = 0; k < cb.size(); ++k)
        {
            ordered_json w = ordered_json::array();
            for (const auto &x : cb.beam(k).weights)
                w.push_back({{"re", x.real()}, {"im", x.imag()}});
            beams.push_back(std::move(w));
        }
        j["beams"] = std::move(beams);
        return j.dump(2) + "\n";
    }

    // ---- pattern ------------------------------------------------------------

    std::string cmd_pattern(const SimConfig &cfg, OutputFormat fmt)
    {
        const Codebook cb = build_codebook(cfg.rx, cfg.quantization_bits);
        std::vector<std::size_t> beams = cfg.pattern.beams;
        if (beams.empty())
            for (std::size_t k = 0; k < cb.size(); ++k)
                beams.push_back(k);
        for (auto b : beams)
            if (b >= cb.size())
                throw ConfigError("pattern: unknown beam index " + std::to_string(b));
        if (cfg.pattern.points < 2)
            throw ConfigError("pattern: at least 2 grid points are required");

        const auto grid = pattern_grid(cfg.pattern.points);
        const double peak = static_cast<double>(cb.size() * cb.size());
        std::vector<std::vector<double>> db;
        for (auto b : beams)
        {
            auto p = beam_pattern(cb, b, grid);
            for (auto &v : p)
                v = v > 0.0 ? 10.0 * std::log10(v / peak) : -std::numeric_limits<double>::infinity();
            db.push_back(std::move(p));
        }

        if (fmt == OutputFormat::json)
        {
            ordered_json j = summary_header("pattern");
            j["u"] = grid;
            ordered_json cols = ordered_json::object();
            for (std::size_t c = 0; c < beams.size(); ++c)
            {
                ordered_json col = ordered_json::array();
                for (double v : db[c])
                    col.push_back(json_number(v));
                cols["beam_" + std::to_string(beams[c])] = std::move(col);
            }
            j["power_db"] = std::move(cols);
            return j.dump(2) + "\n";
        }

        std::ostringstream out;
        out << "u";
        for (auto b : beams)
            out << ",beam_" << b;
        out << "\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            out << format_csv_number(grid[i]);
            for (const auto &col : db)
                out << "," << format_csv_number(col[i]);
            out << "\n";
        }
        return out.str();
    }

    // ---- track --------------------------------------------------------------

    TrackRun run_track(const SimConfig &cfg)
    {
        cfg.validate();
        const ChannelState base = cfg.channel();
        const bool noisy = base.noise_variance() > 0.0;
        const Session s = make_session(cfg, cfg.quantization_bits, noisy);
        const Codebook &cb_rx = s.rx.codebook();
        Rng rng(cfg.seed);

        // one entry per convergence episode: (t, true u, channel)
        struct Round
        {
            double t;
            double true_u;
            ChannelState ch;
        };
        std::vector<Round> rounds;
        if (cfg.mobility)
        {
            const auto &m = *cfg.mobility;
            const auto traj = generate_trajectory(m.room, m.kind, m.duration);
            const double r0 = (m.room.user_start - m.room.ap_position).norm();
            for (const auto &smp : traj)
            {
                ChannelState ch = base.with_aoa(smp.aoa_u);
                if (m.gain_model == GainModel::inverse_square)
                    ch = ch.with_gain_scale(r0 / (smp.position - m.room.ap_position).norm());
                rounds.push_back({smp.t, smp.aoa_u, std::move(ch)});
            }
        }
        else
        {
            for (std::size_t r = 0; r < cfg.tracker.rounds; ++r)
                rounds.push_back({cfg.tracker.round_interval * static_cast<double>(r), base.paths().front().aoa_u, base});
        }

        TrackRun run;
        auto &sum = run.summary;
        sum.epsilon = s.tracker.epsilon;

        SearchResult seed = exhaustive_search(rounds.front().ch, s.cb_tx, cb_rx, rng, s.tracker.averaging_count);
        if (cfg.tracker.initial_rx_beam)
            seed.rx_beam = *cfg.tracker.initial_rx_beam;
        sum.seed_tx_beam = seed.tx_beam;
        sum.seed_rx_beam = seed.rx_beam;

        std::size_t step = 0;
        std::optional<std::size_t> prev_beam;
        for (std::size_t r = 0; r < rounds.size(); ++r)
        {
            const auto &round = rounds[r];
            const TrackTrace trace = track_until_converged(round.ch, s.cb_tx, s.rx, seed, s.tracker, rng);

            std::size_t measured_on = seed.rx_beam;
            for (const auto &st : trace.states)
            {
                TrackRecord rec;
                rec.step = step++;
                rec.t = round.t;
                rec.true_aoa_u = round.true_u;
                rec.rx_beam = measured_on;
                rec.mra_u = cb_rx.mra_u(measured_on);
                rec.error = st.last_error->value;
                rec.rssi_db = RssiSample{st.last_error->p_boresight}.db();
                rec.converged = st.converged;
                rec.track_lost = st.track_lost;
                run.records.push_back(rec);

                if (prev_beam && *prev_beam != measured_on)
                    ++sum.beam_switches;
                prev_beam = measured_on;
                measured_on = st.rx_beam;
            }
            if (prev_beam && *prev_beam != measured_on)
                ++sum.beam_switches;
            prev_beam = measured_on;

            ++sum.rounds;
            sum.total_iterations += trace.states.size();
            if (r == 0)
                sum.first_round_iterations = trace.states.size();
            if (trace.converged)
                ++sum.converged_rounds;
            if (count_dither(trace.states) > 0)
                ++sum.dither_episodes;

            const auto &fin = trace.final_state();
            sum.final_error = fin.last_error->value;
            if (trace.track_lost)
            {
                ++sum.track_losses;
                // lost track: fall back to a fresh search on the current channel
                seed = exhaustive_search(round.ch, s.cb_tx, cb_rx, rng, s.tracker.averaging_count);
            }
            else
                seed.rx_beam = fin.rx_beam;
            sum.round_beams.push_back(fin.rx_beam);
            sum.final_rx_beam = seed.rx_beam;
        }
        return run;
    }

    std::string track_csv(const TrackRun &run)
    {
        std::ostringstream out;
        out << kTrackCsvHeader << "\n";
        for (const auto &r : run.records)
            out << r.step << ',' << format_csv_number(r.t) << ',' << format_csv_number(r.true_aoa_u) << ','
                << r.rx_beam << ',' << format_csv_number(r.mra_u) << ',' << format_csv_number(r.error) << ','
                << format_csv_number(r.rssi_db) << ',' << (r.converged ? 1 : 0) << ',' << (r.track_lost ? 1 : 0)
                << "\n";
        return out.str();
    }

    ordered_json track_summary_json(const TrackRun &run)
    {
        const auto &s = run.summary;
        ordered_json j = summary_header("track");
        j["epsilon"] = s.epsilon;
        j["seed_tx_beam"] = s.seed_tx_beam;
        j["seed_rx_beam"] = s.seed_rx_beam;
        j["rounds"] = s.rounds;
        j["iterations_to_converge"] = s.first_round_iterations;
        j["total_iterations"] = s.total_iterations;
        j["converged_rounds"] = s.converged_rounds;
        j["dither_episodes"] = s.dither_episodes;
        j["track_losses"] = s.track_losses;
        j["beam_switches"] = s.beam_switches;
        j["final_rx_beam"] = s.final_rx_beam;
        j["final_error"] = s.final_error;
        return j;
    }

    std::string cmd_track(const SimConfig &cfg, OutputFormat fmt)
    {
        const TrackRun run = run_track(cfg);
        if (fmt == OutputFormat::csv)
            return track_csv(run);

        ordered_json j = track_summary_json(run);
        ordered_json rows = ordered_json::array();
        for (const auto &r : run.records)
            rows.push_back({{"step", r.step},
                            {"t_s", r.t},
                            {"true_u", r.true_aoa_u},
                            {"rx_beam", r.rx_beam},
                            {"mra_u", r.mra_u},
                            {"error", r.error},
                            {"rssi_db", json_number(r.rssi_db)},
                            {"converged", r.converged},
                            {"track_lost", r.track_lost}});
        j["records"] = std::move(rows);
        return j.dump(2) + "\n";
    }

    // ---- montecarlo ---------------------------------------------------------

    double noise_for_lobe_snr(const SimConfig &cfg, const MonopulseComparator &rx, double snr_db)
    {
        const std::size_t k = rx.codebook().size() / 2;
        const double lobe_gain = std::norm(
            array_factor(rx.codebook().config(), rx.right_lobe(k).weights, rx.codebook().mra_u(k)));
        const double nt = static_cast<double>(cfg.tx.n_elements);
        const double nr = static_cast<double>(cfg.rx.n_elements);
        const double signal = cfg.tx_power * std::norm(cfg.paths.front().gain) * nt * nt * lobe_gain;
        return signal / (nr * std::pow(10.0, snr_db / 10.0));
    }

    std::vector<TrialResult> run_trials(const SimConfig &cfg, std::optional<unsigned> bits,
                                        std::optional<double> snr_db, std::size_t threads)
    {
        cfg.validate();
        const Codebook cb_rx_probe = build_codebook(cfg.rx, bits);
        const MonopulseComparator probe(cb_rx_probe, cfg.tracker.squint_u);
        const double noise = snr_db ? noise_for_lobe_snr(cfg, probe, *snr_db) : cfg.noise_variance;
        const Session s = make_session(cfg, bits, noise > 0.0);
        const ChannelState base = cfg.channel().with_noise_variance(noise);

        std::vector<TrialResult> results(cfg.trials);
        auto run_one = [&](std::size_t i) {
            Rng rng = Rng::for_trial(cfg.seed, i);
            const std::size_t target = rng.below(s.rx.codebook().size());
            const std::size_t tx = rng.below(s.cb_tx.size());

            auto paths = base.paths();
            paths.front().aoa_u = s.rx.codebook().mra_u(target);
            paths.front().aod_u = s.cb_tx.mra_u(tx);
            const ChannelState ch(base.tx_config(), base.rx_config(), std::move(paths), base.noise_variance(),
                                  base.tx_power());

            SearchResult seed;
            if (cfg.montecarlo.random_seed_beam)
                seed = SearchResult{tx, rng.below(s.rx.codebook().size()), {}};
            else
                seed = exhaustive_search(ch, s.cb_tx, s.rx.codebook(), rng, s.tracker.averaging_count);

            const TrackTrace trace = track_until_converged(ch, s.cb_tx, s.rx, seed, s.tracker, rng);
            const auto &fin = trace.final_state();
            TrialResult r;
            r.target_beam = target;
            r.final_beam = fin.rx_beam;
            r.iterations = trace.states.size();
            r.converged = trace.converged;
            r.on_target = trace.converged && fin.rx_beam == target;
            r.track_lost = trace.track_lost;
            r.final_error = fin.last_error->value;
            results[i] = r;
        };

        threads = std::max<std::size_t>(1, std::min(threads, cfg.trials));
        if (threads == 1)
        {
            for (std::size_t i = 0; i < cfg.trials; ++i)
                run_one(i);
            return results;
        }
        // strided split; each trial owns its slot and its rng, so the schedule cannot change results
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < cfg.trials; i += threads)
                    run_one(i);
            });
        pool.clear();
        return results;
    }

    std::string cmd_montecarlo(const SimConfig &cfg)
    {
        cfg.validate();
        std::vector<std::optional<unsigned>> bit_list = cfg.montecarlo.bits;
        if (bit_list.empty())
            bit_list.push_back(cfg.quantization_bits);

        ordered_json j = summary_header("montecarlo");
        j["seed"] = cfg.seed;
        j["trials"] = cfg.trials;
        j["seed_beam"] = cfg.montecarlo.random_seed_beam ? "random" : "search";
        ordered_json cells = ordered_json::array();
        for (const auto &bits : bit_list)
            for (const auto &snr : cfg.montecarlo.snr_db)
            {
                const auto res = run_trials(cfg, bits, snr, cfg.montecarlo.threads);
                const Codebook cb = build_codebook(cfg.rx, bits);
                const MonopulseComparator rx(cb, cfg.tracker.squint_u);

                std::size_t on_target = 0, converged = 0, lost = 0, iters = 0;
                double err_sum = 0.0, err_max = 0.0;
                for (const auto &r : res)
                {
                    on_target += r.on_target;
                    converged += r.converged;
                    lost += r.track_lost;
                    iters += r.iterations;
                    err_sum += std::abs(r.final_error);
                    err_max = std::max(err_max, std::abs(r.final_error));
                }
                const double n = static_cast<double>(res.size());

                ordered_json c;
                c["quantization_bits"] = bits ? ordered_json(*bits) : ordered_json(nullptr);
                c["snr_db"] = snr ? ordered_json(*snr) : ordered_json(nullptr);
                c["noise_variance"] = snr ? noise_for_lobe_snr(cfg, rx, *snr) : cfg.noise_variance;
                c["epsilon"] = resolve_tracker(cfg.tracker, rx, c["noise_variance"].get<double>() > 0.0).epsilon;
                c["convergence_rate"] = static_cast<double>(on_target) / n;
                c["converged_fraction"] = static_cast<double>(converged) / n;
                c["track_loss_rate"] = static_cast<double>(lost) / n;
                c["mean_iterations"] = static_cast<double>(iters) / n;
                c["mean_abs_final_error"] = err_sum / n;
                c["max_abs_final_error"] = err_max;
                c["inter_beam_leakage"] = max_leakage(cb);
                cells.push_back(std::move(c));
            }
        j["cells"] = std::move(cells);
        return j.dump(2) + "\n";
    }
}
