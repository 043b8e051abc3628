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
#include "monotrack/mobility.hpp"
#include "monotrack/tracker.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace monotrack
{
    inline constexpr int kSchemaVersion = 1;

    enum class GainModel
    {
        constant,
        inverse_square, // power falls as 1/r^2 relative to the starting range
    };

    struct MobilityConfig
    {
        RoomScenario room;
        TrajectoryKind kind = trajectory::Linear{};
        double duration = 10.0;
        GainModel gain_model = GainModel::constant;
    };

    /// Tracker options as written in the config; unset fields take the
    /// codebook-derived defaults of default_tracker_config().
    struct TrackerSettings
    {
        std::optional<double> epsilon;
        std::optional<std::size_t> max_iterations;
        std::optional<std::size_t> averaging_count;
        std::optional<double> squint_u;
        double boresight_gate = 0.25;
        double dark_factor = 4.0;
        bool circular = true;
        std::optional<std::size_t> initial_rx_beam; // overrides the search seed on the Rx side
        std::size_t rounds = 1;                     // static runs: convergence episodes
        double round_interval = 0.01;               // static runs: time between rounds, s
    };

    struct MonteCarloSettings
    {
        std::vector<std::optional<double>> snr_db{std::nullopt}; // per-lobe SNR; null = channel noise_variance
        std::vector<std::optional<unsigned>> bits;               // empty = top-level quantization_bits only
        bool random_seed_beam = false;                           // else seed from exhaustive search
        std::size_t threads = 1;
    };

    struct PatternSettings
    {
        std::vector<std::size_t> beams; // empty = all
        std::size_t points = 1024;
    };

    struct SimConfig
    {
        UlaConfig tx;
        UlaConfig rx;
        std::vector<PathComponent> paths{PathComponent{}};
        double noise_variance = 0.0;
        double tx_power = 1.0;
        std::optional<MobilityConfig> mobility;
        TrackerSettings tracker;
        std::optional<unsigned> quantization_bits;
        std::uint64_t seed = 1;
        std::size_t trials = 100;
        MonteCarloSettings montecarlo;
        PatternSettings pattern;

        ChannelState channel() const;
        void validate() const;
    };

    /// Strict parse: unknown keys and wrong types raise ConfigError.
    SimConfig parse_config(const nlohmann::json &doc);
    SimConfig load_config(const std::filesystem::path &path);

    /// Codebook implied by a side's array and the optional quantisation.
    Codebook build_codebook(const UlaConfig &cfg, std::optional<unsigned> bits);

    TrackerConfig resolve_tracker(const TrackerSettings &s, const MonopulseComparator &rx, bool noisy);

    enum class OutputFormat
    {
        csv,
        json,
    };

    struct TrackRecord
    {
        std::size_t step = 0;
        double t = 0.0;
        double true_aoa_u = 0.0;
        std::size_t rx_beam = 0; // beam the measurement was taken on
        double mra_u = 0.0;
        double error = 0.0;
        double rssi_db = 0.0; // boresight RSSI
        bool converged = false;
        bool track_lost = false;
    };

    struct TrackSummary
    {
        std::size_t rounds = 0;
        std::size_t total_iterations = 0;
        std::size_t first_round_iterations = 0;
        std::size_t converged_rounds = 0;
        std::size_t dither_episodes = 0;
        std::size_t track_losses = 0;
        std::size_t beam_switches = 0;
        std::size_t seed_tx_beam = 0;
        std::size_t seed_rx_beam = 0;
        std::size_t final_rx_beam = 0;
        double final_error = 0.0;
        double epsilon = 0.0;
        std::vector<std::size_t> round_beams; // beam held at the end of each round
    };

    struct TrackRun
    {
        std::vector<TrackRecord> records;
        TrackSummary summary;
    };

    TrackRun run_track(const SimConfig &cfg);

    inline constexpr const char *kTrackCsvHeader = "step,t_s,true_u,rx_beam,mra_u,error,rssi_db,converged,track_lost";

    std::string cmd_codebook(const SimConfig &cfg);
    std::string cmd_pattern(const SimConfig &cfg, OutputFormat fmt);
    std::string track_csv(const TrackRun &run);
    nlohmann::ordered_json track_summary_json(const TrackRun &run);
    std::string cmd_track(const SimConfig &cfg, OutputFormat fmt);
    std::string cmd_montecarlo(const SimConfig &cfg);

    /// Per-trial outcome of the Monte Carlo harness.
    struct TrialResult
    {
        std::size_t target_beam = 0;
        std::size_t final_beam = 0;
        std::size_t iterations = 0;
        bool converged = false;
        bool on_target = false;
        bool track_lost = false;
        double final_error = 0.0;
    };

    /// Noise variance giving the requested per-lobe SNR for the configured path.
    double noise_for_lobe_snr(const SimConfig &cfg, const MonopulseComparator &rx, double snr_db);

    std::vector<TrialResult> run_trials(const SimConfig &cfg, std::optional<unsigned> bits,
                                        std::optional<double> snr_db, std::size_t threads);

    /// %.9g, with "inf"/"-inf"/"nan" spelled out.
    std::string format_csv_number(double v);
}
