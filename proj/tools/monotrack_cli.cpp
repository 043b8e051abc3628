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

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace monotrack;

namespace
{
    constexpr int kExitConfig = 2;
    constexpr int kExitInternal = 3;

    void report(const char *kind, const std::string &message)
    {
        nlohmann::json line = {{"error", kind}, {"message", message}};
        std::cerr << line.dump() << std::endl;
    }

    void emit(const std::string &text, const std::string &path)
    {
        if (path.empty() || path == "-")
        {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot open output file " + path);
        out << text;
    }

    OutputFormat parse_format(const std::string &s)
    {
        if (s == "csv")
            return OutputFormat::csv;
        if (s == "json")
            return OutputFormat::json;
        throw ConfigError("--format must be csv or json");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Monopulse beam tracking simulator for DFT-codebook uniform linear arrays"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON simulation config");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "csv or json");
    };

    auto *codebook = app.add_subcommand("codebook", "dump the receive codebook as JSON");
    add_common(codebook);

    std::vector<std::size_t> beams;
    std::optional<std::size_t> points;
    auto *pattern = app.add_subcommand("pattern", "beam power patterns in dB relative to N^2");
    add_common(pattern);
    pattern->add_option("--beams", beams, "beam indices (default all)")->delimiter(',');
    pattern->add_option("--points", points, "u-grid resolution over [-1, 1)");

    std::string summary_path;
    auto *track = app.add_subcommand("track", "search, then monopulse tracking; CSV trace + JSON summary");
    add_common(track);
    track->add_option("--summary", summary_path, "write the JSON summary here (csv format only)");

    std::optional<std::size_t> threads;
    auto *montecarlo = app.add_subcommand("montecarlo", "seeded trials over SNR and quantisation bits");
    add_common(montecarlo);
    montecarlo->add_option("--threads", threads, "worker threads; results do not depend on this");

    CLI11_PARSE(app, argc, argv);

    try
    {
        SimConfig cfg = config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(config_path);
        if (seed)
            cfg.seed = *seed;

        if (codebook->parsed())
        {
            if (!format.empty() && format != "json")
                throw ConfigError("codebook output is JSON only");
            emit(cmd_codebook(cfg), out_path);
        }
        else if (pattern->parsed())
        {
            if (!beams.empty())
                cfg.pattern.beams = beams;
            if (points)
                cfg.pattern.points = *points;
            cfg.validate();
            emit(cmd_pattern(cfg, format.empty() ? OutputFormat::csv : parse_format(format)), out_path);
        }
        else if (track->parsed())
        {
            const OutputFormat fmt = format.empty() ? OutputFormat::csv : parse_format(format);
            if (fmt == OutputFormat::json)
                emit(cmd_track(cfg, fmt), out_path);
            else
            {
                const TrackRun run = run_track(cfg);
                emit(track_csv(run), out_path);
                const std::string summary = track_summary_json(run).dump(2) + "\n";
                if (!summary_path.empty())
                    emit(summary, summary_path);
                else
                    std::cerr << summary;
            }
        }
        else if (montecarlo->parsed())
        {
            if (!format.empty() && format != "json")
                throw ConfigError("montecarlo output is JSON only");
            if (threads)
                cfg.montecarlo.threads = *threads;
            cfg.validate();
            emit(cmd_montecarlo(cfg), out_path);
        }
    }
    catch (const ConfigError &e)
    {
        report("config", e.what());
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        report("internal", e.what());
        return kExitInternal;
    }
    return 0;
}
