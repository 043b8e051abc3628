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

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

namespace monotrack
{
    using nlohmann::json;

    namespace
    {
        // Rejects keys not in `allowed`; catches typos in hand-written configs.
        void expect_keys(const json &obj, std::string_view where, std::initializer_list<std::string_view> allowed)
        {
            if (!obj.is_object())
                throw ConfigError(std::string(where) + ": expected an object");
            for (const auto &[key, _] : obj.items())
            {
                bool ok = false;
                for (auto a : allowed)
                    ok = ok || key == a;
                if (!ok)
                    throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
            }
        }

        double get_number(const json &v, std::string_view where)
        {
            if (!v.is_number())
                throw ConfigError(std::string(where) + ": expected a number");
            return v.get<double>();
        }

        std::size_t get_count(const json &v, std::string_view where)
        {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw ConfigError(std::string(where) + ": expected a non-negative integer");
            return v.get<std::size_t>();
        }

        bool get_bool(const json &v, std::string_view where)
        {
            if (!v.is_boolean())
                throw ConfigError(std::string(where) + ": expected true or false");
            return v.get<bool>();
        }

        std::optional<unsigned> get_bits(const json &v, std::string_view where)
        {
            if (v.is_null())
                return std::nullopt;
            const auto b = get_count(v, where);
            if (b < 1 || b > 16)
                throw ConfigError(std::string(where) + ": quantization bits must be in [1, 16]");
            return static_cast<unsigned>(b);
        }

        Vec2 get_vec2(const json &v, std::string_view where)
        {
            if (!v.is_array() || v.size() != 2)
                throw ConfigError(std::string(where) + ": expected [x, y]");
            return {get_number(v[0], where), get_number(v[1], where)};
        }

        UlaConfig parse_ula(const json &j, std::string_view where)
        {
            expect_keys(j, where, {"n_elements", "spacing_wavelengths", "allow_grating_lobes"});
            UlaConfig c;
            if (j.contains("n_elements"))
                c.n_elements = get_count(j["n_elements"], where);
            if (j.contains("spacing_wavelengths"))
                c.spacing_wavelengths = get_number(j["spacing_wavelengths"], where);
            if (j.contains("allow_grating_lobes"))
                c.allow_grating_lobes = get_bool(j["allow_grating_lobes"], where);
            return c;
        }

        cdouble parse_gain(const json &j)
        {
            if (j.is_number())
                return {j.get<double>(), 0.0};
            expect_keys(j, "gain", {"re", "im"});
            return {j.contains("re") ? get_number(j["re"], "gain.re") : 0.0,
                    j.contains("im") ? get_number(j["im"], "gain.im") : 0.0};
        }

        void parse_channel(const json &j, SimConfig &c)
        {
            expect_keys(j, "channel", {"paths", "noise_variance", "tx_power"});
            if (j.contains("paths"))
            {
                if (!j["paths"].is_array())
                    throw ConfigError("channel.paths: expected an array");
                c.paths.clear();
                for (const auto &p : j["paths"])
                {
                    expect_keys(p, "channel.paths[]", {"aoa_u", "aod_u", "gain"});
                    PathComponent pc;
                    if (p.contains("aoa_u"))
                        pc.aoa_u = get_number(p["aoa_u"], "aoa_u");
                    if (p.contains("aod_u"))
                        pc.aod_u = get_number(p["aod_u"], "aod_u");
                    if (p.contains("gain"))
                        pc.gain = parse_gain(p["gain"]);
                    c.paths.push_back(pc);
                }
            }
            if (j.contains("noise_variance"))
                c.noise_variance = get_number(j["noise_variance"], "channel.noise_variance");
            if (j.contains("tx_power"))
                c.tx_power = get_number(j["tx_power"], "channel.tx_power");
        }

        MobilityConfig parse_mobility(const json &j)
        {
            expect_keys(j, "mobility",
                        {"ap_position", "ula_axis", "user_start", "speed_mps", "update_interval_s", "allow_overspeed",
                         "kind", "heading", "waypoints", "walk_seed", "duration_s", "gain_model"});
            MobilityConfig m;
            auto &r = m.room;
            if (j.contains("ap_position"))
                r.ap_position = get_vec2(j["ap_position"], "mobility.ap_position");
            if (j.contains("ula_axis"))
                r.ula_axis = get_vec2(j["ula_axis"], "mobility.ula_axis");
            if (j.contains("user_start"))
                r.user_start = get_vec2(j["user_start"], "mobility.user_start");
            if (j.contains("speed_mps"))
                r.speed = get_number(j["speed_mps"], "mobility.speed_mps");
            if (j.contains("update_interval_s"))
                r.update_interval = get_number(j["update_interval_s"], "mobility.update_interval_s");
            if (j.contains("allow_overspeed"))
                r.allow_overspeed = get_bool(j["allow_overspeed"], "mobility.allow_overspeed");
            if (j.contains("duration_s"))
                m.duration = get_number(j["duration_s"], "mobility.duration_s");

            const std::string kind = j.value("kind", std::string("linear"));
            if (kind == "linear")
            {
                trajectory::Linear lin;
                if (j.contains("heading"))
                    lin.heading = get_vec2(j["heading"], "mobility.heading");
                m.kind = lin;
            }
            else if (kind == "waypoints")
            {
                trajectory::Waypoints wp;
                if (!j.contains("waypoints") || !j["waypoints"].is_array())
                    throw ConfigError("mobility.waypoints: required array for kind 'waypoints'");
                for (const auto &p : j["waypoints"])
                    wp.points.push_back(get_vec2(p, "mobility.waypoints[]"));
                if (wp.points.empty())
                    throw ConfigError("mobility.waypoints: waypoint list is empty");
                m.kind = wp;
            }
            else if (kind == "random_walk")
            {
                trajectory::RandomWalk rw;
                if (j.contains("walk_seed"))
                    rw.seed = j["walk_seed"].get<std::uint64_t>();
                m.kind = rw;
            }
            else
                throw ConfigError("mobility.kind: expected linear, waypoints or random_walk");

            const std::string gm = j.value("gain_model", std::string("constant"));
            if (gm == "constant")
                m.gain_model = GainModel::constant;
            else if (gm == "inverse_square")
                m.gain_model = GainModel::inverse_square;
            else
                throw ConfigError("mobility.gain_model: expected constant or inverse_square");
            return m;
        }

        TrackerSettings parse_tracker(const json &j)
        {
            expect_keys(j, "tracker",
                        {"epsilon", "max_iterations", "averaging_count", "squint_u", "boresight_gate", "dark_factor", "circular",
                         "initial_rx_beam", "rounds", "round_interval_s"});
            TrackerSettings t;
            if (j.contains("epsilon") && !j["epsilon"].is_null())
                t.epsilon = get_number(j["epsilon"], "tracker.epsilon");
            if (j.contains("max_iterations") && !j["max_iterations"].is_null())
                t.max_iterations = get_count(j["max_iterations"], "tracker.max_iterations");
            if (j.contains("averaging_count") && !j["averaging_count"].is_null())
                t.averaging_count = get_count(j["averaging_count"], "tracker.averaging_count");
            if (j.contains("squint_u") && !j["squint_u"].is_null())
                t.squint_u = get_number(j["squint_u"], "tracker.squint_u");
            if (j.contains("boresight_gate"))
                t.boresight_gate = get_number(j["boresight_gate"], "tracker.boresight_gate");
            if (j.contains("dark_factor"))
                t.dark_factor = get_number(j["dark_factor"], "tracker.dark_factor");
            if (j.contains("circular"))
                t.circular = get_bool(j["circular"], "tracker.circular");
            if (j.contains("initial_rx_beam") && !j["initial_rx_beam"].is_null())
                t.initial_rx_beam = get_count(j["initial_rx_beam"], "tracker.initial_rx_beam");
            if (j.contains("rounds"))
                t.rounds = get_count(j["rounds"], "tracker.rounds");
            if (j.contains("round_interval_s"))
                t.round_interval = get_number(j["round_interval_s"], "tracker.round_interval_s");
            return t;
        }

        MonteCarloSettings parse_montecarlo(const json &j)
        {
            expect_keys(j, "montecarlo", {"snr_db", "bits", "seed_beam", "threads"});
            MonteCarloSettings m;
            if (j.contains("snr_db"))
            {
                if (!j["snr_db"].is_array() || j["snr_db"].empty())
                    throw ConfigError("montecarlo.snr_db: expected a non-empty array");
                m.snr_db.clear();
                for (const auto &v : j["snr_db"])
                    m.snr_db.push_back(v.is_null() ? std::nullopt
                                                   : std::optional<double>(get_number(v, "montecarlo.snr_db")));
            }
            if (j.contains("bits"))
            {
                if (!j["bits"].is_array())
                    throw ConfigError("montecarlo.bits: expected an array");
                for (const auto &v : j["bits"])
                    m.bits.push_back(get_bits(v, "montecarlo.bits"));
            }
            if (j.contains("seed_beam"))
            {
                const auto s = j["seed_beam"].get<std::string>();
                if (s == "random")
                    m.random_seed_beam = true;
                else if (s != "search")
                    throw ConfigError("montecarlo.seed_beam: expected search or random");
            }
            if (j.contains("threads"))
                m.threads = get_count(j["threads"], "montecarlo.threads");
            return m;
        }

        PatternSettings parse_pattern(const json &j)
        {
            expect_keys(j, "pattern", {"beams", "points"});
            PatternSettings p;
            if (j.contains("beams"))
            {
                if (!j["beams"].is_array())
                    throw ConfigError("pattern.beams: expected an array");
                for (const auto &b : j["beams"])
                    p.beams.push_back(get_count(b, "pattern.beams[]"));
            }
            if (j.contains("points"))
                p.points = get_count(j["points"], "pattern.points");
            return p;
        }
    }

    ChannelState SimConfig::channel() const
    {
        return ChannelState(tx, rx, paths, noise_variance, tx_power);
    }

    void SimConfig::validate() const
    {
        tx.validate();
        rx.validate();
        (void)channel();
        if (mobility)
        {
            mobility->room.validate();
            if (!(mobility->duration > 0.0))
                throw ConfigError("mobility.duration_s must be > 0");
            (void)aoa_of_position(mobility->room, mobility->room.user_start);
        }
        if (tracker.epsilon && !(*tracker.epsilon > 0.0 && *tracker.epsilon < 1.0))
            throw ConfigError("tracker.epsilon must lie in (0, 1)");
        if (tracker.max_iterations && *tracker.max_iterations == 0)
            throw ConfigError("tracker.max_iterations must be positive");
        if (tracker.averaging_count && *tracker.averaging_count == 0)
            throw ConfigError("tracker.averaging_count must be positive");
        if (tracker.initial_rx_beam && *tracker.initial_rx_beam >= rx.n_elements)
            throw ConfigError("tracker.initial_rx_beam out of range");
        if (tracker.rounds == 0)
            throw ConfigError("tracker.rounds must be positive");
        if (!(tracker.round_interval > 0.0))
            throw ConfigError("tracker.round_interval_s must be > 0");
        if (trials == 0)
            throw ConfigError("trials must be positive");
        if (montecarlo.threads == 0)
            throw ConfigError("montecarlo.threads must be positive");
        if (pattern.points < 2)
            throw ConfigError("pattern.points must be >= 2");
        for (auto b : pattern.beams)
            if (b >= rx.n_elements)
                throw ConfigError("pattern.beams: unknown beam index " + std::to_string(b));
    }

    SimConfig parse_config(const json &doc)
    {
        expect_keys(doc, "config",
                    {"schema_version", "tx", "rx", "channel", "mobility", "tracker", "quantization_bits", "seed",
                     "trials", "montecarlo", "pattern"});
        SimConfig c;
        try
        {
            if (doc.contains("schema_version") && doc["schema_version"] != kSchemaVersion)
                throw ConfigError("config: unsupported schema_version");
            if (doc.contains("tx"))
                c.tx = parse_ula(doc["tx"], "tx");
            if (doc.contains("rx"))
                c.rx = parse_ula(doc["rx"], "rx");
            if (doc.contains("channel"))
                parse_channel(doc["channel"], c);
            if (doc.contains("mobility") && !doc["mobility"].is_null())
                c.mobility = parse_mobility(doc["mobility"]);
            if (doc.contains("tracker"))
                c.tracker = parse_tracker(doc["tracker"]);
            if (doc.contains("quantization_bits"))
                c.quantization_bits = get_bits(doc["quantization_bits"], "quantization_bits");
            if (doc.contains("seed"))
            {
                const auto &sd = doc["seed"];
                if (!sd.is_number_integer() || (!sd.is_number_unsigned() && sd.get<long long>() < 0))
                    throw ConfigError("seed: expected an unsigned integer");
                c.seed = doc["seed"].get<std::uint64_t>();
            }
            if (doc.contains("trials"))
                c.trials = get_count(doc["trials"], "trials");
            if (doc.contains("montecarlo"))
                c.montecarlo = parse_montecarlo(doc["montecarlo"]);
            if (doc.contains("pattern"))
                c.pattern = parse_pattern(doc["pattern"]);
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("config: ") + e.what());
        }
        try
        {
            c.validate();
        }
        catch (const std::domain_error &e)
        {
            throw ConfigError(std::string("config: ") + e.what());
        }
        return c;
    }

    SimConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file " + path.string());
        json doc;
        try
        {
            doc = json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        return parse_config(doc);
    }
}
