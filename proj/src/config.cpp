// SPDX-License-Identifier: Apache-2.0
//
// irsee - energy-efficient IRS-assisted uplink simulation and DDPG control
// Copyright (C) 2026 The irsee Authors
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

#include "irsee/config.hpp"
#include "irsee/csv.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace irsee
{

const char *to_string(Strategy s)
{
    switch (s)
    {
    case Strategy::ddpg_irs:
        return "ddpg-irs";
    case Strategy::ddpg_no_irs:
        return "ddpg-no-irs";
    default:
        return "random";
    }
}

Strategy parse_strategy(const std::string &name)
{
    if (name == "ddpg-irs")
        return Strategy::ddpg_irs;
    if (name == "ddpg-no-irs")
        return Strategy::ddpg_no_irs;
    if (name == "random")
        return Strategy::random;
    throw ConfigError(fmt::format("unknown strategy '{}' (expected ddpg-irs, ddpg-no-irs or random)", name));
}

std::uint64_t fnv1a64(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace
{

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double parse_number(const std::string &s)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(fmt::format("'{}' is not a number", s));
    return v;
}

long parse_integer(const std::string &s)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(fmt::format("'{}' is not an integer", s));
    return v;
}

bool parse_bool(const std::string &s)
{
    if (s == "true" || s == "1" || s == "yes")
        return true;
    if (s == "false" || s == "0" || s == "no")
        return false;
    throw ConfigError(fmt::format("'{}' is not a boolean", s));
}

// Splits "12.5 dBm" / "12.5dBm" into number and unit.
std::pair<std::string, std::string> split_unit(const std::string &value)
{
    size_t i = value.size();
    while (i > 0 && std::isalpha(static_cast<unsigned char>(value[i - 1])))
        --i;
    return {trim(value.substr(0, i)), value.substr(i)};
}

enum class Quantity
{
    power,
    frequency,
    time,
    data,
    length,
    gain_db
};

double parse_quantity(const std::string &value, Quantity q)
{
    auto [num, unit] = split_unit(value);
    if (unit.empty())
        throw ConfigError(fmt::format("'{}' needs a unit suffix", value));
    const double x = parse_number(num);
    auto bad = [&] { return ConfigError(fmt::format("unit '{}' not valid here", unit)); };
    switch (q)
    {
    case Quantity::power:
        if (unit == "dBm")
            return dbm_to_watts(x);
        if (unit == "W")
            return x;
        if (unit == "mW")
            return x * 1e-3;
        throw bad();
    case Quantity::frequency:
        if (unit == "Hz")
            return x;
        if (unit == "kHz")
            return x * 1e3;
        if (unit == "MHz")
            return x * 1e6;
        if (unit == "GHz")
            return x * 1e9;
        throw bad();
    case Quantity::time:
        if (unit == "s")
            return x;
        if (unit == "ms")
            return x * 1e-3;
        throw bad();
    case Quantity::data:
        if (unit == "b")
            return x;
        if (unit == "kb" || unit == "Kb")
            return x * 1e3;
        if (unit == "Mb")
            return x * 1e6;
        throw bad();
    case Quantity::length:
        if (unit == "m")
            return x;
        if (unit == "cm")
            return x * 1e-2;
        if (unit == "mm")
            return x * 1e-3;
        throw bad();
    case Quantity::gain_db:
        if (unit == "dB")
            return db_to_linear(x);
        throw bad();
    }
    throw bad();
}

Point parse_point(const std::string &value)
{
    auto [nums, unit] = split_unit(value);
    if (unit != "m")
        throw ConfigError(fmt::format("'{}' needs the unit suffix m", value));
    auto parts = split_list(nums);
    if (parts.size() != 2)
        throw ConfigError(fmt::format("'{}' is not an x,y pair", value));
    return {parse_number(parts[0]), parse_number(parts[1])};
}

std::vector<int> parse_int_list(const std::string &value)
{
    std::vector<int> out;
    for (const auto &s : split_list(value))
        out.push_back(static_cast<int>(parse_integer(s)));
    return out;
}

int parse_count(const std::string &value)
{
    const long v = parse_integer(value);
    if (v < 0 || v > 1'000'000)
        throw ConfigError(fmt::format("count {} out of range", v));
    return static_cast<int>(v);
}

using Setter = void (*)(RunConfig &, const std::string &);

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = {
        {"num_devices", [](RunConfig &c, const std::string &v) { c.scenario.num_devices = parse_count(v); }},
        {"bs_antennas", [](RunConfig &c, const std::string &v) { c.scenario.bs_antennas = parse_count(v); }},
        {"irs_elements", [](RunConfig &c, const std::string &v) { c.scenario.irs_elements = parse_count(v); }},
        {"cell_radius",
         [](RunConfig &c, const std::string &v) { c.scenario.cell_radius = parse_quantity(v, Quantity::length); }},
        {"bs_position", [](RunConfig &c, const std::string &v) { c.scenario.bs_position = parse_point(v); }},
        {"irs_position", [](RunConfig &c, const std::string &v) { c.scenario.irs_position = parse_point(v); }},
        {"wavelength",
         [](RunConfig &c, const std::string &v) { c.scenario.wavelength = parse_quantity(v, Quantity::length); }},
        {"element_spacing",
         [](RunConfig &c, const std::string &v) { c.scenario.element_spacing = parse_quantity(v, Quantity::length); }},
        {"path_loss_reference",
         [](RunConfig &c, const std::string &v) { c.scenario.path_loss.l0 = parse_quantity(v, Quantity::gain_db); }},
        {"path_loss_exponent_direct",
         [](RunConfig &c, const std::string &v) { c.scenario.path_loss.eta_direct = parse_number(v); }},
        {"path_loss_exponent_reflect",
         [](RunConfig &c, const std::string &v) { c.scenario.path_loss.eta_reflect = parse_number(v); }},
        {"bandwidth",
         [](RunConfig &c, const std::string &v) { c.scenario.bandwidth = parse_quantity(v, Quantity::frequency); }},
        {"noise_power",
         [](RunConfig &c, const std::string &v) { c.scenario.noise_power = parse_quantity(v, Quantity::power); }},
        {"max_tx_power",
         [](RunConfig &c, const std::string &v) { c.scenario.max_tx_power = parse_quantity(v, Quantity::power); }},
        {"bs_circuit_power",
         [](RunConfig &c, const std::string &v) { c.scenario.bs_circuit_power = parse_quantity(v, Quantity::power); }},
        {"irs_element_power",
         [](RunConfig &c, const std::string &v) { c.scenario.irs_element_power = parse_quantity(v, Quantity::power); }},
        {"deadline", [](RunConfig &c, const std::string &v) { c.scenario.deadline = parse_quantity(v, Quantity::time); }},
        {"data_size_min",
         [](RunConfig &c, const std::string &v) { c.scenario.data_bits_min = parse_quantity(v, Quantity::data); }},
        {"data_size_max",
         [](RunConfig &c, const std::string &v) { c.scenario.data_bits_max = parse_quantity(v, Quantity::data); }},
        {"penalty", [](RunConfig &c, const std::string &v) { c.scenario.penalty = parse_number(v); }},
        {"channel_mode", [](RunConfig &c, const std::string &v) { c.scenario.mode = parse_channel_mode(v); }},
        {"channel_refresh",
         [](RunConfig &c, const std::string &v) {
             if (v == "episode")
                 c.scenario.refresh = ChannelRefresh::episode;
             else if (v == "run")
                 c.scenario.refresh = ChannelRefresh::run;
             else
                 throw ConfigError(fmt::format("'{}' is not episode or run", v));
         }},
        {"reward_scale", [](RunConfig &c, const std::string &v) { c.scenario.reward_scale = parse_number(v); }},
        {"latency_clip", [](RunConfig &c, const std::string &v) { c.scenario.latency_clip = parse_number(v); }},
        {"discount", [](RunConfig &c, const std::string &v) { c.hyper.discount = parse_number(v); }},
        {"actor_lr", [](RunConfig &c, const std::string &v) { c.hyper.actor_lr = parse_number(v); }},
        {"critic_lr", [](RunConfig &c, const std::string &v) { c.hyper.critic_lr = parse_number(v); }},
        {"learning_rate",
         [](RunConfig &c, const std::string &v) { c.hyper.actor_lr = c.hyper.critic_lr = parse_number(v); }},
        {"soft_update_rate", [](RunConfig &c, const std::string &v) { c.hyper.soft_update_rate = parse_number(v); }},
        {"noise_std", [](RunConfig &c, const std::string &v) { c.hyper.noise_std = parse_number(v); }},
        {"noise_decay", [](RunConfig &c, const std::string &v) { c.hyper.noise_decay = parse_number(v); }},
        {"batch_size", [](RunConfig &c, const std::string &v) { c.hyper.batch_size = parse_count(v); }},
        {"replay_capacity",
         [](RunConfig &c, const std::string &v) {
             const double x = parse_number(v);
             if (x < 1 || x > 1e9 || x != std::floor(x))
                 throw ConfigError(fmt::format("'{}' is not a valid capacity", v));
             c.hyper.memory_capacity = static_cast<size_t>(x);
         }},
        {"episodes", [](RunConfig &c, const std::string &v) { c.hyper.episodes = parse_count(v); }},
        {"steps", [](RunConfig &c, const std::string &v) { c.hyper.steps = parse_count(v); }},
        {"actor_hidden", [](RunConfig &c, const std::string &v) { c.hyper.actor_hidden = parse_int_list(v); }},
        {"critic_hidden", [](RunConfig &c, const std::string &v) { c.hyper.critic_hidden = parse_int_list(v); }},
        {"optimizer", [](RunConfig &c, const std::string &v) { c.hyper.optimizer = parse_optimizer(v); }},
        {"strategies",
         [](RunConfig &c, const std::string &v) {
             c.strategies.clear();
             for (const auto &s : split_list(v))
                 c.strategies.push_back(parse_strategy(s));
         }},
        {"seeds",
         [](RunConfig &c, const std::string &v) {
             c.seeds.clear();
             for (const auto &s : split_list(v))
             {
                 const long x = parse_integer(s);
                 if (x < 0)
                     throw ConfigError(fmt::format("seed {} is negative", x));
                 c.seeds.push_back(static_cast<std::uint64_t>(x));
             }
         }},
        {"output_dir", [](RunConfig &c, const std::string &v) { c.output_dir = v; }},
        {"sweep_parameter",
         [](RunConfig &c, const std::string &v) {
             if (!c.sweep)
                 c.sweep.emplace();
             c.sweep->parameter = v;
         }},
        {"sweep_values",
         [](RunConfig &c, const std::string &v) {
             if (!c.sweep)
                 c.sweep.emplace();
             c.sweep->values.clear();
             for (const auto &s : split_list(v))
                 c.sweep->values.push_back(parse_number(s));
         }},
        {"workers", [](RunConfig &c, const std::string &v) { c.workers = parse_count(v); }},
        {"final_window", [](RunConfig &c, const std::string &v) { c.final_window = parse_number(v); }},
        {"save_checkpoints", [](RunConfig &c, const std::string &v) { c.save_checkpoints = parse_bool(v); }},
    };
    return table;
}

bool sweepable(const std::string &p)
{
    static const char *names[] = {"num_devices",      "bs_antennas", "irs_elements",  "discount",
                                  "soft_update_rate", "actor_lr",    "critic_lr",     "learning_rate"};
    return std::find(std::begin(names), std::end(names), p) != std::end(names);
}

} // namespace

void apply_setting(RunConfig &config, const std::string &key, const std::string &value)
{
    const auto &table = setters();
    auto it = table.find(key);
    if (it == table.end())
        throw ConfigError(fmt::format("unknown key '{}'", key));
    try
    {
        it->second(config, value);
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(fmt::format("key '{}': {}", key, e.what()));
    }
}

void apply_sweep_value(RunConfig &config, const std::string &parameter, double value)
{
    if (!sweepable(parameter))
        throw ConfigError(fmt::format("sweep_parameter '{}' is not sweepable", parameter));
    const bool is_count = parameter == "num_devices" || parameter == "bs_antennas" || parameter == "irs_elements";
    if (is_count && value != std::floor(value))
        throw ConfigError(fmt::format("sweep value {} for '{}' is not an integer", value, parameter));
    apply_setting(config, parameter, is_count ? fmt::format("{}", static_cast<long>(value)) : format_double(value));
}

void RunConfig::validate() const
{
    scenario.validate();
    hyper.validate();
    if (seeds.empty())
        throw ConfigError("seeds: at least one seed is required");
    if (strategies.empty())
        throw ConfigError("strategies: at least one strategy is required");
    if (output_dir.empty())
        throw ConfigError("output_dir: must not be empty");
    if (workers < 1)
        throw ConfigError("workers: must be >= 1");
    if (!(final_window > 0.0 && final_window <= 1.0))
        throw ConfigError("final_window: must lie in (0, 1]");
    if (sweep)
    {
        if (sweep->parameter.empty())
            throw ConfigError("sweep_parameter: missing while sweep_values is set");
        if (sweep->values.empty())
            throw ConfigError("sweep_values: at least one value is required");
        for (double v : sweep->values)
        {
            RunConfig probe = *this;
            probe.sweep.reset();
            try
            {
                apply_sweep_value(probe, sweep->parameter, v);
                probe.scenario.validate();
                probe.hyper.validate();
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(fmt::format("sweep_values: {} invalid for '{}': {}", format_double(v),
                                              sweep->parameter, e.what()));
            }
        }
    }
}

std::string RunConfig::canonical() const
{
    const auto &s = scenario;
    const auto &h = hyper;
    auto list = [](const auto &xs) {
        std::string out;
        for (size_t i = 0; i < xs.size(); ++i)
            out += (i ? "," : "") + fmt::format("{}", xs[i]);
        return out;
    };
    std::string out;
    auto put = [&](const char *k, const std::string &v) { out += fmt::format("{} = {}\n", k, v); };
    put("num_devices", std::to_string(s.num_devices));
    put("bs_antennas", std::to_string(s.bs_antennas));
    put("irs_elements", std::to_string(s.irs_elements));
    put("cell_radius", format_double(s.cell_radius));
    put("bs_position", format_double(s.bs_position.x) + "," + format_double(s.bs_position.y));
    put("irs_position", format_double(s.irs_position.x) + "," + format_double(s.irs_position.y));
    put("wavelength", format_double(s.wavelength));
    put("element_spacing", format_double(s.element_spacing));
    put("path_loss_reference", format_double(s.path_loss.l0));
    put("path_loss_exponent_direct", format_double(s.path_loss.eta_direct));
    put("path_loss_exponent_reflect", format_double(s.path_loss.eta_reflect));
    put("bandwidth", format_double(s.bandwidth));
    put("noise_power", format_double(s.noise_power));
    put("max_tx_power", format_double(s.max_tx_power));
    put("bs_circuit_power", format_double(s.bs_circuit_power));
    put("irs_element_power", format_double(s.irs_element_power));
    put("deadline", format_double(s.deadline));
    put("data_size_min", format_double(s.data_bits_min));
    put("data_size_max", format_double(s.data_bits_max));
    put("penalty", format_double(s.penalty));
    put("channel_mode", to_string(s.mode));
    put("channel_refresh", s.refresh == ChannelRefresh::run ? "run" : "episode");
    put("reward_scale", format_double(s.reward_scale));
    put("latency_clip", format_double(s.latency_clip));
    put("discount", format_double(h.discount));
    put("actor_lr", format_double(h.actor_lr));
    put("critic_lr", format_double(h.critic_lr));
    put("soft_update_rate", format_double(h.soft_update_rate));
    put("noise_std", format_double(h.noise_std));
    put("noise_decay", format_double(h.noise_decay));
    put("batch_size", std::to_string(h.batch_size));
    put("replay_capacity", std::to_string(h.memory_capacity));
    put("episodes", std::to_string(h.episodes));
    put("steps", std::to_string(h.steps));
    put("actor_hidden", list(h.actor_hidden));
    put("critic_hidden", list(h.critic_hidden));
    put("optimizer", to_string(h.optimizer));
    put("final_window", format_double(final_window));
    return out;
}

RunConfig parse_config(std::string_view text, const std::string &source)
{
    RunConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, lineno));
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        try
        {
            apply_setting(config, key, value);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(fmt::format("{}:{}: {}", source, lineno, e.what()));
        }
    }
    try
    {
        config.validate();
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(fmt::format("{}: {}", source, e.what()));
    }
    return config;
}

RunConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("cannot open config file '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

} // namespace irsee
