// SPDX-License-Identifier: Apache-2.0
//
// riskey: keyhole-model channel estimation for RIS-assisted MIMO links
// Copyright (C) 2026 The riskey authors
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

#include "riskey/config.hpp"
#include "riskey/report.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace riskey
{

namespace
{

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string &key, const std::string &value)
{
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (item.empty())
            throw ConfigError(key, "empty list entry in '" + value + "'");
        items.push_back(item);
    }
    if (items.empty())
        throw ConfigError(key, "list is empty");
    return items;
}

template <typename T>
T parse_number(const std::string &key, const std::string &text)
{
    T value{};
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key, "cannot parse '" + text + "' as a number");
    return value;
}

bool parse_bool(const std::string &key, const std::string &text)
{
    if (text == "true" || text == "1" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "no")
        return false;
    throw ConfigError(key, "expected true or false, got '" + text + "'");
}

void assign(ExperimentConfig &cfg, const std::string &key, const std::string &value)
{
    if (key == "nt")
        cfg.nt = parse_number<int>(key, value);
    else if (key == "nr")
        cfg.nr = parse_number<int>(key, value);
    else if (key == "n")
        cfg.n = parse_number<int>(key, value);
    else if (key == "trials")
        cfg.trials = parse_number<int>(key, value);
    else if (key == "master_seed")
        cfg.master_seed = parse_number<std::uint64_t>(key, value);
    else if (key == "pilot_power")
        cfg.pilot_power = parse_number<double>(key, value);
    else if (key == "threads")
        cfg.threads = parse_number<unsigned>(key, value);
    else if (key == "random_phases")
        cfg.random_phases = parse_bool(key, value);
    else if (key == "enhanced_literal_groups")
        cfg.enhanced_literal_groups = parse_bool(key, value);
    else if (key == "snr_db")
    {
        cfg.snr_db_list.clear();
        for (const auto &item : split_list(key, value))
            cfg.snr_db_list.push_back(parse_number<double>(key, item));
    }
    else if (key == "estimators")
    {
        cfg.estimators.clear();
        for (const auto &item : split_list(key, value))
        {
            try
            {
                cfg.estimators.push_back(parse_estimator(item));
            }
            catch (const ArgumentError &e)
            {
                throw ConfigError(key, e.what());
            }
        }
    }
    else
        throw ConfigError(key, "unknown key");
}

} // namespace

ExperimentConfig parse_config(std::istream &in)
{
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty())
            throw ConfigError("", "line " + std::to_string(lineno) + ": missing key");
        if (!seen.insert(key).second)
            throw ConfigError(key, "duplicate key");
        if (value.empty())
            throw ConfigError(key, "missing value");
        assign(cfg, key, value);
    }

    try
    {
        cfg.validate();
    }
    catch (const ArgumentError &e)
    {
        const std::string msg = e.what();
        const auto colon = msg.find(':');
        throw ConfigError(colon == std::string::npos ? "" : msg.substr(0, colon),
                          colon == std::string::npos ? msg : trim(msg.substr(colon + 1)));
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot read config file '" + path.string() + "'");
    return parse_config(in);
}

std::vector<std::string> config_echo(const ExperimentConfig &cfg)
{
    auto join = [](const auto &items, auto fmt) {
        std::string out;
        for (const auto &item : items)
        {
            if (!out.empty())
                out += ",";
            out += fmt(item);
        }
        return out;
    };

    return {
        "nt=" + std::to_string(cfg.nt),
        "nr=" + std::to_string(cfg.nr),
        "n=" + std::to_string(cfg.n),
        "snr_db=" + join(cfg.snr_db_list, [](double s) { return format_double(s); }),
        "trials=" + std::to_string(cfg.trials),
        "estimators=" + join(cfg.estimators, [](Estimator e) { return std::string(to_string(e)); }),
        "master_seed=" + std::to_string(cfg.master_seed),
        "pilot_power=" + format_double(cfg.pilot_power),
        "random_phases=" + std::string(cfg.random_phases ? "true" : "false"),
        "enhanced_literal_groups=" + std::string(cfg.enhanced_literal_groups ? "true" : "false"),
    };
}

} // namespace riskey
