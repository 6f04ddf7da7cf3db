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

#pragma once

#include "riskey/errors.hpp"
#include "riskey/experiments.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace riskey
{

// A configuration problem tied to one key (or to the file itself when key is empty).
class ConfigError : public ArgumentError
{
public:
    ConfigError(std::string key, const std::string &message)
        : ArgumentError(key.empty() ? message : key + ": " + message), key_(std::move(key))
    {
    }

    const std::string &key() const { return key_; }

private:
    std::string key_;
};

// Plain `key = value` lines; `#` starts a comment; lists are comma-separated.
// Keys: nt, nr, n, snr_db, trials, estimators, master_seed, pilot_power, random_phases,
// enhanced_literal_groups, threads. Unset keys keep their defaults.
ExperimentConfig parse_config(std::istream &in);
ExperimentConfig load_config(const std::filesystem::path &path);

// `key=value` pairs that reproduce `cfg` when fed back to parse_config.
std::vector<std::string> config_echo(const ExperimentConfig &cfg);

} // namespace riskey
