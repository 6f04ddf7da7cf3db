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

#include "riskey/channel.hpp"
#include "riskey/errors.hpp"
#include "riskey/random.hpp"

#include <cmath>
#include <string>

namespace riskey
{

RisConfig RisConfig::all_on(Eigen::Index n, double phase)
{
    return {std::vector<double>(static_cast<std::size_t>(n), phase),
            std::vector<bool>(static_cast<std::size_t>(n), true)};
}

RisConfig RisConfig::all_off(Eigen::Index n)
{
    return {std::vector<double>(static_cast<std::size_t>(n), 0.0),
            std::vector<bool>(static_cast<std::size_t>(n), false)};
}

RisConfig RisConfig::single(Eigen::Index n, Eigen::Index element, double phase)
{
    if (element < 0 || element >= n)
        throw ArgumentError("RisConfig::single: element index out of range");
    RisConfig cfg = all_off(n);
    cfg.active[static_cast<std::size_t>(element)] = true;
    cfg.phases[static_cast<std::size_t>(element)] = phase;
    return cfg;
}

cdouble RisConfig::coefficient(Eigen::Index element) const
{
    const auto i = static_cast<std::size_t>(element);
    if (!active[i])
        return {0.0, 0.0};
    return std::polar(1.0, phases[i]);
}

std::vector<Eigen::Index> RisConfig::active_elements() const
{
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < active.size(); ++i)
        if (active[i])
            out.push_back(static_cast<Eigen::Index>(i));
    return out;
}

Eigen::Index RisConfig::active_count() const
{
    Eigen::Index count = 0;
    for (bool a : active)
        count += a ? 1 : 0;
    return count;
}

void RisConfig::validate() const
{
    if (phases.size() != active.size())
        throw ArgumentError("RisConfig: " + std::to_string(phases.size()) + " phases but " +
                            std::to_string(active.size()) + " mask entries");
    for (double p : phases)
        if (!std::isfinite(p))
            throw ArgumentError("RisConfig: phase is not finite");
}

RisConfig merge_configs(const std::vector<RisConfig> &configs)
{
    if (configs.empty())
        throw ArgumentError("merge_configs: no configurations");
    RisConfig out = RisConfig::all_off(configs.front().size());
    for (const auto &cfg : configs)
    {
        cfg.validate();
        if (cfg.size() != out.size())
            throw ArgumentError("merge_configs: configurations have different element counts");
        for (Eigen::Index i : cfg.active_elements())
        {
            const auto k = static_cast<std::size_t>(i);
            if (out.active[k])
                throw ArgumentError("merge_configs: element " + std::to_string(i) + " active twice");
            out.active[k] = true;
            out.phases[k] = cfg.phases[k];
        }
    }
    return out;
}

ChannelRealization draw_channels(int nt, int nr, int n, std::uint64_t seed)
{
    if (nt < 1 || nr < 1 || n < 1)
        throw ArgumentError("draw_channels: dimensions must be >= 1 (got Nt=" + std::to_string(nt) +
                            ", Nr=" + std::to_string(nr) + ", N=" + std::to_string(n) + ")");
    Rng rng(seed);
    ChannelRealization real;
    real.H = rng.complex_normal_matrix(nr, n);
    real.G = rng.complex_normal_matrix(n, nt);
    return real;
}

ComplexMatrix keyhole_channel(const ComplexVector &h, const ComplexRowVector &g, double sigma_scs)
{
    if (!(sigma_scs >= 0.0 && sigma_scs <= 1.0))
        throw ArgumentError("keyhole_channel: scattering cross-section must lie in [0, 1]");
    return (h * sigma_scs) * g;
}

ComplexMatrix effective_channel(const ChannelRealization &real, const RisConfig &cfg)
{
    cfg.validate();
    if (cfg.size() != real.n())
        throw ArgumentError("effective_channel: configuration has " + std::to_string(cfg.size()) +
                            " elements, realization has " + std::to_string(real.n()));

    ComplexMatrix out = ComplexMatrix::Zero(real.nr(), real.nt());
    for (Eigen::Index i : cfg.active_elements())
        out.noalias() += (real.H.col(i) * cfg.coefficient(i)) * real.G.row(i);
    return out;
}

} // namespace riskey
