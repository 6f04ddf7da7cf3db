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

#include "riskey/pilots.hpp"
#include "riskey/errors.hpp"
#include "riskey/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace riskey
{

namespace
{

// exp(-2 pi j k / n) with k reduced mod n first, which keeps the argument small.
cdouble dft_twiddle(Eigen::Index k, Eigen::Index n)
{
    const Eigen::Index r = k % n;
    return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

} // namespace

void PilotBlock::validate() const
{
    if (X.rows() != X.cols() || X.size() == 0)
        throw ContractError("pilot matrix must be square and non-empty");
    if (!(power > 0.0) || !std::isfinite(power))
        throw ContractError("pilot power must be positive");
    require_finite(X, "pilot");
    const ComplexMatrix target = power * ComplexMatrix::Identity(X.rows(), X.rows());
    const double err = (X * X.adjoint() - target).norm();
    if (err > semi_unitary_tol * target.norm())
        throw ContractError("pilot matrix is not semi-unitary (||X X^H - pI||_F = " + std::to_string(err) + ")");
}

PilotBlock build_pilot(int nt, double power)
{
    if (nt < 1)
        throw ArgumentError("build_pilot: Nt must be >= 1");
    if (!(power > 0.0) || !std::isfinite(power))
        throw ArgumentError("build_pilot: power must be positive");

    const double scale = std::sqrt(power / nt);
    PilotBlock pilot;
    pilot.power = power;
    pilot.X.resize(nt, nt);
    for (Eigen::Index r = 0; r < nt; ++r)
        for (Eigen::Index c = 0; c < nt; ++c)
            pilot.X(r, c) = scale * dft_twiddle(r * c, nt);
    return pilot;
}

SubgroupPlan stride_plan(int n, int subgroup_size)
{
    if (n < 1 || subgroup_size < 1)
        throw ArgumentError("stride_plan: N and subgroup size must be >= 1");

    SubgroupPlan plan;
    plan.n = n;
    plan.subgroup_size = subgroup_size;
    const Eigen::Index count = (n + subgroup_size - 1) / subgroup_size;
    plan.groups.resize(static_cast<std::size_t>(count));
    for (Eigen::Index k = 0; k < count; ++k)
        for (Eigen::Index i = k; i < n; i += count)
            plan.groups[static_cast<std::size_t>(k)].push_back(i);
    return plan;
}

SubgroupPlan subgroup_plan(int n, int nt, int nr)
{
    if (nt < 1 || nr < 1)
        throw ArgumentError("subgroup_plan: Nt and Nr must be >= 1");
    return stride_plan(n, std::min(nt, nr));
}

std::vector<RisConfig> ris_schedule(const SubgroupPlan &plan, std::uint64_t seed, bool random_phases)
{
    Rng rng(seed);
    std::vector<RisConfig> out;
    out.reserve(plan.groups.size());
    for (const auto &group : plan.groups)
    {
        RisConfig cfg = RisConfig::all_off(plan.n);
        for (Eigen::Index i : group)
        {
            const auto k = static_cast<std::size_t>(i);
            cfg.active[k] = true;
            cfg.phases[k] = random_phases ? rng.uniform(0.0, 2.0 * std::numbers::pi) : 0.0;
        }
        out.push_back(std::move(cfg));
    }
    return out;
}

ComplexMatrix dft_schedule_matrix(int n)
{
    if (n < 1)
        throw ArgumentError("dft_schedule_matrix: N must be >= 1");
    ComplexMatrix psi(n, n);
    for (Eigen::Index t = 0; t < n; ++t)
        for (Eigen::Index i = 0; i < n; ++i)
            psi(t, i) = dft_twiddle(t * i, n);
    return psi;
}

std::vector<RisConfig> dft_schedule(int n)
{
    if (n < 1)
        throw ArgumentError("dft_schedule: N must be >= 1");
    std::vector<RisConfig> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index t = 0; t < n; ++t)
    {
        RisConfig cfg = RisConfig::all_on(n);
        for (Eigen::Index i = 0; i < n; ++i)
            cfg.phases[static_cast<std::size_t>(i)] =
                -2.0 * std::numbers::pi * static_cast<double>((t * i) % n) / static_cast<double>(n);
        out.push_back(std::move(cfg));
    }
    return out;
}

} // namespace riskey
