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

#include "riskey/channel.hpp"
#include "riskey/linalg.hpp"

#include <cstdint>
#include <vector>

namespace riskey
{

inline constexpr double semi_unitary_tol = 1e-9;

// Square training matrix X (Nt x Nt) with X * X^H = power * I.
struct PilotBlock
{
    ComplexMatrix X;
    double power = 1.0;

    Eigen::Index nt() const { return X.rows(); }

    // Throws ContractError unless X is square and ||X X^H - power I||_F <= tol * ||power I||_F.
    void validate() const;
};

// sqrt(power) times the unitary Nt-point DFT matrix.
PilotBlock build_pilot(int nt, double power);

// Element indices are 0-based. Group k holds {k, k + G, k + 2G, ...} below N, where G is the
// number of groups, so members of a group are never neighbours once G > 1.
struct SubgroupPlan
{
    std::vector<std::vector<Eigen::Index>> groups;
    Eigen::Index subgroup_size = 1;
    Eigen::Index n = 0;

    Eigen::Index group_count() const { return static_cast<Eigen::Index>(groups.size()); }
};

// ceil(N / size) stride-interleaved groups of at most `size` elements.
SubgroupPlan stride_plan(int n, int subgroup_size);

// The estimation plan: subgroup size min(Nt, Nr).
SubgroupPlan subgroup_plan(int n, int nt, int nr);

// One configuration per group with only that group's members active.
// Phases are 0 unless `random_phases` is set, in which case they are uniform on [0, 2pi) from `seed`.
std::vector<RisConfig> ris_schedule(const SubgroupPlan &plan, std::uint64_t seed, bool random_phases = false);

// N x N matrix Psi with Psi(t, i) = exp(-2 pi j t i / N): element i's coefficient in block t.
ComplexMatrix dft_schedule_matrix(int n);

// Block-wise configurations realizing the rows of dft_schedule_matrix(n), all elements active.
std::vector<RisConfig> dft_schedule(int n);

} // namespace riskey
