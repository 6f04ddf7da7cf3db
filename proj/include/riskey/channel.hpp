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

#include "riskey/linalg.hpp"

#include <cstdint>
#include <vector>

namespace riskey
{

// Ground-truth per-element channels of an RIS-assisted link (no direct Tx-Rx path).
//   H : Nr x N, column i is the element-to-Rx vector h^i
//   G : N x Nt, row i is the Tx-to-element vector g^i
struct ChannelRealization
{
    ComplexMatrix H;
    ComplexMatrix G;

    Eigen::Index nr() const { return H.rows(); }
    Eigen::Index n() const { return H.cols(); }
    Eigen::Index nt() const { return G.cols(); }

    ComplexVector h(Eigen::Index element) const { return H.col(element); }
    ComplexRowVector g(Eigen::Index element) const { return G.row(element); }
};

// Diagonal reflection configuration with unit gains.
// An active element reflects with coefficient exp(j * phase); an inactive one contributes 0.
struct RisConfig
{
    std::vector<double> phases;
    std::vector<bool> active;

    static RisConfig all_on(Eigen::Index n, double phase = 0.0);
    static RisConfig all_off(Eigen::Index n);
    static RisConfig single(Eigen::Index n, Eigen::Index element, double phase = 0.0);

    Eigen::Index size() const { return static_cast<Eigen::Index>(phases.size()); }
    cdouble coefficient(Eigen::Index element) const;
    std::vector<Eigen::Index> active_elements() const;
    Eigen::Index active_count() const;

    // Throws ArgumentError when phases/mask lengths differ or a phase is not finite.
    void validate() const;
};

// Combines disjoint configurations into one: every element active in any input is active
// with that input's phase. Throws ArgumentError on overlapping masks or size mismatch.
RisConfig merge_configs(const std::vector<RisConfig> &configs);

// i.i.d. CN(0, 1) entries for H then G, row-major, from a generator seeded with `seed`.
ChannelRealization draw_channels(int nt, int nr, int n, std::uint64_t seed);

// Single keyhole dyad h * sigma_scs * g, sigma_scs in [0, 1].
ComplexMatrix keyhole_channel(const ComplexVector &h, const ComplexRowVector &g, double sigma_scs);

// H_T = sum over active i of h^i exp(j theta_i) g^i  (= H * Theta * G), shape Nr x Nt.
ComplexMatrix effective_channel(const ChannelRealization &real, const RisConfig &cfg);

} // namespace riskey
