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
#include "riskey/pilots.hpp"

#include <cstdint>
#include <vector>

namespace riskey
{

// Received pilot block Y = H_T X + N over Nt slots, N ~ CN(0, noise_variance).
struct NoisyObservation
{
    ComplexMatrix Y;
    double noise_variance = 0.0;
};

// One estimation block: what the receiver saw and which RIS configuration was active.
struct GroupObservation
{
    NoisyObservation observation;
    RisConfig config;
};

// Factors recovered from one subgroup block with k active elements.
// Column m of h_part and row m of g_part belong to elements[m]. When k > 1 the columns span
// the group's receive subspace but are not individually the per-element vectors.
struct SubgroupEstimate
{
    std::vector<Eigen::Index> elements;
    ComplexMatrix h_part;       // Nr x k
    ComplexMatrix g_part;       // k x Nt, empty for receive-only passes
    RealVector eigenvalues;     // lambda_m from Y Y^H / p, descending
    RealVector tx_eigenvalues;  // lambda_m from X Y^H Y X^H / p^2, descending
};

// Separated estimate of an RIS-assisted channel.
//
// H_T_hat is the sum over groups of H_hat[:, group] * Theta_group * G_hat[group, :]
// (for the enhanced variant it is the direct LS estimate of the all-on channel instead).
// Each element's link is only identified up to a unit scalar: h^i exp(j a) and g^i exp(-j a)
// give the same cascade.
struct SeparateEstimate
{
    ComplexMatrix H_hat;    // Nr x N
    ComplexMatrix G_hat;    // N x Nt
    ComplexMatrix H_T_hat;  // Nr x Nt
    std::vector<RealVector> per_group_eigenvalues;
    Eigen::Index slots_used = 0;

    // Set when H_hat lacked full column rank and a thresholded pseudo-inverse was used.
    bool degraded = false;
};

struct EnhancedOptions
{
    // Accept groups larger than min(Nt, Nr). Only min(k, Nt, Nr) eigenpairs are recoverable per
    // group; the remaining columns of H_hat stay zero and the result is flagged degraded.
    bool allow_oversized_groups = false;
};

// Y = H_T * X + N with N i.i.d. CN(0, sigma2). sigma2 == 0 gives exactly H_T * X.
NoisyObservation simulate_rx(const ComplexMatrix &H_T, const PilotBlock &pilot, double sigma2,
                             std::uint64_t seed);

// Two-sided eigen-decomposition estimate for one block of k <= min(Nt, Nr) active elements.
SubgroupEstimate estimate_subgroup(const NoisyObservation &obs, const PilotBlock &pilot,
                                   const RisConfig &group_cfg);

// Runs estimate_subgroup for every planned group and scatters the factors by element index.
SeparateEstimate estimate_separate(const std::vector<GroupObservation> &blocks, const PilotBlock &pilot,
                                   const SubgroupPlan &plan);

// Conventional LS estimate Y X^H / p of the effective channel.
ComplexMatrix estimate_effective_ls(const NoisyObservation &obs, const PilotBlock &pilot);

// Receive-side passes per group, then G_hat = Theta^-1 pinv(H_hat) H_T_hat with H_T_hat taken
// from an extra all-elements-on block.
SeparateEstimate estimate_enhanced(const std::vector<GroupObservation> &blocks, const NoisyObservation &all_on,
                                   const PilotBlock &pilot, const SubgroupPlan &plan, const RisConfig &cfg_all,
                                   const EnhancedOptions &options = {});

// Least-squares Khatri-Rao factorization baseline.
//
// Block t is received with element i weighted by schedule(t, i). The per-element dyads
// K_i = h^i g^i are solved jointly by inverting the schedule, then each is split by its
// dominant singular pair. H_T_hat is assembled for `reference` (all elements on, zero phase
// when omitted).
SeparateEstimate lskrf_baseline(const std::vector<NoisyObservation> &blocks, const ComplexMatrix &schedule,
                                const PilotBlock &pilot);
SeparateEstimate lskrf_baseline(const std::vector<NoisyObservation> &blocks, const ComplexMatrix &schedule,
                                const PilotBlock &pilot, const RisConfig &reference);

// H_hat * Theta * G_hat for the given configuration.
ComplexMatrix reconstruct(const ComplexMatrix &H_hat, const RisConfig &cfg, const ComplexMatrix &G_hat);

} // namespace riskey
