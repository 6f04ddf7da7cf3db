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

#include "riskey/estimators.hpp"
#include "riskey/errors.hpp"
#include "riskey/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace riskey
{

namespace
{

// Eigenvalues closer than this (relative to the largest) are treated as tied when pairing.
constexpr double pairing_tie_tol = 1e-8;

void check_observation(const NoisyObservation &obs, const PilotBlock &pilot, const char *who)
{
    pilot.validate();
    if (obs.Y.cols() != pilot.nt())
        throw DimensionError(std::string(who) + ": observation has " + std::to_string(obs.Y.cols()) +
                             " columns, pilot spans " + std::to_string(pilot.nt()) + " slots");
    require_finite(obs.Y, who);
}

void check_feasible(Eigen::Index k, Eigen::Index nt, Eigen::Index nr)
{
    if (k > std::min(nt, nr))
        throw FeasibilityError("subgroup of " + std::to_string(k) +
                               " active elements cannot be separated: at most min(Nt, Nr) = " +
                               std::to_string(std::min(nt, nr)) + " elements per block");
}

// Pairs the leading k eigenvectors of the two quadratic forms by rank. Inside a run of tied
// eigenvalues the right vectors are reassigned greedily by largest |u^H Z v|.
std::vector<Eigen::Index> pair_by_rank(const RealVector &mu, const ComplexMatrix &U, const ComplexMatrix &V,
                                       const ComplexMatrix &Z, Eigen::Index k)
{
    std::vector<Eigen::Index> match(static_cast<std::size_t>(k));
    for (Eigen::Index m = 0; m < k; ++m)
        match[static_cast<std::size_t>(m)] = m;

    const double scale = std::max(std::abs(mu(0)), std::numeric_limits<double>::min());
    Eigen::Index begin = 0;
    while (begin < k)
    {
        Eigen::Index end = begin + 1;
        while (end < k && std::abs(mu(end - 1) - mu(end)) <= pairing_tie_tol * scale)
            ++end;

        if (end - begin > 1)
        {
            const Eigen::Index len = end - begin;
            Eigen::MatrixXd score(len, len);
            for (Eigen::Index a = 0; a < len; ++a)
                for (Eigen::Index b = 0; b < len; ++b)
                    score(a, b) = std::abs(U.col(begin + a).dot(Z * V.col(begin + b)));

            std::vector<bool> row_used(static_cast<std::size_t>(len)), col_used(static_cast<std::size_t>(len));
            for (Eigen::Index step = 0; step < len; ++step)
            {
                double best = -1.0;
                Eigen::Index ba = 0, bb = 0;
                for (Eigen::Index a = 0; a < len; ++a)
                    for (Eigen::Index b = 0; b < len; ++b)
                        if (!row_used[a] && !col_used[b] && score(a, b) > best)
                        {
                            best = score(a, b);
                            ba = a;
                            bb = b;
                        }
                row_used[ba] = true;
                col_used[bb] = true;
                match[static_cast<std::size_t>(begin + ba)] = begin + bb;
            }
        }
        begin = end;
    }
    return match;
}

// Receive-side pass: leading eigenpairs of Y Y^H / p. Fills elements, h_part and eigenvalues.
// Only min(k, rows of Y) pairs exist; `usable` of them are written, the rest stay zero.
SubgroupEstimate receive_pass(const NoisyObservation &obs, const PilotBlock &pilot, const RisConfig &cfg,
                              Eigen::Index usable, EvdResult &rx)
{
    const double p = pilot.power;
    rx = hermitian_evd(obs.Y * obs.Y.adjoint() / p);

    SubgroupEstimate est;
    est.elements = cfg.active_elements();
    const auto k = static_cast<Eigen::Index>(est.elements.size());
    est.h_part = ComplexMatrix::Zero(obs.Y.rows(), k);
    est.eigenvalues = RealVector::Zero(k);
    for (Eigen::Index m = 0; m < usable; ++m)
    {
        const double lambda = std::sqrt(std::max(rx.eigenvalues(m), 0.0));
        est.eigenvalues(m) = lambda;
        // cancel the phase the RIS applied to this column's element
        const cdouble undo = 1.0 / cfg.coefficient(est.elements[static_cast<std::size_t>(m)]);
        est.h_part.col(m) = lambda * rx.eigenvectors.col(m) * undo;
    }
    return est;
}

void check_group_config(const RisConfig &cfg, Eigen::Index n)
{
    cfg.validate();
    if (cfg.size() != n)
        throw ArgumentError("group configuration has " + std::to_string(cfg.size()) + " elements, expected " +
                            std::to_string(n));
    if (cfg.active_count() == 0)
        throw ArgumentError("group configuration has no active elements");
}

void check_plan_blocks(const std::vector<GroupObservation> &blocks, const SubgroupPlan &plan)
{
    if (blocks.size() != plan.groups.size())
        throw ArgumentError("expected " + std::to_string(plan.groups.size()) + " group observations, got " +
                            std::to_string(blocks.size()));
    for (std::size_t g = 0; g < blocks.size(); ++g)
    {
        check_group_config(blocks[g].config, plan.n);
        if (blocks[g].config.active_elements() != plan.groups[g])
            throw ArgumentError("observation " + std::to_string(g) + " does not activate the elements of group " +
                                std::to_string(g));
    }
}

} // namespace

NoisyObservation simulate_rx(const ComplexMatrix &H_T, const PilotBlock &pilot, double sigma2, std::uint64_t seed)
{
    if (H_T.cols() != pilot.X.rows())
        throw DimensionError("simulate_rx: channel has " + std::to_string(H_T.cols()) + " columns, pilot has " +
                             std::to_string(pilot.X.rows()) + " rows");
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
        throw ArgumentError("simulate_rx: noise variance must be >= 0");

    NoisyObservation obs;
    obs.noise_variance = sigma2;
    obs.Y = H_T * pilot.X;
    if (sigma2 > 0.0)
    {
        Rng rng(seed);
        obs.Y += rng.complex_normal_matrix(obs.Y.rows(), obs.Y.cols(), sigma2);
    }
    return obs;
}

SubgroupEstimate estimate_subgroup(const NoisyObservation &obs, const PilotBlock &pilot, const RisConfig &group_cfg)
{
    check_observation(obs, pilot, "estimate_subgroup");
    group_cfg.validate();
    const Eigen::Index k = group_cfg.active_count();
    if (k == 0)
        throw ArgumentError("estimate_subgroup: no active elements");
    check_feasible(k, pilot.nt(), obs.Y.rows());

    const double p = pilot.power;
    const ComplexMatrix &X = pilot.X;
    const ComplexMatrix &Y = obs.Y;
    const ComplexMatrix Z = Y * X.adjoint() / p;

    EvdResult rx;
    SubgroupEstimate est = receive_pass(obs, pilot, group_cfg, k, rx);
    const EvdResult tx = hermitian_evd((X * Y.adjoint()) * (Y * X.adjoint()) / (p * p));

    const std::vector<Eigen::Index> match = pair_by_rank(rx.eigenvalues, rx.eigenvectors, tx.eigenvectors, Z, k);

    est.g_part.resize(k, pilot.nt());
    est.tx_eigenvalues.resize(k);
    for (Eigen::Index m = 0; m < k; ++m)
    {
        const Eigen::Index j = match[static_cast<std::size_t>(m)];
        ComplexVector v = tx.eigenvectors.col(j);
        const cdouble proj = rx.eigenvectors.col(m).dot(Z * v);
        if (std::abs(proj) > 0.0)
            v *= std::conj(proj) / std::abs(proj);
        est.g_part.row(m) = v.adjoint();
        est.tx_eigenvalues(m) = std::sqrt(std::max(tx.eigenvalues(j), 0.0));
    }
    return est;
}

SeparateEstimate estimate_separate(const std::vector<GroupObservation> &blocks, const PilotBlock &pilot,
                                   const SubgroupPlan &plan)
{
    check_plan_blocks(blocks, plan);
    pilot.validate();
    const Eigen::Index nr = blocks.front().observation.Y.rows();
    const Eigen::Index nt = pilot.nt();

    SeparateEstimate out;
    out.H_hat = ComplexMatrix::Zero(nr, plan.n);
    out.G_hat = ComplexMatrix::Zero(plan.n, nt);
    out.H_T_hat = ComplexMatrix::Zero(nr, nt);

    for (const auto &block : blocks)
    {
        if (block.observation.Y.rows() != nr)
            throw DimensionError("estimate_separate: observations disagree on Nr");
        const SubgroupEstimate est = estimate_subgroup(block.observation, pilot, block.config);
        for (std::size_t m = 0; m < est.elements.size(); ++m)
        {
            const Eigen::Index i = est.elements[m];
            out.H_hat.col(i) = est.h_part.col(static_cast<Eigen::Index>(m));
            out.G_hat.row(i) = est.g_part.row(static_cast<Eigen::Index>(m));
        }
        out.H_T_hat += reconstruct(out.H_hat, block.config, out.G_hat);
        out.per_group_eigenvalues.push_back(est.eigenvalues);
    }
    out.slots_used = nt * plan.group_count();
    return out;
}

ComplexMatrix estimate_effective_ls(const NoisyObservation &obs, const PilotBlock &pilot)
{
    check_observation(obs, pilot, "estimate_effective_ls");
    return obs.Y * pilot.X.adjoint() / pilot.power;
}

SeparateEstimate estimate_enhanced(const std::vector<GroupObservation> &blocks, const NoisyObservation &all_on,
                                   const PilotBlock &pilot, const SubgroupPlan &plan, const RisConfig &cfg_all,
                                   const EnhancedOptions &options)
{
    check_plan_blocks(blocks, plan);
    check_group_config(cfg_all, plan.n);
    if (cfg_all.active_count() != plan.n)
        throw ArgumentError("estimate_enhanced: all-on configuration must activate every element");

    const Eigen::Index nt = pilot.nt();
    const Eigen::Index nr = all_on.Y.rows();

    SeparateEstimate out;
    out.H_hat = ComplexMatrix::Zero(nr, plan.n);
    for (const auto &block : blocks)
    {
        check_observation(block.observation, pilot, "estimate_enhanced");
        if (block.observation.Y.rows() != nr)
            throw DimensionError("estimate_enhanced: observations disagree on Nr");

        const Eigen::Index k = block.config.active_count();
        Eigen::Index usable = k;
        if (k > std::min(nt, nr))
        {
            if (!options.allow_oversized_groups)
                check_feasible(k, nt, nr);
            usable = std::min(nt, nr);
            out.degraded = true;
        }

        EvdResult rx;
        const SubgroupEstimate est = receive_pass(block.observation, pilot, block.config, usable, rx);
        for (std::size_t m = 0; m < est.elements.size(); ++m)
            out.H_hat.col(est.elements[m]) = est.h_part.col(static_cast<Eigen::Index>(m));
        out.per_group_eigenvalues.push_back(est.eigenvalues.head(usable));
    }

    out.H_T_hat = estimate_effective_ls(all_on, pilot);

    // left inverse of H_hat: normal equations when it has full column rank, thresholded SVD otherwise
    ComplexMatrix coupling;
    if (numerical_rank(out.H_hat) == plan.n)
    {
        const ComplexMatrix gram = out.H_hat.adjoint() * out.H_hat;
        coupling = gram.ldlt().solve(out.H_hat.adjoint() * out.H_T_hat);
    }
    else
    {
        out.degraded = true;
        const SvdResult s = svd(out.H_hat);
        const double cut = default_rank_tol * (s.singular_values.size() ? s.singular_values(0) : 0.0);
        RealVector inv = RealVector::Zero(s.singular_values.size());
        for (Eigen::Index m = 0; m < inv.size(); ++m)
            if (s.singular_values(m) > cut)
                inv(m) = 1.0 / s.singular_values(m);
        coupling = s.V * inv.asDiagonal() * (s.U.adjoint() * out.H_T_hat);
    }

    out.G_hat.resize(plan.n, nt);
    for (Eigen::Index i = 0; i < plan.n; ++i)
        out.G_hat.row(i) = coupling.row(i) / cfg_all.coefficient(i);

    out.slots_used = nt * (plan.group_count() + 1);
    return out;
}

SeparateEstimate lskrf_baseline(const std::vector<NoisyObservation> &blocks, const ComplexMatrix &schedule,
                                const PilotBlock &pilot)
{
    return lskrf_baseline(blocks, schedule, pilot, RisConfig::all_on(schedule.cols()));
}

SeparateEstimate lskrf_baseline(const std::vector<NoisyObservation> &blocks, const ComplexMatrix &schedule,
                                const PilotBlock &pilot, const RisConfig &reference)
{
    const Eigen::Index n = schedule.cols();
    if (schedule.rows() != n || n == 0)
        throw DimensionError("lskrf_baseline: schedule must be square and non-empty");
    if (static_cast<Eigen::Index>(blocks.size()) != n)
        throw ArgumentError("lskrf_baseline: expected " + std::to_string(n) + " blocks, got " +
                            std::to_string(blocks.size()));
    reference.validate();
    if (reference.size() != n)
        throw ArgumentError("lskrf_baseline: reference configuration has wrong element count");
    require_finite(schedule, "lskrf_baseline");

    const Eigen::Index nt = pilot.nt();
    const Eigen::Index nr = blocks.front().Y.rows();

    // column t holds vec(Y_t X^H / p)
    ComplexMatrix stacked(nr * nt, n);
    for (Eigen::Index t = 0; t < n; ++t)
    {
        const auto &obs = blocks[static_cast<std::size_t>(t)];
        if (obs.Y.rows() != nr)
            throw DimensionError("lskrf_baseline: blocks disagree on Nr");
        const ComplexMatrix Z = estimate_effective_ls(obs, pilot);
        stacked.col(t) = Eigen::Map<const ComplexVector>(Z.data(), Z.size());
    }

    // stacked = K * schedule^T  =>  K^T = schedule^-1 * stacked^T
    Eigen::FullPivLU<ComplexMatrix> lu(schedule);
    if (!lu.isInvertible())
        throw ArgumentError("lskrf_baseline: schedule matrix is singular");
    const ComplexMatrix dyads = lu.solve(stacked.transpose()).transpose();

    SeparateEstimate out;
    out.H_hat.resize(nr, n);
    out.G_hat.resize(n, nt);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const ComplexMatrix K = Eigen::Map<const ComplexMatrix>(dyads.col(i).data(), nr, nt);
        const SvdResult s = svd(K);
        const double root = std::sqrt(s.singular_values(0));
        out.H_hat.col(i) = root * s.U.col(0);
        out.G_hat.row(i) = root * s.V.col(0).adjoint();
        out.per_group_eigenvalues.push_back(s.singular_values.head(1));
    }
    out.H_T_hat = reconstruct(out.H_hat, reference, out.G_hat);
    out.slots_used = nt * n;
    return out;
}

ComplexMatrix reconstruct(const ComplexMatrix &H_hat, const RisConfig &cfg, const ComplexMatrix &G_hat)
{
    cfg.validate();
    if (H_hat.cols() != cfg.size() || G_hat.rows() != cfg.size())
        throw DimensionError("reconstruct: factor shapes do not match the configuration");
    ComplexMatrix out = ComplexMatrix::Zero(H_hat.rows(), G_hat.cols());
    for (Eigen::Index i : cfg.active_elements())
        out.noalias() += (H_hat.col(i) * cfg.coefficient(i)) * G_hat.row(i);
    return out;
}

} // namespace riskey
