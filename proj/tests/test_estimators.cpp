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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "riskey/channel.hpp"
#include "riskey/errors.hpp"
#include "riskey/estimators.hpp"
#include "riskey/pilots.hpp"
#include "riskey/random.hpp"

#include <cstring>
#include <numbers>

using namespace riskey;

namespace
{

std::vector<GroupObservation> observe(const ChannelRealization &real, const std::vector<RisConfig> &schedule,
                                      const PilotBlock &pilot, double sigma2, std::uint64_t seed)
{
    std::vector<GroupObservation> blocks;
    for (std::size_t g = 0; g < schedule.size(); ++g)
        blocks.push_back({simulate_rx(effective_channel(real, schedule[g]), pilot, sigma2, mix64(seed, g)),
                          schedule[g]});
    return blocks;
}

// Best rank-k approximation of Z from the singular value decomposition.
ComplexMatrix truncated(const ComplexMatrix &Z, Eigen::Index k)
{
    const SvdResult s = svd(Z);
    return s.U.leftCols(k) * s.singular_values.head(k).cast<cdouble>().asDiagonal() * s.V.leftCols(k).adjoint();
}

ComplexMatrix group_product(const SubgroupEstimate &est, const RisConfig &cfg)
{
    ComplexVector theta(static_cast<Eigen::Index>(est.elements.size()));
    for (std::size_t m = 0; m < est.elements.size(); ++m)
        theta(static_cast<Eigen::Index>(m)) = cfg.coefficient(est.elements[m]);
    return est.h_part * theta.asDiagonal() * est.g_part;
}

} // namespace

TEST_CASE("simulate_rx", "[estimators]")
{
    const ChannelRealization real = draw_channels(4, 3, 5, 1);
    const ComplexMatrix Ht = effective_channel(real, RisConfig::all_on(5));
    const PilotBlock pilot = build_pilot(4, 2.0);

    SECTION("noise-free is exact")
    {
        const NoisyObservation obs = simulate_rx(Ht, pilot, 0.0, 9);
        CHECK((obs.Y - Ht * pilot.X).norm() == 0.0);
    }

    SECTION("same seed, same observation")
    {
        const NoisyObservation a = simulate_rx(Ht, pilot, 0.3, 9);
        const NoisyObservation b = simulate_rx(Ht, pilot, 0.3, 9);
        CHECK(std::memcmp(a.Y.data(), b.Y.data(), sizeof(cdouble) * a.Y.size()) == 0);
    }

    SECTION("noise variance matches sigma2 over 1e4 entries")
    {
        const ComplexMatrix zero = ComplexMatrix::Zero(10, 10);
        const PilotBlock unit = build_pilot(10, 1.0);
        double power = 0.0;
        std::size_t count = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
        {
            const NoisyObservation obs = simulate_rx(zero, unit, 1.0, seed);
            power += obs.Y.squaredNorm();
            count += static_cast<std::size_t>(obs.Y.size());
        }
        REQUIRE(count == 10000);
        const double variance = power / static_cast<double>(count);
        CHECK(variance >= 0.95);
        CHECK(variance <= 1.05);
    }

    SECTION("errors")
    {
        CHECK_THROWS_AS(simulate_rx(Ht, build_pilot(3, 1.0), 0.0, 1), DimensionError);
        CHECK_THROWS_AS(simulate_rx(Ht, pilot, -1.0, 1), ArgumentError);
    }
}

TEST_CASE("estimate_subgroup - single element, noise-free", "[estimators]")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const int nt = 1 + static_cast<int>(seed % 5);
        const int nr = 1 + static_cast<int>((seed / 5) % 5);
        const ChannelRealization real = draw_channels(nt, nr, 6, seed);
        const PilotBlock pilot = build_pilot(nt, 1.0 + static_cast<double>(seed % 3));
        const Eigen::Index i = static_cast<Eigen::Index>(seed % 6);
        const double theta = 0.37 * static_cast<double>(seed);
        const RisConfig cfg = RisConfig::single(6, i, theta);

        const ComplexMatrix truth = real.h(i) * std::polar(1.0, theta) * real.g(i);
        const NoisyObservation obs = simulate_rx(effective_channel(real, cfg), pilot, 0.0, 0);
        const SubgroupEstimate est = estimate_subgroup(obs, pilot, cfg);

        REQUIRE(est.elements == std::vector<Eigen::Index>{i});
        // product identity
        const ComplexMatrix product = est.h_part * std::polar(1.0, theta) * est.g_part;
        CHECK((product - truth).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, truth.cwiseAbs().maxCoeff()));
        // both quadratic forms carry the same lambda^2
        CHECK(std::abs(est.eigenvalues(0) - est.tx_eigenvalues(0)) <= 1e-9 * est.eigenvalues(0));
        // recovered links are collinear with the true ones
        CHECK(oracle::collinearity(est.h_part.col(0), real.h(i)) == Catch::Approx(1.0).margin(1e-8));
        CHECK(oracle::collinearity(est.g_part.row(0).transpose(), real.g(i).transpose()) ==
              Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("estimate_subgroup - matches the two least-squares problems on rank-one data", "[estimators]")
{
    // h minimizing ||Y Y^H - h h^H||_F and g minimizing ||X Y^H Y X^H / lambda^2 - g^H g||_F are the dominant
    // singular pair of Y X^H (unit power). Power iteration provides it independently of the EVD path.
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        const ChannelRealization real = draw_channels(4, 3, 2, seed);
        const PilotBlock pilot = build_pilot(4, 1.0);
        const RisConfig cfg = RisConfig::single(2, 1);
        const NoisyObservation obs = simulate_rx(effective_channel(real, cfg), pilot, 0.0, 0);
        const SubgroupEstimate est = estimate_subgroup(obs, pilot, cfg);

        const oracle::Triplet t = oracle::dominant_triplet(obs.Y * pilot.X.adjoint());
        CHECK(std::abs(est.eigenvalues(0) - t.sigma) <= 1e-8 * t.sigma);
        CHECK(oracle::collinearity(est.h_part.col(0), t.u) == Catch::Approx(1.0).margin(1e-8));
        CHECK(oracle::collinearity(est.g_part.row(0).adjoint(), t.v) == Catch::Approx(1.0).margin(1e-8));
        CHECK(relative_error(est.h_part * est.g_part, oracle::dyad(t)) <= 1e-8);

        const ComplexMatrix A = obs.Y * obs.Y.adjoint();
        CHECK((A - est.h_part * est.h_part.adjoint()).norm() <= 1e-8 * A.norm());
    }
}

TEST_CASE("estimate_subgroup - full group reproduces Y X^H / p", "[estimators]")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed)
    {
        const int nt = 2 + static_cast<int>(seed % 4);
        const int nr = 2 + static_cast<int>((seed / 4) % 4);
        const int k = std::min(nt, nr);
        const ChannelRealization real = draw_channels(nt, nr, 2 * k, seed);
        const PilotBlock pilot = build_pilot(nt, 2.5);
        const SubgroupPlan plan = stride_plan(2 * k, k);
        const auto schedule = ris_schedule(plan, seed, true);
        const RisConfig &cfg = schedule.front();

        const NoisyObservation obs = simulate_rx(effective_channel(real, cfg), pilot, 0.0, 0);
        const SubgroupEstimate est = estimate_subgroup(obs, pilot, cfg);
        const ComplexMatrix Z = obs.Y * pilot.X.adjoint() / pilot.power;

        CHECK(relative_error(group_product(est, cfg), Z) <= 1e-9);
        CHECK(relative_error(group_product(est, cfg), truncated(Z, k)) <= 1e-9);
        const RealVector sv = svd(Z).singular_values;
        CHECK((est.eigenvalues - sv.head(k)).norm() <= 1e-9 * sv(0));
    }
}

TEST_CASE("estimate_subgroup - noisy blocks give the best rank-k fit", "[estimators]")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed)
    {
        const ChannelRealization real = draw_channels(6, 5, 3, seed);
        const PilotBlock pilot = build_pilot(6, 1.0);
        const RisConfig cfg = RisConfig::all_on(3, 0.2);
        const NoisyObservation obs = simulate_rx(effective_channel(real, cfg), pilot, 0.1, seed);
        const SubgroupEstimate est = estimate_subgroup(obs, pilot, cfg);

        const ComplexMatrix Z = obs.Y * pilot.X.adjoint();
        CHECK(relative_error(group_product(est, cfg), truncated(Z, 3)) <= 1e-8);
        for (Eigen::Index m = 1; m < 3; ++m)
            CHECK(est.eigenvalues(m - 1) >= est.eigenvalues(m));
        CHECK((est.eigenvalues.array() >= 0.0).all());
    }
}

TEST_CASE("estimate_subgroup - tied eigenvalues are paired through Y X^H", "[estimators]")
{
    // Z = [[0, 1], [1, 0]]: both quadratic forms are the identity, so rank order alone would pair e1 with e1
    ComplexMatrix Ht(2, 2);
    Ht << 0.0, 1.0, 1.0, 0.0;
    const PilotBlock pilot = build_pilot(2, 1.0);
    const RisConfig cfg = RisConfig::all_on(2);
    const NoisyObservation obs = simulate_rx(Ht, pilot, 0.0, 0);
    const SubgroupEstimate est = estimate_subgroup(obs, pilot, cfg);
    CHECK(relative_error(group_product(est, cfg), Ht) <= 1e-12);
}

TEST_CASE("estimate_subgroup - errors", "[estimators]")
{
    const ChannelRealization real = draw_channels(2, 3, 4, 3);
    const PilotBlock pilot = build_pilot(2, 1.0);
    const NoisyObservation obs = simulate_rx(effective_channel(real, RisConfig::all_on(4)), pilot, 0.0, 0);

    CHECK_THROWS_AS(estimate_subgroup(obs, pilot, RisConfig::all_on(4)), FeasibilityError);
    CHECK_THROWS_AS(estimate_subgroup(obs, pilot, RisConfig::all_off(4)), ArgumentError);
    CHECK_THROWS_AS(estimate_subgroup(obs, build_pilot(3, 1.0), RisConfig::single(4, 0)), DimensionError);

    PilotBlock skewed = pilot;
    skewed.X(0, 1) *= 3.0;
    CHECK_THROWS_AS(estimate_subgroup(obs, skewed, RisConfig::single(4, 0)), ContractError);
}

TEST_CASE("estimate_separate - noise-free exactness across dimensions", "[estimators]")
{
    std::uint64_t seed = 0;
    for (int nt : {2, 4, 8})
        for (int nr : {2, 4, 8})
            for (int n : {1, 4, 16, 32})
                for (bool random_phases : {false, true})
                {
                    ++seed;
                    const ChannelRealization real = draw_channels(nt, nr, n, seed);
                    const PilotBlock pilot = build_pilot(nt, 1.0);
                    const SubgroupPlan plan = subgroup_plan(n, nt, nr);
                    const auto schedule = ris_schedule(plan, seed, random_phases);
                    const SeparateEstimate est = estimate_separate(observe(real, schedule, pilot, 0.0, seed), pilot, plan);

                    const ComplexMatrix truth = effective_channel(real, merge_configs(schedule));
                    CHECK(relative_error(est.H_T_hat, truth) <= 1e-9);
                    CHECK(est.slots_used == nt * plan.group_count());
                    CHECK(static_cast<Eigen::Index>(est.per_group_eigenvalues.size()) == plan.group_count());
                    for (const auto &ev : est.per_group_eigenvalues)
                    {
                        CHECK((ev.array() >= 0.0).all());
                        for (Eigen::Index m = 1; m < ev.size(); ++m)
                            CHECK(ev(m - 1) >= ev(m));
                    }
                }
}

TEST_CASE("estimate_separate - reference scenario", "[estimators]")
{
    const ChannelRealization real = draw_channels(4, 4, 16, 2024);
    const PilotBlock pilot = build_pilot(4, 1.0);
    const SubgroupPlan plan = subgroup_plan(16, 4, 4);
    const auto schedule = ris_schedule(plan, 0);
    const SeparateEstimate est = estimate_separate(observe(real, schedule, pilot, 0.0, 1), pilot, plan);
    CHECK(relative_error(est.H_T_hat, effective_channel(real, RisConfig::all_on(16))) <= 1e-9);
    CHECK(est.slots_used == 16);
    CHECK(!est.degraded);

    // H_T_hat is the per-group sum of the scattered factors
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (const auto &cfg : schedule)
        sum += reconstruct(est.H_hat, cfg, est.G_hat);
    CHECK((sum - est.H_T_hat).norm() == 0.0);
}

TEST_CASE("estimate_separate - single element reduces to estimate_subgroup", "[estimators]")
{
    const ChannelRealization real = draw_channels(3, 2, 1, 8);
    const PilotBlock pilot = build_pilot(3, 1.0);
    const SubgroupPlan plan = subgroup_plan(1, 3, 2);
    const auto schedule = ris_schedule(plan, 0);
    const auto blocks = observe(real, schedule, pilot, 0.01, 3);
    const SeparateEstimate sep = estimate_separate(blocks, pilot, plan);
    const SubgroupEstimate sub = estimate_subgroup(blocks[0].observation, pilot, blocks[0].config);
    CHECK(sep.H_hat == sub.h_part);
    CHECK(sep.G_hat == sub.g_part);
    CHECK(sep.slots_used == 3);
}

TEST_CASE("estimate_separate - argument errors", "[estimators]")
{
    const ChannelRealization real = draw_channels(2, 2, 4, 8);
    const PilotBlock pilot = build_pilot(2, 1.0);
    const SubgroupPlan plan = subgroup_plan(4, 2, 2);
    const auto schedule = ris_schedule(plan, 0);
    auto blocks = observe(real, schedule, pilot, 0.0, 3);

    auto missing = blocks;
    missing.pop_back();
    CHECK_THROWS_AS(estimate_separate(missing, pilot, plan), ArgumentError);

    auto swapped = blocks;
    std::swap(swapped[0], swapped[1]);
    CHECK_THROWS_AS(estimate_separate(swapped, pilot, plan), ArgumentError);
}

TEST_CASE("estimate_effective_ls", "[estimators]")
{
    const ChannelRealization real = draw_channels(4, 3, 6, 4);
    const ComplexMatrix Ht = effective_channel(real, RisConfig::all_on(6));

    SECTION("noise-free inversion")
    {
        const PilotBlock p1 = build_pilot(4, 1.0);
        const PilotBlock p4 = build_pilot(4, 4.0);
        const ComplexMatrix e1 = estimate_effective_ls(simulate_rx(Ht, p1, 0.0, 0), p1);
        const ComplexMatrix e4 = estimate_effective_ls(simulate_rx(Ht, p4, 0.0, 0), p4);
        CHECK((e1 - Ht).cwiseAbs().maxCoeff() <= 1e-12 * Ht.cwiseAbs().maxCoeff());
        CHECK((e4 - e1).cwiseAbs().maxCoeff() <= 1e-12 * Ht.cwiseAbs().maxCoeff());
    }

    SECTION("error energy Nt Nr sigma2 / p over 1e4 trials")
    {
        const double sigma2 = 0.5, power = 2.0;
        const PilotBlock pilot = build_pilot(4, power);
        double energy = 0.0;
        const int trials = 10000;
        for (int t = 0; t < trials; ++t)
        {
            const NoisyObservation obs = simulate_rx(Ht, pilot, sigma2, static_cast<std::uint64_t>(t));
            energy += (estimate_effective_ls(obs, pilot) - Ht).squaredNorm();
        }
        const double expected = 4.0 * 3.0 * sigma2 / power;
        CHECK(energy / trials == Catch::Approx(expected).epsilon(0.10));
    }

    SECTION("shape mismatch")
    {
        const PilotBlock pilot = build_pilot(4, 1.0);
        NoisyObservation obs = simulate_rx(Ht, pilot, 0.0, 0);
        CHECK_THROWS_AS(estimate_effective_ls(obs, build_pilot(2, 1.0)), DimensionError);
    }
}

TEST_CASE("estimate_enhanced - feasible regime recovers the cascade", "[estimators]")
{
    struct Dims
    {
        int nt, nr, n;
    };
    std::uint64_t seed = 50;
    for (Dims d : {Dims{2, 4, 4}, Dims{2, 4, 3}, Dims{3, 6, 5}, Dims{4, 4, 4}, Dims{8, 4, 4}, Dims{1, 3, 2}})
        for (int rep = 0; rep < 10; ++rep)
        {
            ++seed;
            const ChannelRealization real = draw_channels(d.nt, d.nr, d.n, seed);
            const PilotBlock pilot = build_pilot(d.nt, 1.0);
            const SubgroupPlan plan = subgroup_plan(d.n, d.nt, d.nr);
            const auto schedule = ris_schedule(plan, seed, rep % 2 == 1);
            const RisConfig cfg_all = merge_configs(schedule);
            const ComplexMatrix truth = effective_channel(real, cfg_all);
            const NoisyObservation all_on = simulate_rx(truth, pilot, 0.0, 0);

            const SeparateEstimate est =
                estimate_enhanced(observe(real, schedule, pilot, 0.0, seed), all_on, pilot, plan, cfg_all);
            CHECK(!est.degraded);
            CHECK(relative_error(reconstruct(est.H_hat, cfg_all, est.G_hat), est.H_T_hat) <= 1e-8);
            CHECK(relative_error(est.H_T_hat, truth) <= 1e-12);
            CHECK(est.slots_used == d.nt * (plan.group_count() + 1));
        }
}

TEST_CASE("estimate_enhanced - more elements than receive antennas is degraded, not fatal", "[estimators]")
{
    const ChannelRealization real = draw_channels(4, 4, 16, 77);
    const PilotBlock pilot = build_pilot(4, 1.0);
    const SubgroupPlan plan = subgroup_plan(16, 4, 4);
    const auto schedule = ris_schedule(plan, 0);
    const RisConfig cfg_all = merge_configs(schedule);
    const NoisyObservation all_on = simulate_rx(effective_channel(real, cfg_all), pilot, 0.0, 0);

    SeparateEstimate est;
    REQUIRE_NOTHROW(est = estimate_enhanced(observe(real, schedule, pilot, 0.0, 1), all_on, pilot, plan, cfg_all));
    CHECK(est.degraded);
    CHECK(est.G_hat.allFinite());
}

TEST_CASE("estimate_enhanced - literal group size and overhead", "[estimators]")
{
    const int nt = 16, nr = 4, n = 256;
    const ChannelRealization real = draw_channels(nt, nr, n, 5);
    const PilotBlock pilot = build_pilot(nt, 1.0);
    const SubgroupPlan plan = stride_plan(n, std::max(nt, nr));
    REQUIRE(plan.group_count() == 16);
    const auto schedule = ris_schedule(plan, 0);
    const RisConfig cfg_all = merge_configs(schedule);
    const NoisyObservation all_on = simulate_rx(effective_channel(real, cfg_all), pilot, 0.0, 0);
    const auto blocks = observe(real, schedule, pilot, 0.0, 1);

    CHECK_THROWS_AS(estimate_enhanced(blocks, all_on, pilot, plan, cfg_all), FeasibilityError);

    EnhancedOptions opts;
    opts.allow_oversized_groups = true;
    const SeparateEstimate est = estimate_enhanced(blocks, all_on, pilot, plan, cfg_all, opts);
    CHECK(est.slots_used == 272);
    CHECK(est.degraded);
}

TEST_CASE("estimate_enhanced - single element matches estimate_separate", "[estimators]")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const int nt = 1 + static_cast<int>(seed % 4), nr = 1 + static_cast<int>((seed / 4) % 4);
        const ChannelRealization real = draw_channels(nt, nr, 1, seed);
        const PilotBlock pilot = build_pilot(nt, 1.0);
        const SubgroupPlan plan = subgroup_plan(1, nt, nr);
        const std::vector<RisConfig> schedule{RisConfig::single(1, 0, 0.9)};
        const auto blocks = observe(real, schedule, pilot, 0.0, seed);

        const SeparateEstimate sep = estimate_separate(blocks, pilot, plan);
        const SeparateEstimate enh = estimate_enhanced(blocks, blocks[0].observation, pilot, plan, schedule[0]);
        const double scale = std::max(1.0, sep.G_hat.norm());
        CHECK((enh.H_hat - sep.H_hat).norm() <= 1e-8 * std::max(1.0, sep.H_hat.norm()));
        CHECK((enh.G_hat - sep.G_hat).norm() <= 1e-8 * scale);
    }
}

TEST_CASE("estimate_enhanced - all-on configuration required", "[estimators]")
{
    const ChannelRealization real = draw_channels(2, 4, 4, 1);
    const PilotBlock pilot = build_pilot(2, 1.0);
    const SubgroupPlan plan = subgroup_plan(4, 2, 4);
    const auto schedule = ris_schedule(plan, 0);
    RisConfig partial = merge_configs(schedule);
    partial.active[3] = false;
    const NoisyObservation all_on = simulate_rx(effective_channel(real, partial), pilot, 0.0, 0);
    CHECK_THROWS_AS(estimate_enhanced(observe(real, schedule, pilot, 0.0, 1), all_on, pilot, plan, partial),
                    ArgumentError);
}

TEST_CASE("lskrf_baseline - noise-free recovery", "[estimators]")
{
    std::uint64_t seed = 300;
    for (int nt : {1, 2, 4})
        for (int nr : {1, 3, 4})
            for (int n : {1, 2, 5, 8})
            {
                ++seed;
                const ChannelRealization real = draw_channels(nt, nr, n, seed);
                const PilotBlock pilot = build_pilot(nt, 1.5);
                const auto schedule = dft_schedule(n);
                std::vector<NoisyObservation> blocks;
                for (const auto &cfg : schedule)
                    blocks.push_back(simulate_rx(effective_channel(real, cfg), pilot, 0.0, 0));

                const SeparateEstimate est = lskrf_baseline(blocks, dft_schedule_matrix(n), pilot);
                CHECK(relative_error(est.H_T_hat, effective_channel(real, RisConfig::all_on(n))) <= 1e-8);
                CHECK(est.slots_used == nt * n);
                for (Eigen::Index i = 0; i < n; ++i)
                {
                    const ComplexMatrix dyad = est.H_hat.col(i) * est.G_hat.row(i);
                    const ComplexMatrix truth = real.h(i) * real.g(i);
                    CHECK((dyad - truth).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, truth.cwiseAbs().maxCoeff()));
                }
            }
}

TEST_CASE("lskrf_baseline - overhead and errors", "[estimators]")
{
    const int nt = 16, nr = 4, n = 256;
    const ChannelRealization real = draw_channels(nt, nr, n, 1);
    const PilotBlock pilot = build_pilot(nt, 1.0);
    const auto schedule = dft_schedule(n);
    std::vector<NoisyObservation> blocks;
    for (const auto &cfg : schedule)
        blocks.push_back(simulate_rx(effective_channel(real, cfg), pilot, 0.0, 0));
    const SeparateEstimate est = lskrf_baseline(blocks, dft_schedule_matrix(n), pilot);
    CHECK(est.slots_used == 4096);
    CHECK(relative_error(est.H_T_hat, effective_channel(real, RisConfig::all_on(n))) <= 1e-8);

    std::vector<NoisyObservation> few(blocks.begin(), blocks.begin() + 2);
    ComplexMatrix singular = ComplexMatrix::Ones(2, 2);
    CHECK_THROWS_AS(lskrf_baseline(few, singular, pilot), ArgumentError);
    CHECK_THROWS_AS(lskrf_baseline(few, dft_schedule_matrix(3), pilot), ArgumentError);
}
