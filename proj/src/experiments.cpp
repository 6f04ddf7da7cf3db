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

#include "riskey/experiments.hpp"
#include "riskey/channel.hpp"
#include "riskey/errors.hpp"
#include "riskey/estimators.hpp"
#include "riskey/metrics.hpp"
#include "riskey/pilots.hpp"
#include "riskey/random.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace riskey
{

namespace
{

enum SeedStream : std::uint64_t
{
    channel_stream = 1,
    schedule_stream = 2,
    noise_stream = 1000,
};

std::uint64_t noise_seed(std::uint64_t seed, std::size_t block) { return mix64(seed, noise_stream + block); }

std::vector<GroupObservation> observe_groups(const ChannelRealization &real, const std::vector<RisConfig> &schedule,
                                             const PilotBlock &pilot, double sigma2, std::uint64_t seed)
{
    std::vector<GroupObservation> blocks;
    blocks.reserve(schedule.size());
    for (std::size_t g = 0; g < schedule.size(); ++g)
        blocks.push_back({simulate_rx(effective_channel(real, schedule[g]), pilot, sigma2, noise_seed(seed, g)),
                          schedule[g]});
    return blocks;
}

TrialResult score_separate(const SeparateEstimate &est, const ChannelRealization &real, const ComplexMatrix &truth)
{
    TrialResult r;
    r.nmse_total = nmse(est.H_T_hat, truth);
    r.nmse_h_aligned = nmse_columns_aligned(est.H_hat, real.H);
    r.nmse_g_aligned = nmse_rows_aligned(est.G_hat, real.G);
    r.slots = est.slots_used;
    r.degraded = est.degraded;
    return r;
}

} // namespace

std::string_view to_string(Estimator estimator)
{
    switch (estimator)
    {
    case Estimator::proposed:
        return "proposed";
    case Estimator::enhanced:
        return "enhanced";
    case Estimator::lskrf:
        return "lskrf";
    case Estimator::effective_ls:
        return "effective_ls";
    }
    return "unknown";
}

Estimator parse_estimator(std::string_view name)
{
    for (Estimator e : {Estimator::proposed, Estimator::enhanced, Estimator::lskrf, Estimator::effective_ls})
        if (name == to_string(e))
            return e;
    throw ArgumentError("unknown estimator '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const
{
    if (nt < 1)
        throw ArgumentError("nt: must be >= 1");
    if (nr < 1)
        throw ArgumentError("nr: must be >= 1");
    if (n < 1)
        throw ArgumentError("n: must be >= 1");
    if (snr_db_list.empty())
        throw ArgumentError("snr_db: list is empty");
    for (double s : snr_db_list)
        if (!std::isfinite(s))
            throw ArgumentError("snr_db: values must be finite");
    if (trials < 1)
        throw ArgumentError("trials: must be >= 1");
    if (estimators.empty())
        throw ArgumentError("estimators: list is empty");
    if (!(pilot_power > 0.0) || !std::isfinite(pilot_power))
        throw ArgumentError("pilot_power: must be positive");
}

double noise_variance(double pilot_power, double snr_db) { return pilot_power / std::pow(10.0, snr_db / 10.0); }

std::uint64_t trial_seed(std::uint64_t master_seed, double snr_db, Estimator estimator, int trial)
{
    std::uint64_t s = mix64(master_seed, std::bit_cast<std::uint64_t>(snr_db + 0.0));
    s = mix64(s, static_cast<std::uint64_t>(estimator));
    return mix64(s, static_cast<std::uint64_t>(trial));
}

TrialResult run_trial(const ExperimentConfig &cfg, Estimator estimator, double snr_db, std::uint64_t seed)
{
    const ChannelRealization real = draw_channels(cfg.nt, cfg.nr, cfg.n, mix64(seed, channel_stream));
    const PilotBlock pilot = build_pilot(cfg.nt, cfg.pilot_power);
    const double sigma2 = noise_variance(cfg.pilot_power, snr_db);

    switch (estimator)
    {
    case Estimator::proposed:
    {
        const SubgroupPlan plan = subgroup_plan(cfg.n, cfg.nt, cfg.nr);
        const auto schedule = ris_schedule(plan, mix64(seed, schedule_stream), cfg.random_phases);
        const auto blocks = observe_groups(real, schedule, pilot, sigma2, seed);
        const SeparateEstimate est = estimate_separate(blocks, pilot, plan);
        return score_separate(est, real, effective_channel(real, merge_configs(schedule)));
    }
    case Estimator::enhanced:
    {
        const SubgroupPlan plan = cfg.enhanced_literal_groups ? stride_plan(cfg.n, std::max(cfg.nt, cfg.nr))
                                                              : subgroup_plan(cfg.n, cfg.nt, cfg.nr);
        const auto schedule = ris_schedule(plan, mix64(seed, schedule_stream), cfg.random_phases);
        const auto blocks = observe_groups(real, schedule, pilot, sigma2, seed);
        const RisConfig cfg_all = merge_configs(schedule);
        const ComplexMatrix truth = effective_channel(real, cfg_all);
        const NoisyObservation all_on = simulate_rx(truth, pilot, sigma2, noise_seed(seed, schedule.size()));
        EnhancedOptions options;
        options.allow_oversized_groups = cfg.enhanced_literal_groups;
        const SeparateEstimate est = estimate_enhanced(blocks, all_on, pilot, plan, cfg_all, options);
        return score_separate(est, real, truth);
    }
    case Estimator::lskrf:
    {
        const auto schedule = dft_schedule(cfg.n);
        std::vector<NoisyObservation> blocks;
        blocks.reserve(schedule.size());
        for (std::size_t t = 0; t < schedule.size(); ++t)
            blocks.push_back(simulate_rx(effective_channel(real, schedule[t]), pilot, sigma2, noise_seed(seed, t)));
        const RisConfig reference = RisConfig::all_on(cfg.n);
        const SeparateEstimate est = lskrf_baseline(blocks, dft_schedule_matrix(cfg.n), pilot, reference);
        return score_separate(est, real, effective_channel(real, reference));
    }
    case Estimator::effective_ls:
    {
        const ComplexMatrix truth = effective_channel(real, RisConfig::all_on(cfg.n));
        const NoisyObservation obs = simulate_rx(truth, pilot, sigma2, noise_seed(seed, 0));
        TrialResult r;
        r.nmse_total = nmse(estimate_effective_ls(obs, pilot), truth);
        r.slots = cfg.nt;
        return r;
    }
    }
    throw ArgumentError("run_trial: unknown estimator");
}

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig &cfg)
{
    cfg.validate();
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(cfg.threads == 0 ? hw : cfg.threads, static_cast<unsigned>(cfg.trials));

    std::vector<ExperimentRecord> records;
    for (double snr : cfg.snr_db_list)
    {
        for (Estimator estimator : cfg.estimators)
        {
            const auto start = std::chrono::steady_clock::now();

            std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
            std::vector<std::exception_ptr> errors(workers);
            {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back([&, w] {
                        try
                        {
                            for (int t = static_cast<int>(w); t < cfg.trials; t += static_cast<int>(workers))
                                results[static_cast<std::size_t>(t)] =
                                    run_trial(cfg, estimator, snr, trial_seed(cfg.master_seed, snr, estimator, t));
                        }
                        catch (...)
                        {
                            errors[w] = std::current_exception();
                        }
                    });
            }

            ExperimentRecord rec;
            rec.nt = cfg.nt;
            rec.nr = cfg.nr;
            rec.n = cfg.n;
            rec.snr_db = snr;
            rec.estimator = estimator;
            rec.trials = cfg.trials;

            bool infeasible = false;
            for (const auto &err : errors)
            {
                if (!err)
                    continue;
                try
                {
                    std::rethrow_exception(err);
                }
                catch (const FeasibilityError &)
                {
                    infeasible = true;
                }
            }

            if (infeasible)
            {
                rec.feasible = false;
            }
            else
            {
                double total = 0.0, h = 0.0, g = 0.0;
                for (const auto &r : results)
                {
                    total += r.nmse_total;
                    if (r.nmse_h_aligned)
                        h += *r.nmse_h_aligned;
                    if (r.nmse_g_aligned)
                        g += *r.nmse_g_aligned;
                    rec.degraded_trials += r.degraded ? 1 : 0;
                }
                const double count = static_cast<double>(cfg.trials);
                rec.slots = results.front().slots;
                rec.nmse_total = total / count;
                if (results.front().nmse_h_aligned)
                    rec.nmse_h_aligned = h / count;
                if (results.front().nmse_g_aligned)
                    rec.nmse_g_aligned = g / count;
            }

            if (cfg.measure_time)
                rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            records.push_back(rec);
        }
    }
    return records;
}

} // namespace riskey
