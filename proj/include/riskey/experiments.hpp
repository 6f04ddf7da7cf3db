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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace riskey
{

enum class Estimator
{
    proposed,
    enhanced,
    lskrf,
    effective_ls
};

std::string_view to_string(Estimator estimator);
Estimator parse_estimator(std::string_view name);

struct ExperimentConfig
{
    int nt = 4;
    int nr = 4;
    int n = 16;
    std::vector<double> snr_db_list{0.0, 10.0, 20.0, 30.0};
    int trials = 1000;
    std::vector<Estimator> estimators{Estimator::proposed};
    std::uint64_t master_seed = 1;
    double pilot_power = 1.0;

    // Uniform random RIS phases during the subgroup blocks instead of zeros.
    bool random_phases = false;
    // Enhanced variant groups max(Nt, Nr) elements per block instead of min(Nt, Nr).
    bool enhanced_literal_groups = false;
    // Record wall time per record. Off by default so repeated sweeps stay byte-identical.
    bool measure_time = false;
    // Worker threads for the trial loop; 0 picks the hardware concurrency.
    unsigned threads = 0;

    // Throws ArgumentError naming the offending field.
    void validate() const;
};

struct TrialResult
{
    double nmse_total = 0.0;
    std::optional<double> nmse_h_aligned;
    std::optional<double> nmse_g_aligned;
    std::int64_t slots = 0;
    bool degraded = false;
};

// Aggregate of `trials` independent runs of one estimator at one SNR.
// NMSE fields are empty when the estimator does not produce them or the scenario is infeasible.
struct ExperimentRecord
{
    int nt = 0;
    int nr = 0;
    int n = 0;
    double snr_db = 0.0;
    Estimator estimator = Estimator::proposed;
    int trials = 0;
    std::int64_t slots = 0;
    bool feasible = true;
    int degraded_trials = 0;
    std::optional<double> nmse_total;
    std::optional<double> nmse_h_aligned;
    std::optional<double> nmse_g_aligned;
    double wall_s = 0.0;

    bool operator==(const ExperimentRecord &) const = default;
};

// Noise variance for a given SNR: pilot_power / 10^(snr_db / 10).
double noise_variance(double pilot_power, double snr_db);

// Seed of one trial. Depends on the SNR value, not its position in the list.
std::uint64_t trial_seed(std::uint64_t master_seed, double snr_db, Estimator estimator, int trial);

// One channel draw, training pass and estimate. Pure function of its arguments.
TrialResult run_trial(const ExperimentConfig &cfg, Estimator estimator, double snr_db, std::uint64_t seed);

// One record per (snr, estimator), SNR-major in the configured order. Trials may run on
// several threads; their results are folded in trial-index order.
std::vector<ExperimentRecord> run_sweep(const ExperimentConfig &cfg);

} // namespace riskey
