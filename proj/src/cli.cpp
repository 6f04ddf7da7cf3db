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

#include "riskey/cli.hpp"
#include "riskey/channel.hpp"
#include "riskey/config.hpp"
#include "riskey/errors.hpp"
#include "riskey/estimators.hpp"
#include "riskey/experiments.hpp"
#include "riskey/metrics.hpp"
#include "riskey/pilots.hpp"
#include "riskey/random.hpp"
#include "riskey/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

namespace riskey
{

namespace
{

struct SweepArgs
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<unsigned> threads;
    std::string out = "-";
    bool svg = false;
    bool timing = false;
};

struct OverheadArgs
{
    int nt = 0, nr = 0, n = 0;
    std::optional<std::string> out;
};

struct DemoArgs
{
    int nt = 0, nr = 0, n = 0;
    double snr = 0.0;
    std::uint64_t seed = 1;
    std::optional<int> group_size;
};

int run_sweep_command(const SweepArgs &args, std::ostream &out, std::ostream &err)
{
    ExperimentConfig cfg;
    try
    {
        cfg = load_config(args.config);
        if (args.seed)
            cfg.master_seed = *args.seed;
        if (args.trials)
            cfg.trials = *args.trials;
        if (args.threads)
            cfg.threads = *args.threads;
        cfg.measure_time = args.timing;
        cfg.validate();
    }
    catch (const ArgumentError &e)
    {
        err << "riskey sweep: " << e.what() << '\n';
        return exit_config_error;
    }
    if (args.svg && args.out == "-")
    {
        err << "riskey sweep: --svg needs --out FILE\n";
        return exit_config_error;
    }

    const auto records = run_sweep(cfg);
    std::vector<std::string> preamble = config_echo(cfg);
    preamble.push_back("snr_db is pilot_power / noise_variance per slot, channel entries have unit variance");

    try
    {
        if (args.out == "-")
            write_records_csv(out, records, preamble);
        else
            write_records(records, args.out, preamble, args.svg);
    }
    catch (const std::runtime_error &e)
    {
        err << "riskey sweep: " << e.what() << '\n';
        return exit_config_error;
    }
    return exit_ok;
}

int run_overhead_command(const OverheadArgs &args, std::ostream &out, std::ostream &err)
{
    std::vector<OverheadReport> rows;
    try
    {
        for (Scheme s : {Scheme::proposed, Scheme::enhanced, Scheme::lskrf})
            rows.push_back(overhead(s, args.nt, args.nr, args.n));
    }
    catch (const ArgumentError &e)
    {
        err << "riskey overhead: " << e.what() << '\n';
        return exit_config_error;
    }

    if (args.out && *args.out == "-")
    {
        write_overhead_csv(out, rows);
        return exit_ok;
    }

    out << "Nt=" << args.nt << " Nr=" << args.nr << " N=" << args.n << '\n';
    out << std::left << std::setw(10) << "scheme" << std::right << std::setw(10) << "slots" << std::setw(14)
        << "reduction" << '\n';
    for (const auto &r : rows)
    {
        char pct[32];
        std::snprintf(pct, sizeof pct, "%.2f%%", 100.0 * r.reduction_vs_lskrf);
        out << std::left << std::setw(10) << to_string(r.scheme) << std::right << std::setw(10) << r.slots
            << std::setw(14) << pct << '\n';
    }

    if (args.out)
    {
        std::ofstream file(*args.out);
        if (!file)
        {
            err << "riskey overhead: cannot open '" << *args.out << "' for writing\n";
            return exit_config_error;
        }
        write_overhead_csv(file, rows);
        if (!file.flush())
        {
            err << "riskey overhead: failed writing '" << *args.out << "'\n";
            return exit_config_error;
        }
    }
    return exit_ok;
}

int run_demo_command(const DemoArgs &args, std::ostream &out, std::ostream &err)
{
    try
    {
        const ChannelRealization real = draw_channels(args.nt, args.nr, args.n, mix64(args.seed, 1));
        const PilotBlock pilot = build_pilot(args.nt, 1.0);
        const SubgroupPlan plan =
            args.group_size ? stride_plan(args.n, *args.group_size) : subgroup_plan(args.n, args.nt, args.nr);
        const auto schedule = ris_schedule(plan, mix64(args.seed, 2));
        const ComplexMatrix truth = effective_channel(real, merge_configs(schedule));

        auto estimate = [&](double sigma2) {
            std::vector<GroupObservation> blocks;
            for (std::size_t g = 0; g < schedule.size(); ++g)
                blocks.push_back({simulate_rx(effective_channel(real, schedule[g]), pilot, sigma2,
                                              mix64(args.seed, 1000 + g)),
                                  schedule[g]});
            return estimate_separate(blocks, pilot, plan);
        };

        out << "scenario: Nt=" << args.nt << " Nr=" << args.nr << " N=" << args.n << " groups=" << plan.group_count()
            << " (size <= " << plan.subgroup_size << ")\n";

        const SeparateEstimate clean = estimate(0.0);
        const double rel = relative_error(clean.H_T_hat, truth);
        out << "noise-free reconstruction: relative error " << std::scientific << std::setprecision(3) << rel
            << (rel <= 1e-9 ? " (ok, <= 1e-9)" : " (FAILED, > 1e-9)") << '\n';

        const SeparateEstimate noisy = estimate(noise_variance(1.0, args.snr));
        out << "snr " << std::defaultfloat << args.snr << " dB, " << noisy.slots_used << " slots\n";
        out << std::scientific << std::setprecision(4);
        out << "  nmse total channel        " << nmse(noisy.H_T_hat, truth) << '\n';
        out << "  nmse RIS-Rx (aligned)     " << nmse_columns_aligned(noisy.H_hat, real.H) << '\n';
        out << "  nmse Tx-RIS (aligned)     " << nmse_rows_aligned(noisy.G_hat, real.G) << '\n';
        out << std::defaultfloat;
    }
    catch (const FeasibilityError &e)
    {
        err << "riskey demo: infeasible scenario: " << e.what() << '\n';
        return exit_infeasible;
    }
    catch (const ArgumentError &e)
    {
        err << "riskey demo: " << e.what() << '\n';
        return exit_config_error;
    }
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Separate channel estimation for RIS-assisted MIMO links", "riskey"};
    app.require_subcommand(1, 1);

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Monte Carlo NMSE sweep driven by a config file");
    sweep_cmd->add_option("--config", sweep.config, "key = value config file")->required();
    sweep_cmd->add_option("--seed", sweep.seed, "override master_seed");
    sweep_cmd->add_option("--trials", sweep.trials, "override trials");
    sweep_cmd->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");
    sweep_cmd->add_option("--out", sweep.out, "CSV path, '-' for standard output")->capture_default_str();
    sweep_cmd->add_flag("--svg", sweep.svg, "also write an SVG chart next to the CSV");
    sweep_cmd->add_flag("--timing", sweep.timing, "fill the wall_s column (breaks byte-identical reruns)");

    OverheadArgs ovh;
    auto *ovh_cmd = app.add_subcommand("overhead", "training-slot overhead of each scheme");
    ovh_cmd->add_option("--nt", ovh.nt, "transmit antennas")->required();
    ovh_cmd->add_option("--nr", ovh.nr, "receive antennas")->required();
    ovh_cmd->add_option("--n", ovh.n, "RIS elements")->required();
    ovh_cmd->add_option("--out", ovh.out, "CSV path, '-' for standard output");

    DemoArgs demo;
    auto *demo_cmd = app.add_subcommand("demo", "single-scenario walk-through of the subgroup estimator");
    demo_cmd->add_option("--nt", demo.nt, "transmit antennas")->required();
    demo_cmd->add_option("--nr", demo.nr, "receive antennas")->required();
    demo_cmd->add_option("--n", demo.n, "RIS elements")->required();
    demo_cmd->add_option("--snr", demo.snr, "SNR in dB")->required();
    demo_cmd->add_option("--seed", demo.seed, "random seed")->capture_default_str();
    demo_cmd->add_option("--group-size", demo.group_size, "elements per subgroup (default min(Nt, Nr))");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    if (*sweep_cmd)
        return run_sweep_command(sweep, out, err);
    if (*ovh_cmd)
        return run_overhead_command(ovh, out, err);
    return run_demo_command(demo, out, err);
}

} // namespace riskey
