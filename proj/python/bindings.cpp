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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riskey/channel.hpp"
#include "riskey/config.hpp"
#include "riskey/errors.hpp"
#include "riskey/estimators.hpp"
#include "riskey/experiments.hpp"
#include "riskey/linalg.hpp"
#include "riskey/metrics.hpp"
#include "riskey/pilots.hpp"
#include "riskey/report.hpp"

#include <sstream>

namespace py = pybind11;
using namespace riskey;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Keyhole-model separate channel estimation for RIS-assisted MIMO links";

    auto argument_error = py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<FeasibilityError>(m, "FeasibilityError", argument_error.ptr());

    // ---- linalg --------------------------------------------------------------
    py::class_<EvdResult>(m, "EvdResult")
        .def_readonly("eigenvalues", &EvdResult::eigenvalues)
        .def_readonly("eigenvectors", &EvdResult::eigenvectors);
    py::class_<SvdResult>(m, "SvdResult")
        .def_readonly("U", &SvdResult::U)
        .def_readonly("singular_values", &SvdResult::singular_values)
        .def_readonly("V", &SvdResult::V);

    m.def("hermitian_evd", &hermitian_evd, py::arg("A"));
    m.def("svd", &svd, py::arg("A"));
    m.def("numerical_rank", &numerical_rank, py::arg("A"), py::arg("rel_tol") = default_rank_tol);

    // ---- channel -------------------------------------------------------------
    py::class_<ChannelRealization>(m, "ChannelRealization")
        .def_readonly("H", &ChannelRealization::H)
        .def_readonly("G", &ChannelRealization::G)
        .def_property_readonly("nt", &ChannelRealization::nt)
        .def_property_readonly("nr", &ChannelRealization::nr)
        .def_property_readonly("n", &ChannelRealization::n);

    py::class_<RisConfig>(m, "RisConfig")
        .def(py::init([](std::vector<double> phases, std::vector<bool> active) {
                 RisConfig cfg{std::move(phases), std::move(active)};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("phases"), py::arg("active"))
        .def_readwrite("phases", &RisConfig::phases)
        .def_readwrite("active", &RisConfig::active)
        .def_static("all_on", &RisConfig::all_on, py::arg("n"), py::arg("phase") = 0.0)
        .def_static("all_off", &RisConfig::all_off, py::arg("n"))
        .def_static("single", &RisConfig::single, py::arg("n"), py::arg("element"), py::arg("phase") = 0.0)
        .def("active_elements", &RisConfig::active_elements)
        .def("__len__", &RisConfig::size);

    m.def("draw_channels", &draw_channels, py::arg("nt"), py::arg("nr"), py::arg("n"), py::arg("seed"));
    m.def("keyhole_channel", &keyhole_channel, py::arg("h"), py::arg("g"), py::arg("sigma_scs") = 1.0);
    m.def("effective_channel", &effective_channel, py::arg("realization"), py::arg("config"));
    m.def("merge_configs", &merge_configs, py::arg("configs"));

    // ---- pilots --------------------------------------------------------------
    py::class_<PilotBlock>(m, "PilotBlock")
        .def_readonly("X", &PilotBlock::X)
        .def_readonly("power", &PilotBlock::power);
    py::class_<SubgroupPlan>(m, "SubgroupPlan")
        .def_readonly("groups", &SubgroupPlan::groups)
        .def_readonly("subgroup_size", &SubgroupPlan::subgroup_size)
        .def_readonly("n", &SubgroupPlan::n);

    m.def("build_pilot", &build_pilot, py::arg("nt"), py::arg("power") = 1.0);
    m.def("subgroup_plan", &subgroup_plan, py::arg("n"), py::arg("nt"), py::arg("nr"));
    m.def("stride_plan", &stride_plan, py::arg("n"), py::arg("subgroup_size"));
    m.def("ris_schedule", &ris_schedule, py::arg("plan"), py::arg("seed") = 0, py::arg("random_phases") = false);
    m.def("dft_schedule_matrix", &dft_schedule_matrix, py::arg("n"));
    m.def("dft_schedule", &dft_schedule, py::arg("n"));

    // ---- estimators ----------------------------------------------------------
    py::class_<NoisyObservation>(m, "NoisyObservation")
        .def_readonly("Y", &NoisyObservation::Y)
        .def_readonly("noise_variance", &NoisyObservation::noise_variance);
    py::class_<GroupObservation>(m, "GroupObservation")
        .def(py::init<NoisyObservation, RisConfig>(), py::arg("observation"), py::arg("config"))
        .def_readonly("observation", &GroupObservation::observation)
        .def_readonly("config", &GroupObservation::config);
    py::class_<SubgroupEstimate>(m, "SubgroupEstimate")
        .def_readonly("elements", &SubgroupEstimate::elements)
        .def_readonly("h_part", &SubgroupEstimate::h_part)
        .def_readonly("g_part", &SubgroupEstimate::g_part)
        .def_readonly("eigenvalues", &SubgroupEstimate::eigenvalues)
        .def_readonly("tx_eigenvalues", &SubgroupEstimate::tx_eigenvalues);
    py::class_<SeparateEstimate>(m, "SeparateEstimate")
        .def_readonly("H_hat", &SeparateEstimate::H_hat)
        .def_readonly("G_hat", &SeparateEstimate::G_hat)
        .def_readonly("H_T_hat", &SeparateEstimate::H_T_hat)
        .def_readonly("per_group_eigenvalues", &SeparateEstimate::per_group_eigenvalues)
        .def_readonly("slots_used", &SeparateEstimate::slots_used)
        .def_readonly("degraded", &SeparateEstimate::degraded);

    m.def("simulate_rx", &simulate_rx, py::arg("H_T"), py::arg("pilot"), py::arg("sigma2"), py::arg("seed"));
    m.def("estimate_subgroup", &estimate_subgroup, py::arg("observation"), py::arg("pilot"), py::arg("config"));
    m.def("estimate_separate", &estimate_separate, py::arg("blocks"), py::arg("pilot"), py::arg("plan"));
    m.def("estimate_effective_ls", &estimate_effective_ls, py::arg("observation"), py::arg("pilot"));
    m.def(
        "estimate_enhanced",
        [](const std::vector<GroupObservation> &blocks, const NoisyObservation &all_on, const PilotBlock &pilot,
           const SubgroupPlan &plan, const RisConfig &cfg_all, bool allow_oversized_groups) {
            EnhancedOptions opts;
            opts.allow_oversized_groups = allow_oversized_groups;
            return estimate_enhanced(blocks, all_on, pilot, plan, cfg_all, opts);
        },
        py::arg("blocks"), py::arg("all_on"), py::arg("pilot"), py::arg("plan"), py::arg("cfg_all"),
        py::arg("allow_oversized_groups") = false);
    m.def(
        "lskrf_baseline",
        [](const std::vector<NoisyObservation> &blocks, const ComplexMatrix &schedule, const PilotBlock &pilot) {
            return lskrf_baseline(blocks, schedule, pilot);
        },
        py::arg("blocks"), py::arg("schedule"), py::arg("pilot"));
    m.def("reconstruct", &reconstruct, py::arg("H_hat"), py::arg("config"), py::arg("G_hat"));

    // ---- metrics -------------------------------------------------------------
    m.def("nmse", &nmse, py::arg("A_hat"), py::arg("A"));
    m.def("nmse_phase_aligned", &nmse_phase_aligned, py::arg("A_hat"), py::arg("A"));
    m.def("nmse_columns_aligned", &nmse_columns_aligned, py::arg("A_hat"), py::arg("A"));
    m.def("nmse_rows_aligned", &nmse_rows_aligned, py::arg("A_hat"), py::arg("A"));

    py::class_<OverheadReport>(m, "OverheadReport")
        .def_property_readonly("scheme", [](const OverheadReport &r) { return std::string(to_string(r.scheme)); })
        .def_readonly("nt", &OverheadReport::nt)
        .def_readonly("nr", &OverheadReport::nr)
        .def_readonly("n", &OverheadReport::n)
        .def_readonly("slots", &OverheadReport::slots)
        .def_readonly("reduction_vs_lskrf", &OverheadReport::reduction_vs_lskrf);
    m.def(
        "overhead", [](const std::string &scheme, int nt, int nr, int n) { return overhead(parse_scheme(scheme), nt, nr, n); },
        py::arg("scheme"), py::arg("nt"), py::arg("nr"), py::arg("n"));

    // ---- experiments ---------------------------------------------------------
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("nt", &ExperimentConfig::nt)
        .def_readwrite("nr", &ExperimentConfig::nr)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("snr_db_list", &ExperimentConfig::snr_db_list)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_property(
            "estimators",
            [](const ExperimentConfig &c) {
                std::vector<std::string> names;
                for (auto e : c.estimators)
                    names.emplace_back(to_string(e));
                return names;
            },
            [](ExperimentConfig &c, const std::vector<std::string> &names) {
                c.estimators.clear();
                for (const auto &name : names)
                    c.estimators.push_back(parse_estimator(name));
            })
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("pilot_power", &ExperimentConfig::pilot_power)
        .def_readwrite("random_phases", &ExperimentConfig::random_phases)
        .def_readwrite("enhanced_literal_groups", &ExperimentConfig::enhanced_literal_groups)
        .def_readwrite("threads", &ExperimentConfig::threads);

    py::class_<ExperimentRecord>(m, "ExperimentRecord")
        .def_readonly("nt", &ExperimentRecord::nt)
        .def_readonly("nr", &ExperimentRecord::nr)
        .def_readonly("n", &ExperimentRecord::n)
        .def_readonly("snr_db", &ExperimentRecord::snr_db)
        .def_property_readonly("estimator",
                               [](const ExperimentRecord &r) { return std::string(to_string(r.estimator)); })
        .def_readonly("trials", &ExperimentRecord::trials)
        .def_readonly("slots", &ExperimentRecord::slots)
        .def_readonly("feasible", &ExperimentRecord::feasible)
        .def_readonly("degraded_trials", &ExperimentRecord::degraded_trials)
        .def_readonly("nmse_total", &ExperimentRecord::nmse_total)
        .def_readonly("nmse_h_aligned", &ExperimentRecord::nmse_h_aligned)
        .def_readonly("nmse_g_aligned", &ExperimentRecord::nmse_g_aligned)
        .def_readonly("wall_s", &ExperimentRecord::wall_s);

    m.def("run_sweep", &run_sweep, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "records_to_csv",
        [](const std::vector<ExperimentRecord> &records) {
            std::ostringstream ss;
            write_records_csv(ss, records);
            return ss.str();
        },
        py::arg("records"));
    m.def(
        "parse_config",
        [](const std::string &text) {
            std::istringstream in(text);
            return parse_config(in);
        },
        py::arg("text"));
}
