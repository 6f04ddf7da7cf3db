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

#include "riskey/experiments.hpp"
#include "riskey/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace riskey
{

inline constexpr const char *record_csv_header =
    "nt,nr,n,snr_db,estimator,trials,slots,nmse_total,nmse_h_aligned,nmse_g_aligned,wall_s";

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

// Each `preamble` line is written as `# line` before the header; empty optionals become empty fields.
void write_records_csv(std::ostream &out, const std::vector<ExperimentRecord> &records,
                       const std::vector<std::string> &preamble = {});

// Writes the CSV to `path` ("-" is standard output). With `svg` set, a line chart is written
// next to it with the extension replaced by .svg. Throws std::runtime_error on I/O failure.
void write_records(const std::vector<ExperimentRecord> &records, const std::filesystem::path &path,
                   const std::vector<std::string> &preamble = {}, bool svg = false);

// Inverse of write_records_csv. Comment lines are skipped. Records come back feasible unless
// nmse_total is empty.
std::vector<ExperimentRecord> read_records_csv(std::istream &in);

// NMSE versus SNR, log-scaled NMSE axis, one polyline per estimator.
void write_records_svg(std::ostream &out, const std::vector<ExperimentRecord> &records);

void write_overhead_csv(std::ostream &out, const std::vector<OverheadReport> &rows);

} // namespace riskey
