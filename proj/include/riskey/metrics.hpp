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
#include <string>
#include <string_view>

namespace riskey
{

// ||A_hat - A||_F^2 / ||A||_F^2. Throws on shape mismatch or zero reference.
double nmse(const ComplexMatrix &A_hat, const ComplexMatrix &A);

// NMSE after rotating A_hat by the unit scalar that best aligns it with A.
double nmse_phase_aligned(const ComplexMatrix &A_hat, const ComplexMatrix &A);

// Every column (rows for the second form) is phase-aligned on its own; the summed residual
// energy is normalized by ||A||_F^2. Scores per-element links, which are defined up to a unit scalar.
double nmse_columns_aligned(const ComplexMatrix &A_hat, const ComplexMatrix &A);
double nmse_rows_aligned(const ComplexMatrix &A_hat, const ComplexMatrix &A);

enum class Scheme
{
    proposed,
    enhanced,
    lskrf
};

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

// Training slots of one full estimation pass.
//   proposed: Nt * ceil(N / min(Nt, Nr))
//   enhanced: Nt * (ceil(N / max(Nt, Nr)) + 1)
//   lskrf:    Nt * N
struct OverheadReport
{
    Scheme scheme = Scheme::proposed;
    int nt = 0;
    int nr = 0;
    int n = 0;
    std::int64_t slots = 0;
    double reduction_vs_lskrf = 0.0;  // 1 - slots / lskrf slots
};

OverheadReport overhead(Scheme scheme, int nt, int nr, int n);

} // namespace riskey
