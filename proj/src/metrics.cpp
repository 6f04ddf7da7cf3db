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

#include "riskey/metrics.hpp"
#include "riskey/errors.hpp"

#include <algorithm>
#include <string>

namespace riskey
{

namespace
{

void check_pair(const ComplexMatrix &A_hat, const ComplexMatrix &A, const char *who)
{
    if (A_hat.rows() != A.rows() || A_hat.cols() != A.cols())
        throw DimensionError(std::string(who) + ": estimate is " + std::to_string(A_hat.rows()) + "x" +
                             std::to_string(A_hat.cols()) + ", reference is " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()));
    if (A.squaredNorm() == 0.0)
        throw ArgumentError(std::string(who) + ": reference matrix is zero");
}

// min over |c| = 1 of ||c a_hat - a||^2
template <typename Lhs, typename Rhs>
double aligned_residual(const Lhs &a_hat, const Rhs &a)
{
    // <a_hat, a> = sum conj(a_hat) a; the optimum rotates a_hat onto its phase
    const cdouble inner = (a_hat.conjugate().cwiseProduct(a)).sum();
    const double mag = std::abs(inner);
    const cdouble c = mag > 0.0 ? inner / mag : cdouble(1.0, 0.0);
    return (c * a_hat - a).squaredNorm();
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::int64_t slots_for(Scheme scheme, std::int64_t nt, std::int64_t nr, std::int64_t n)
{
    switch (scheme)
    {
    case Scheme::proposed:
        return nt * ceil_div(n, std::min(nt, nr));
    case Scheme::enhanced:
        return nt * (ceil_div(n, std::max(nt, nr)) + 1);
    case Scheme::lskrf:
        return nt * n;
    }
    throw ArgumentError("overhead: unknown scheme");
}

} // namespace

double nmse(const ComplexMatrix &A_hat, const ComplexMatrix &A)
{
    check_pair(A_hat, A, "nmse");
    return (A_hat - A).squaredNorm() / A.squaredNorm();
}

double nmse_phase_aligned(const ComplexMatrix &A_hat, const ComplexMatrix &A)
{
    check_pair(A_hat, A, "nmse_phase_aligned");
    return aligned_residual(A_hat, A) / A.squaredNorm();
}

double nmse_columns_aligned(const ComplexMatrix &A_hat, const ComplexMatrix &A)
{
    check_pair(A_hat, A, "nmse_columns_aligned");
    double residual = 0.0;
    for (Eigen::Index c = 0; c < A.cols(); ++c)
        residual += aligned_residual(A_hat.col(c), A.col(c));
    return residual / A.squaredNorm();
}

double nmse_rows_aligned(const ComplexMatrix &A_hat, const ComplexMatrix &A)
{
    check_pair(A_hat, A, "nmse_rows_aligned");
    double residual = 0.0;
    for (Eigen::Index r = 0; r < A.rows(); ++r)
        residual += aligned_residual(A_hat.row(r), A.row(r));
    return residual / A.squaredNorm();
}

std::string_view to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::proposed:
        return "proposed";
    case Scheme::enhanced:
        return "enhanced";
    case Scheme::lskrf:
        return "lskrf";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    if (name == "proposed")
        return Scheme::proposed;
    if (name == "enhanced")
        return Scheme::enhanced;
    if (name == "lskrf")
        return Scheme::lskrf;
    throw ArgumentError("unknown overhead scheme '" + std::string(name) + "'");
}

OverheadReport overhead(Scheme scheme, int nt, int nr, int n)
{
    if (nt < 1 || nr < 1 || n < 1)
        throw ArgumentError("overhead: dimensions must be >= 1");
    OverheadReport rep;
    rep.scheme = scheme;
    rep.nt = nt;
    rep.nr = nr;
    rep.n = n;
    rep.slots = slots_for(scheme, nt, nr, n);
    const auto baseline = slots_for(Scheme::lskrf, nt, nr, n);
    rep.reduction_vs_lskrf = 1.0 - static_cast<double>(rep.slots) / static_cast<double>(baseline);
    return rep;
}

} // namespace riskey
