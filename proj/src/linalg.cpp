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

#include "riskey/linalg.hpp"
#include "riskey/errors.hpp"

#include <cmath>
#include <string>

namespace riskey
{

namespace
{

constexpr double hermitian_tol = 1e-9;

// Magnitudes within this relative distance of the maximum count as ties.
constexpr double phase_tie_tol = 1e-12;

Eigen::Index dominant_index(const ComplexVector &v)
{
    const RealVector mag = v.cwiseAbs();
    const double peak = mag.maxCoeff();
    for (Eigen::Index i = 0; i < mag.size(); ++i)
        if (mag(i) >= peak * (1.0 - phase_tie_tol))
            return i;
    return 0;
}

} // namespace

void require_finite(const ComplexMatrix &A, std::string_view what)
{
    if (!A.allFinite())
        throw ArgumentError(std::string(what) + ": matrix contains NaN or Inf entries");
}

ComplexVector normalize_column_phases(ComplexMatrix &vectors)
{
    ComplexVector phases = ComplexVector::Ones(vectors.cols());
    for (Eigen::Index m = 0; m < vectors.cols(); ++m)
    {
        const Eigen::Index i = dominant_index(vectors.col(m));
        const cdouble pivot = vectors(i, m);
        if (std::abs(pivot) == 0.0)
            continue;
        phases(m) = std::conj(pivot) / std::abs(pivot);
        vectors.col(m) *= phases(m);
        vectors(i, m) = cdouble(vectors(i, m).real(), 0.0);
    }
    return phases;
}

EvdResult hermitian_evd(const ComplexMatrix &A)
{
    if (A.rows() != A.cols())
        throw DimensionError("hermitian_evd: matrix is " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()) + ", expected square");
    require_finite(A, "hermitian_evd");

    const ComplexMatrix A_h = A.adjoint();
    const double asym = (A - A_h).norm();
    if (asym > hermitian_tol * A.norm())
        throw ContractError("hermitian_evd: matrix is not Hermitian (||A - A^H||_F = " +
                            std::to_string(asym) + ")");

    const ComplexMatrix sym = 0.5 * (A + A_h);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw ContractError("hermitian_evd: eigen-solver did not converge");

    // Eigen returns ascending order
    EvdResult out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    normalize_column_phases(out.eigenvectors);
    return out;
}

SvdResult svd(const ComplexMatrix &A)
{
    require_finite(A, "svd");

    Eigen::JacobiSVD<ComplexMatrix> solver(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out;
    out.U = solver.matrixU();
    out.singular_values = solver.singularValues();
    out.V = solver.matrixV();

    // U * S * V^H is unchanged when u_m and v_m are scaled by the same unit scalar
    const ComplexVector phases = normalize_column_phases(out.U);
    for (Eigen::Index m = 0; m < out.V.cols(); ++m)
        out.V.col(m) *= phases(m);
    return out;
}

Eigen::Index numerical_rank(const ComplexMatrix &A, double rel_tol)
{
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw ArgumentError("numerical_rank: rel_tol must lie in (0, 1)");
    require_finite(A, "numerical_rank");
    if (A.size() == 0)
        return 0;

    const RealVector s = Eigen::JacobiSVD<ComplexMatrix>(A).singularValues();
    if (s(0) == 0.0)
        return 0;
    const double cut = rel_tol * s(0);
    return (s.array() > cut).count();
}

double relative_error(const ComplexMatrix &A, const ComplexMatrix &B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionError("relative_error: shape mismatch");
    const double ref = B.norm();
    const double diff = (A - B).norm();
    return ref > 0.0 ? diff / ref : diff;
}

} // namespace riskey
