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

#include <Eigen/Dense>

#include <complex>
#include <string_view>

namespace riskey
{

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double default_rank_tol = 1e-9;

// Eigen-decomposition of a Hermitian matrix.
// Eigenvalues are sorted descending; column m of `eigenvectors` pairs with eigenvalues(m).
// Each eigenvector is rotated so that its largest-magnitude entry (lowest index on ties)
// is real and strictly positive.
struct EvdResult
{
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

// Thin SVD, A = U * diag(s) * V^H, singular values descending.
// U columns carry the same phase convention as EvdResult; V columns are co-rotated.
struct SvdResult
{
    ComplexMatrix U;
    RealVector singular_values;
    ComplexMatrix V;
};

// Throws ArgumentError when any entry is NaN or Inf.
void require_finite(const ComplexMatrix &A, std::string_view what);

// Rotates every column of `vectors` so its dominant entry is real positive.
// Returns the unit scalars that were applied (column m was multiplied by phases(m)).
ComplexVector normalize_column_phases(ComplexMatrix &vectors);

EvdResult hermitian_evd(const ComplexMatrix &A);

SvdResult svd(const ComplexMatrix &A);

// Number of singular values strictly greater than rel_tol * (largest singular value).
// rel_tol must lie in (0, 1). The zero matrix has rank 0.
Eigen::Index numerical_rank(const ComplexMatrix &A, double rel_tol = default_rank_tol);

// ||A - B||_F / ||B||_F, or ||A||_F when B is zero.
double relative_error(const ComplexMatrix &A, const ComplexMatrix &B);

} // namespace riskey
