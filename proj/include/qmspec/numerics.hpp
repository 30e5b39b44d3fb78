// Copyright 2026 the qmspec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex linear algebra helpers shared by all modules: numerical rank,
// PSD square roots, range bases, restricted smallest singular values and
// principal angles.  Complex scalars are pairs of 64-bit doubles throughout.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qmspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Rank decisions are relative: sigma_k > rel_tol * sigma_max counts.
inline constexpr double kDefaultRankTol = 1e-9;
// Hermiticity / PSD clamping tolerance for defect-type operators.
inline constexpr double kDefaultPsdTol = 1e-10;

// A subspace of C^ambient given by an orthonormal column basis.
// dim() == 0 denotes the zero subspace.
struct Subspace {
  Eigen::Index ambient = 0;
  CMatrix basis;  // ambient x dim, basis.adjoint() * basis == I
  Eigen::Index dim() const { return basis.cols(); }
};

bool all_finite(const CMatrix& a);
void require_finite(const CMatrix& a, const char* what);

// Largest singular value (0 for empty matrices).
double op_norm(const CMatrix& a);

// Operator norm (largest |eigenvalue|) of a Hermitian matrix; cheaper than an
// SVD for PSD iterates and large truncated-space residuals.
double herm_max_eig(const CMatrix& a);

// Singular values in descending order.
RVector singular_values(const CMatrix& a);

// Number of singular values above rel_tol * sigma_max; 0 for the zero matrix.
// rel_tol must lie in (0, 1).
Eigen::Index numerical_rank(const CMatrix& a, double rel_tol = kDefaultRankTol);

// Hermitian PSD square root.  Rejects matrices that are not Hermitian within
// tol or have an eigenvalue below -tol; eigenvalues in [-tol, 0] are clamped
// to 0 so that defect operators of numerically extremal contractions stay
// well defined.
CMatrix psd_sqrt(const CMatrix& a, double tol = kDefaultPsdTol);

// Orthonormal basis of the range (left singular vectors with
// sigma > rel_tol * sigma_max).  Column phases are pinned: the
// largest-magnitude entry of each basis vector is made real positive, so
// repeated runs produce identical bases.
Subspace range_basis(const CMatrix& a, double rel_tol = kDefaultRankTol);

// The target_rank-th largest singular value (1-indexed); 0 when
// target_rank == 0.  This is the distance of A to the set of matrices with
// rank < target_rank, i.e. a surjectivity margin when target_rank equals the
// codomain dimension.
double restricted_min_singular(const CMatrix& a, Eigen::Index target_rank);

// Principal angles between two subspaces of the same ambient space, in
// ascending order; min(dim u, dim v) values.  When the dimensions differ the
// angles measure how the smaller space sits inside the larger one.
std::vector<double> principal_angles(const Subspace& u, const Subspace& v);

// Deterministic phase normalization: multiplies each column by a unimodular
// scalar making its largest-magnitude entry real positive.
CMatrix pin_column_phases(CMatrix q);

}  // namespace qmspec
