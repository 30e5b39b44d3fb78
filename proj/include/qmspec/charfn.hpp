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

// Defect operators and spaces of a commuting row contraction, evaluation of
// its characteristic function on the extension domain, Taylor expansion as a
// polynomial matrix, the canonical dilation, and the operator identities tied
// to them (dual identity, dilation isometry, shift-range identity,
// determinant annihilators).

#pragma once

#include <cstdint>
#include <vector>

#include "qmspec/da_model.hpp"
#include "qmspec/numerics.hpp"
#include "qmspec/polynomials.hpp"
#include "qmspec/tuples.hpp"

namespace qmspec {

// Points where 1 - Z T* is worse conditioned than this are treated as
// outside the extension domain: the evaluation is meaningless in floating
// point near the domain's boundary.
inline constexpr double kExtensionConditionCap = 1e8;
// Bound on the defect intertwining residuals, relative to max(1, ||T||).
inline constexpr double kIntertwineTol = 1e-8;

// Defect operators D_T = (1 - T*T)^{1/2} on C^{dn} (T the row operator) and
// D_{T*} = (1 - TT*)^{1/2} on C^n, together with orthonormal bases of their
// ranges.  The bases are phase-pinned so downstream matrices are
// reproducible.
struct DefectData {
  CommutingTuple tuple;
  CMatrix d_t;            // dn x dn
  CMatrix d_tstar;        // n x n
  Subspace defect_t;      // range of d_t
  Subspace defect_tstar;  // range of d_tstar
  double intertwining_residual = 0.0;
};

// Requires a commuting row contraction (domain error otherwise); purity is
// validated by the model layer, not here.
DefectData defect_data(const CommutingTuple& t);

// Immutable evaluator for theta(z) = -T + D_{T*} (1 - ZT*)^{-1} Z D_T,
// compressed to the fixed defect bases.  Safe to share across threads.
struct CharFnEvaluator {
  DefectData data;
  double condition_cap = kExtensionConditionCap;
  CMatrix row;          // [T_1 ... T_d], n x dn
  CMatrix theta_const;  // compressed -T, m' x m
  CMatrix c1;           // Q_{T*}^* D_{T*}, m' x n
  CMatrix dq;           // D_T Q_T, dn x m

  Eigen::Index dim_defect() const { return data.defect_t.dim(); }
  Eigen::Index dim_defect_star() const { return data.defect_tstar.dim(); }
};

CharFnEvaluator make_evaluator(const CommutingTuple& t,
                               double condition_cap = kExtensionConditionCap);

struct ExtensionCheck {
  bool inside = false;
  double condition = 0.0;  // condition number of 1 - ZT*
};

// z lies in the evaluation domain iff 1 - ZT* is invertible with condition
// number at most the evaluator's cap.  z may lie outside the closed ball.
ExtensionCheck in_extension_domain(const CharFnEvaluator& e, const CVector& z);

// theta(z) in the defect bases: dim D_{T*} x dim D_T.  Domain error outside
// the extension domain.
CMatrix charfn_eval(const CharFnEvaluator& e, const CVector& z);

// Uncompressed theta(z) as a map C^{dn} -> C^n; used by identity checks.
CMatrix charfn_eval_full(const CharFnEvaluator& e, const CVector& z);

// || D_T theta(z)* - (Z* - T*)(1 - TZ*)^{-1} D_{T*} ||; the identity chain
// behind the boundary surjectivity check.  Stays <= 1e-10 * (1 + cond(1 - TZ*)).
double dual_identity_residual(const CharFnEvaluator& e, const CVector& z);

// Smallest singular value of theta(z) restricted to full output rank:
// positive iff theta(z) maps onto the D_{T*} defect space.
double surjectivity_margin(const CharFnEvaluator& e, const CVector& z);

// dim coker theta(z) = dim D_{T*} - rank theta(z); matches h_0(z - T).
int charfn_coker_dim(const CharFnEvaluator& e, const CVector& z,
                     double rel_tol = kDefaultRankTol);

// Taylor expansion of theta as an m' x m polynomial matrix of total degree
// <= degree_cap, from the Neumann series of (1 - ZT*)^{-1}.
PolyMatrix charfn_taylor(const CharFnEvaluator& e, int degree_cap);

// Conservative sup-norm bound on the dropped tail of charfn_taylor over the
// closed ball, assuming coefficient decay at rate `rate` (e.g. the largest
// node radius): C * rate^{N+1} / (1 - rate) with C fitted to the last
// retained degrees.  Returns 0 when the series has terminated.
double charfn_tail_bound(const PolyMatrix& taylor, double rate);

// Matrix of the canonical dilation x -> sum_alpha (|alpha|!/alpha!)
// (D_{T*} T^{*alpha} x) z^alpha into the truncated orthonormal basis with
// coefficient space D_{T*}: (basis dim) x n.
CMatrix canonical_dilation(const CharFnEvaluator& e, int degree_cap);

// || j_N* j_N - I ||; equals || P_T^{N+1}(1) || exactly, so it decays like
// r_max^{2N} for models with largest node radius r_max.
double dilation_isometry_defect(const CharFnEvaluator& e, int degree_cap);

// max_i || j_N T_i* - M_{z_i}^* j_N || on the truncation; tail-sized.
double dilation_intertwining_residual(const CharFnEvaluator& e,
                                      int degree_cap);

// Shift-range identity and range comparison on the truncated space.
struct BeurlingReport {
  double identity_residual = 0.0;  // || M M* + j j* - I ||
  std::vector<double> principal_angles;  // range(M) vs truncated model space
  double max_angle = 0.0;
  double tail_bound = 0.0;
  Eigen::Index range_rank = 0;
};

// Requires an evaluator built from model.tuple.  Verifies
// M_theta M_theta* + j j* = 1 on the truncation and compares range(M_theta)
// against the truncation of the model's defining subspace via principal
// angles (after the canonical coefficient-space identification).
BeurlingReport beurling_range_check(const CharFnEvaluator& e,
                                    const QuotientModel& model,
                                    int degree_cap);

// The m' x m' polynomial matrix with columns theta_N(.) e_j, the e_j given
// in D_T basis coordinates.
PolyMatrix annihilator_matrix(const CharFnEvaluator& e,
                              const std::vector<CVector>& basis_vectors,
                              int degree_cap);

// det of annihilator_matrix.  Vanishes (to truncation tolerance) at every
// node of the underlying model.
MultiPoly annihilator_from_charfn(const CharFnEvaluator& e,
                                  const std::vector<CVector>& basis_vectors,
                                  int degree_cap);

}  // namespace qmspec
