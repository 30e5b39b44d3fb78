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

// Koszul complex of a commuting tuple and the homological spectra derived
// from it: h-vectors at a point, right-spectrum membership with margins, the
// final joint kernel, and the Taylor spectrum over the joint-eigenvalue
// candidate set.

#pragma once

#include <cstdint>
#include <vector>

#include "qmspec/tuples.hpp"

namespace qmspec {

long binomial(int n, int k);

// Basis e_I of Lambda^p C^d indexed by strictly increasing multi-indices
// I = (i_1 < ... < i_p), 1-based, enumerated in lexicographic order.
struct ExteriorBasis {
  int d = 0;
  // subsets[p] lists the increasing p-tuples in lex order; subsets[0] = {()}.
  std::vector<std::vector<std::vector<int>>> subsets;
  // Position of a tuple within subsets[p]; -1 if absent.
  int position(int p, const std::vector<int>& idx) const;
};
ExteriorBasis make_exterior_basis(int d);

// The boundary delta_p maps X (x) Lambda^p to X (x) Lambda^{p-1} by
//   delta_p(x (x) e_I) = sum_{a=1}^{p} (-1)^{a-1} T_{i_a} x (x) e_{I \ i_a}.
// Matrices are blocked n x n per multi-index, in the lex order above.
struct KoszulComplex {
  CommutingTuple tuple;
  std::vector<CMatrix> boundary;  // boundary[p-1] = delta_p, p = 1..d
};
KoszulComplex build_koszul(const CommutingTuple& t);

// max_p ||delta_p delta_{p+1}||; 0 when d == 1.  For a commuting tuple this
// is bounded by roundoff times ||T||^2.
double chain_residual(const KoszulComplex& k);

// h_p = dim ker delta_p - rank delta_{p+1} for the complex of lambda - T,
// p = 0..d (delta_0 = 0, delta_{d+1} = 0).  Ranks are numerical at rel_tol;
// a negative h_p signals a rank tolerance inconsistency and throws.
std::vector<int> homology_dims(const CommutingTuple& t, const CVector& lambda,
                               double rel_tol = kDefaultRankTol);

struct RightSpectrumCheck {
  bool in_spectrum = false;
  double margin = 0.0;  // n-th singular value of the shifted row operator
};

// lambda lies in the right spectrum iff the row operator of lambda - T is not
// surjective, i.e. h_0 > 0.  The margin is its distance to surjectivity.
RightSpectrumCheck in_right_spectrum(const CommutingTuple& t,
                                     const CVector& lambda,
                                     double rel_tol = kDefaultRankTol);

// dim of the joint kernel of (lambda_i - T_i), which equals h_d.
int in_final_kernel(const CommutingTuple& t, const CVector& lambda,
                    double rel_tol = kDefaultRankTol);

struct SpectralPoint {
  CVector point;
  int multiplicity = 1;
  std::vector<int> homology;  // h_0..h_d at the point
  bool taylor = false;        // some h_p > 0
  bool right = false;         // h_0 > 0 via the row-operator rank
  double right_margin = 0.0;
};

struct TaylorSpectrum {
  std::vector<SpectralPoint> points;
};

// Evaluates the h-vector at every joint eigenvalue.  At finite dimension the
// Taylor spectrum is exactly this candidate set; callers assert that every
// candidate tests spectral.
TaylorSpectrum taylor_spectrum(const CommutingTuple& t,
                               double rel_tol = kDefaultRankTol,
                               std::uint64_t seed = 1);

}  // namespace qmspec
