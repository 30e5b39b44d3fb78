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

// Commuting tuples T = (T_1, ..., T_d) of n x n complex matrices: validation,
// shifts, row/column operators, row-contraction and purity diagnostics, and
// the joint-eigenvalue oracle via simultaneous Schur triangularization.

#pragma once

#include <cstdint>
#include <vector>

#include "qmspec/numerics.hpp"

namespace qmspec {

inline constexpr double kDefaultCommTol = 1e-10;
// Purity: the sequence ||P_T^m(1)|| is declared decayed once below this.
inline constexpr double kPureTol = 1e-8;
inline constexpr int kPurityIterations = 200;
// Joint eigenvalues closer than this are merged into one point.
inline constexpr double kClusterTol = 1e-7;
// Residual bound for accepting a simultaneous triangularization, relative to
// max(1, ||T_i||); also the cross-draw stability tolerance.
inline constexpr double kTriangTol = 1e-8;

struct CommutingTuple {
  int d = 0;
  Eigen::Index n = 0;
  std::vector<CMatrix> mats;
};

// Checks shapes, finiteness and pairwise commutators
// ||T_i T_j - T_j T_i|| <= comm_tol * (1 + ||T_i|| ||T_j||).
CommutingTuple validate_tuple(std::vector<CMatrix> mats,
                              double comm_tol = kDefaultCommTol);

// max over i<j of ||[T_i, T_j]|| / (1 + ||T_i|| ||T_j||).
double max_commutator_residual(const CommutingTuple& t);

// (lambda_1 - T_1, ..., lambda_d - T_d); exact matrix arithmetic.
CommutingTuple shift_tuple(const CommutingTuple& t, const CVector& lambda);

// Row operator [T_1 ... T_d] : H^d -> H as an n x (d n) matrix.
CMatrix row_operator(const CommutingTuple& t);

// Column operator stacking T_1, ..., T_d : H -> H^d as a (d n) x n matrix.
CMatrix column_operator(const CommutingTuple& t);

// max_i ||T_i||.
double tuple_norm(const CommutingTuple& t);

struct ContractionCheck {
  bool contraction = false;
  double margin = 0.0;  // 1 - lambda_max(sum T_i T_i*)
};

// Row contraction test: lambda_max(sum_i T_i T_i*) <= 1 + tol.
ContractionCheck is_row_contraction(const CommutingTuple& t,
                                    double tol = kDefaultCommTol);

// ||P_T^m(1)|| for m = 1..m_max where P_T(X) = sum_i T_i X T_i*.
// Requires a row contraction; the sequence is then non-increasing.
std::vector<double> purity_defects(const CommutingTuple& t, int m_max);

struct JointSpectrum {
  std::vector<CVector> points;      // distinct joint eigenvalues, sorted
  std::vector<int> multiplicities;  // summed over clusters within 1e-7
};

// Joint eigenvalues via Schur triangularization of a random combination
// S = sum c_i T_i.  A draw is accepted only if the Schur basis of S
// simultaneously triangularizes every T_i (strictly-lower residual below
// 1e-8 relative to ||T_i||); otherwise the combination is redrawn, up to 5
// times ("degenerate pencil" on exhaustion).  A second independent draw must
// reproduce the multiset within 1e-8 ("unresolved clustering" otherwise).
JointSpectrum joint_eigenvalues(const CommutingTuple& t, std::uint64_t seed);

}  // namespace qmspec
