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

// Finite-dimensional quotient models of the d-shift space: kernel-node
// specifications, Gram matrices, the compressed coordinate-multiplication
// tuple, and truncated orthonormal monomial spaces with multiplication
// operator matrices.

#pragma once

#include <map>
#include <vector>

#include "qmspec/numerics.hpp"
#include "qmspec/polynomials.hpp"
#include "qmspec/tuples.hpp"

namespace qmspec {

inline constexpr double kGramConditionCap = 1e12;

// One kernel direction: point in the open ball plus a nonzero coefficient
// vector.
struct KernelNode {
  CVector lambda;  // in C^d, |lambda| < 1
  CVector v;       // in C^m, nonzero
};

// Finite-dimensional co-invariant model: the span of the kernel vectors
// k_lambda (x) v inside the vector-valued function space with coefficient
// dimension m.
struct KernelModelSpec {
  int d = 0;
  int m = 0;
  std::vector<KernelNode> nodes;
};

void validate_model_spec(const KernelModelSpec& spec);

// k x k matrix of pairwise inner products of the kernel vectors,
// G(l, j) = <f_j, f_l>. Hermitian positive definite for a valid spec.
CMatrix gram_matrix(const KernelModelSpec& spec);

// The compressed coordinate multiplication tuple on the model space,
// expressed in the orthonormalized kernel basis.
struct QuotientModel {
  KernelModelSpec spec;
  CMatrix gram;           // k x k
  CMatrix gram_sqrt;      // G^{1/2}
  CMatrix gram_sqrt_inv;  // G^{-1/2}
  CommutingTuple tuple;   // T_i on C^k
  std::vector<double> purity_curve;  // recorded defect decay
};

QuotientModel quotient_tuple(const KernelModelSpec& spec);

// Weight w(alpha) = alpha! / |alpha|!, the squared monomial norm.
double da_weight(const MultiIndex& alpha);

// All exponent vectors with |alpha| <= max_degree in graded-lex order.
std::vector<MultiIndex> monomials_up_to(int d, int max_degree);

// Truncated vector-valued function space: orthonormalized monomial basis
// z^alpha e_k / sqrt(w(alpha)), ordered graded-lex in alpha then by k.
struct TruncatedDA {
  int d = 0;
  int m = 0;
  int degree_cap = 0;
  std::vector<MultiIndex> monomials;  // graded-lex ascending
  std::vector<double> weights;        // w(alpha), parallel to monomials
  std::map<MultiIndex, Eigen::Index, GradedLexLess> position;

  Eigen::Index dim() const {
    return static_cast<Eigen::Index>(monomials.size()) * m;
  }
  // Flat index of coefficient k of monomial alpha, or -1 when alpha exceeds
  // the truncation (callers drop such transitions; that IS the truncation).
  Eigen::Index index_of(const MultiIndex& alpha, int k) const;
};

TruncatedDA make_truncation(int d, int m, int degree_cap);

// Matrix of the multiplication operator of a polynomial symbol (dst.m x
// src.m entries) between truncated spaces, in the orthonormalized bases.
// Without truncate_overflow the destination cap must absorb every product
// degree (dst cap >= src cap + symbol degree); with it, overflowing terms
// are projected away.
CMatrix mult_op_matrix(const PolyMatrix& symbol, const TruncatedDA& src,
                       const TruncatedDA& dst, bool truncate_overflow = false);

// Columns are the truncations of the kernel vectors k_lambda_j (x) v_j in
// the orthonormalized basis: entry ((gamma,c)) = conj(lambda_j)^gamma *
// v_j(c) / sqrt(w(gamma)).
CMatrix embed_kernel_vectors(const KernelModelSpec& spec,
                             const TruncatedDA& trunc);

// Value at z of the element with the given orthonormal-basis coefficients.
CVector eval_truncated(const CVector& coeffs, const TruncatedDA& trunc,
                       const CVector& z);

// Norm gap between the exact quotient tuple and the compression of the
// truncated coordinate multipliers to the embedded model space; decays
// geometrically in the cap at rate max node radius.
double compression_residual(const KernelModelSpec& spec, int degree_cap);

}  // namespace qmspec
