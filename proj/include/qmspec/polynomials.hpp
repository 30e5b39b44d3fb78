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

// Multivariate complex polynomial arithmetic and polynomial matrices:
// evaluation, exact determinant/adjugate by cofactor expansion, generators of
// the vanishing ideal of a finite point set, and sampled approximate-zero-set
// profiles.

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qmspec/numerics.hpp"

namespace qmspec {

// Exponent vector of a monomial z^alpha; one nonnegative entry per variable.
using MultiIndex = std::vector<int>;

int multi_total(const MultiIndex& alpha);

// Graded lexicographic order: first by total degree, then lexicographically.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// Multivariate polynomial with complex coefficients in normalized form
// (no stored zero coefficients). Terms are kept in graded-lex order so the
// representation and its serialization are canonical.
class MultiPoly {
 public:
  using TermMap = std::map<MultiIndex, Complex, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(int d);

  static MultiPoly constant(int d, const Complex& c);
  static MultiPoly variable(int d, int i);  // i is 0-based
  static MultiPoly monomial(int d, const MultiIndex& alpha, const Complex& c);

  int vars() const { return d_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; 0 for the zero polynomial.
  int total_degree() const;
  // Largest coefficient magnitude; 0 for the zero polynomial.
  double max_coeff() const;

  // Accumulates c onto the coefficient of z^alpha, dropping exact zeros.
  void add_term(const MultiIndex& alpha, const Complex& c);

  // Copy with all terms of total degree > max_degree removed.
  MultiPoly truncated(int max_degree) const;

  // Horner-style evaluation (recursive on variables, Horner in each).
  Complex eval(const CVector& z) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Complex& c);

 private:
  int d_ = 0;
  TermMap terms_;
};

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const Complex& c, const MultiPoly& a);

inline Complex poly_eval(const MultiPoly& f, const CVector& z) {
  return f.eval(z);
}

// Dense matrix of polynomials over a shared variable count.
struct PolyMatrix {
  int d = 0;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<MultiPoly> entries;  // row-major

  static PolyMatrix zeros(int d, Eigen::Index rows, Eigen::Index cols);
  static PolyMatrix identity(int d, Eigen::Index n);
  static PolyMatrix from_constant(const CMatrix& a, int d);

  MultiPoly& at(Eigen::Index i, Eigen::Index j);
  const MultiPoly& at(Eigen::Index i, Eigen::Index j) const;
};

PolyMatrix pm_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pm_sub(const PolyMatrix& a, const PolyMatrix& b);
// Product; terms above max_degree are dropped when max_degree >= 0.
PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b,
                  int max_degree = -1);
PolyMatrix pm_scale(const Complex& c, const PolyMatrix& a);
PolyMatrix pm_truncated(const PolyMatrix& a, int max_degree);
CMatrix pm_eval(const PolyMatrix& a, const CVector& z);
int pm_degree(const PolyMatrix& a);
double pm_max_coeff(const PolyMatrix& a);

// Exact symbolic determinant by cofactor expansion. Square only; the size is
// capped at 6 because cofactor cost is factorial.
MultiPoly poly_det(const PolyMatrix& a);

// Adjugate R with a*R = R*a = det(a)*identity as polynomial identities.
PolyMatrix poly_adjugate(const PolyMatrix& a);

// For k pairwise-distinct points in the open unit ball of C^d, returns the
// d^k products prod_j (z_{i_j} - lambda^{(j)}_{i_j}); their common zero set
// is exactly the given point set.
std::vector<MultiPoly> vanishing_ideal_generators(
    const std::vector<CVector>& points, int d);

// For each radius r (positive, decreasing), the minimum of |f(z)| over the
// given sample points z with |z - lambda| < r; an empty sample set at some
// radius yields a missing value rather than an error.
std::vector<std::optional<double>> az_profile(
    const MultiPoly& f, const CVector& lambda,
    const std::vector<double>& radii, const std::vector<CVector>& samples);

}  // namespace qmspec
