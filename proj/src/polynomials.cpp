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

#include "qmspec/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qmspec/errors.hpp"

namespace qmspec {

int multi_total(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

bool GradedLexLess::operator()(const MultiIndex& a,
                               const MultiIndex& b) const {
  const int ta = multi_total(a);
  const int tb = multi_total(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

MultiPoly::MultiPoly(int d) : d_(d) {
  if (d < 0) fail_input("MultiPoly: negative variable count");
}

MultiPoly MultiPoly::constant(int d, const Complex& c) {
  MultiPoly p(d);
  p.add_term(MultiIndex(d, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int d, int i) {
  if (i < 0 || i >= d) fail_input("MultiPoly::variable: index out of range");
  MultiIndex alpha(d, 0);
  alpha[i] = 1;
  MultiPoly p(d);
  p.add_term(alpha, Complex(1.0, 0.0));
  return p;
}

MultiPoly MultiPoly::monomial(int d, const MultiIndex& alpha,
                              const Complex& c) {
  MultiPoly p(d);
  p.add_term(alpha, c);
  return p;
}

int MultiPoly::total_degree() const {
  // Graded-lex order puts the highest total degree last.
  if (terms_.empty()) return 0;
  return multi_total(terms_.rbegin()->first);
}

double MultiPoly::max_coeff() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void MultiPoly::add_term(const MultiIndex& alpha, const Complex& c) {
  if (static_cast<int>(alpha.size()) != d_)
    fail_input("MultiPoly::add_term: exponent length mismatch");
  for (int a : alpha)
    if (a < 0) fail_input("MultiPoly::add_term: negative exponent");
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

MultiPoly MultiPoly::truncated(int max_degree) const {
  MultiPoly out(d_);
  for (const auto& [alpha, c] : terms_)
    if (multi_total(alpha) <= max_degree) out.terms_.emplace(alpha, c);
  return out;
}

namespace {

Complex pow_int(const Complex& z, int n) {
  Complex r(1.0, 0.0);
  Complex base = z;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

using FlatTerm = std::pair<const MultiIndex*, Complex>;

// Horner evaluation over terms sorted lex-descending from variable `var` on.
Complex eval_range(const std::vector<FlatTerm>& terms, std::size_t lo,
                   std::size_t hi, int var, int d, const CVector& z) {
  if (var == d) {
    Complex s(0.0, 0.0);
    for (std::size_t i = lo; i < hi; ++i) s += terms[i].second;
    return s;
  }
  Complex acc(0.0, 0.0);
  int prev_exp = 0;
  bool first = true;
  std::size_t i = lo;
  while (i < hi) {
    const int e = (*terms[i].first)[var];
    std::size_t j = i;
    while (j < hi && (*terms[j].first)[var] == e) ++j;
    const Complex inner = eval_range(terms, i, j, var + 1, d, z);
    if (first) {
      acc = inner;
      first = false;
    } else {
      acc = acc * pow_int(z(var), prev_exp - e) + inner;
    }
    prev_exp = e;
    i = j;
  }
  return acc * pow_int(z(var), prev_exp);
}

}  // namespace

Complex MultiPoly::eval(const CVector& z) const {
  if (z.size() != d_) fail_input("MultiPoly::eval: point dimension mismatch");
  if (terms_.empty()) return Complex(0.0, 0.0);
  std::vector<FlatTerm> flat;
  flat.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) flat.emplace_back(&alpha, c);
  std::sort(flat.begin(), flat.end(),
            [](const FlatTerm& a, const FlatTerm& b) {
              return *a.first > *b.first;  // plain lex, descending
            });
  return eval_range(flat, 0, flat.size(), 0, d_, z);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (d_ != o.d_) fail_input("MultiPoly: variable count mismatch");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (d_ != o.d_) fail_input("MultiPoly: variable count mismatch");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Complex& c) {
  if (c == Complex(0.0, 0.0)) {
    *this = MultiPoly(d_);
    return *this;
  }
  for (auto& [alpha, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  r += b;
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  r -= b;
  return r;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly r = a;
  r *= Complex(-1.0, 0.0);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars() != b.vars()) fail_input("MultiPoly: variable count mismatch");
  MultiPoly r(a.vars());
  MultiIndex gamma(a.vars(), 0);
  for (const auto& [alpha, ca] : a.terms()) {
    for (const auto& [beta, cb] : b.terms()) {
      for (int i = 0; i < a.vars(); ++i) gamma[i] = alpha[i] + beta[i];
      r.add_term(gamma, ca * cb);
    }
  }
  return r;
}

MultiPoly operator*(const Complex& c, const MultiPoly& a) {
  MultiPoly r = a;
  r *= c;
  return r;
}

PolyMatrix PolyMatrix::zeros(int d, Eigen::Index rows, Eigen::Index cols) {
  if (rows < 0 || cols < 0) fail_input("PolyMatrix: negative shape");
  PolyMatrix m;
  m.d = d;
  m.rows = rows;
  m.cols = cols;
  m.entries.assign(static_cast<std::size_t>(rows * cols), MultiPoly(d));
  return m;
}

PolyMatrix PolyMatrix::identity(int d, Eigen::Index n) {
  PolyMatrix m = zeros(d, n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    m.at(i, i) = MultiPoly::constant(d, Complex(1.0, 0.0));
  return m;
}

PolyMatrix PolyMatrix::from_constant(const CMatrix& a, int d) {
  PolyMatrix m = zeros(d, a.rows(), a.cols());
  const MultiIndex zero(d, 0);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      m.at(i, j).add_term(zero, a(i, j));
  return m;
}

MultiPoly& PolyMatrix::at(Eigen::Index i, Eigen::Index j) {
  return entries[static_cast<std::size_t>(i * cols + j)];
}

const MultiPoly& PolyMatrix::at(Eigen::Index i, Eigen::Index j) const {
  return entries[static_cast<std::size_t>(i * cols + j)];
}

namespace {

void check_same_shape(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.d != b.d || a.rows != b.rows || a.cols != b.cols)
    fail_input("PolyMatrix: shape or variable count mismatch");
}

}  // namespace

PolyMatrix pm_add(const PolyMatrix& a, const PolyMatrix& b) {
  check_same_shape(a, b);
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.entries.size(); ++i)
    r.entries[i] += b.entries[i];
  return r;
}

PolyMatrix pm_sub(const PolyMatrix& a, const PolyMatrix& b) {
  check_same_shape(a, b);
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.entries.size(); ++i)
    r.entries[i] -= b.entries[i];
  return r;
}

PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b, int max_degree) {
  if (a.d != b.d) fail_input("PolyMatrix: variable count mismatch");
  if (a.cols != b.rows) fail_input("PolyMatrix: inner dimension mismatch");
  PolyMatrix r = PolyMatrix::zeros(a.d, a.rows, b.cols);
  for (Eigen::Index i = 0; i < a.rows; ++i)
    for (Eigen::Index k = 0; k < a.cols; ++k) {
      const MultiPoly& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols; ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) += aik * b.at(k, j);
      }
    }
  if (max_degree >= 0) r = pm_truncated(r, max_degree);
  return r;
}

PolyMatrix pm_scale(const Complex& c, const PolyMatrix& a) {
  PolyMatrix r = a;
  for (auto& e : r.entries) e *= c;
  return r;
}

PolyMatrix pm_truncated(const PolyMatrix& a, int max_degree) {
  PolyMatrix r = a;
  for (auto& e : r.entries) e = e.truncated(max_degree);
  return r;
}

CMatrix pm_eval(const PolyMatrix& a, const CVector& z) {
  CMatrix m(a.rows, a.cols);
  for (Eigen::Index i = 0; i < a.rows; ++i)
    for (Eigen::Index j = 0; j < a.cols; ++j) m(i, j) = a.at(i, j).eval(z);
  return m;
}

int pm_degree(const PolyMatrix& a) {
  int deg = 0;
  for (const auto& e : a.entries) deg = std::max(deg, e.total_degree());
  return deg;
}

double pm_max_coeff(const PolyMatrix& a) {
  double m = 0.0;
  for (const auto& e : a.entries) m = std::max(m, e.max_coeff());
  return m;
}

namespace {

PolyMatrix pm_minor(const PolyMatrix& a, Eigen::Index drop_row,
                    Eigen::Index drop_col) {
  PolyMatrix m = PolyMatrix::zeros(a.d, a.rows - 1, a.cols - 1);
  for (Eigen::Index i = 0, r = 0; i < a.rows; ++i) {
    if (i == drop_row) continue;
    for (Eigen::Index j = 0, c = 0; j < a.cols; ++j) {
      if (j == drop_col) continue;
      m.at(r, c) = a.at(i, j);
      ++c;
    }
    ++r;
  }
  return m;
}

void check_det_input(const PolyMatrix& a) {
  if (a.rows != a.cols) fail_input("poly_det: non-square matrix");
  if (a.rows > 6)
    fail_input("poly_det: size cap exceeded (cofactor expansion, max 6)");
  if (a.rows == 0) fail_input("poly_det: empty matrix");
}

}  // namespace

MultiPoly poly_det(const PolyMatrix& a) {
  check_det_input(a);
  if (a.rows == 1) return a.at(0, 0);
  MultiPoly det(a.d);
  for (Eigen::Index j = 0; j < a.cols; ++j) {
    if (a.at(0, j).is_zero()) continue;
    MultiPoly term = a.at(0, j) * poly_det(pm_minor(a, 0, j));
    if (j % 2 == 1) term *= Complex(-1.0, 0.0);
    det += term;
  }
  return det;
}

PolyMatrix poly_adjugate(const PolyMatrix& a) {
  check_det_input(a);
  PolyMatrix adj = PolyMatrix::zeros(a.d, a.rows, a.cols);
  if (a.rows == 1) {
    adj.at(0, 0) = MultiPoly::constant(a.d, Complex(1.0, 0.0));
    return adj;
  }
  for (Eigen::Index i = 0; i < a.rows; ++i)
    for (Eigen::Index j = 0; j < a.cols; ++j) {
      // adj(j, i) = (-1)^{i+j} det(minor(i, j)): transpose of cofactors.
      MultiPoly cof = poly_det(pm_minor(a, i, j));
      if ((i + j) % 2 == 1) cof *= Complex(-1.0, 0.0);
      adj.at(j, i) = std::move(cof);
    }
  return adj;
}

std::vector<MultiPoly> vanishing_ideal_generators(
    const std::vector<CVector>& points, int d) {
  if (d < 1) fail_input("vanishing_ideal_generators: d must be at least 1");
  for (const auto& p : points) {
    if (p.size() != d)
      fail_input("vanishing_ideal_generators: point dimension mismatch");
    if (p.norm() >= 1.0)
      fail_input("vanishing_ideal_generators: point not in the open ball");
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if ((points[i] - points[j]).norm() <= 1e-12)
        fail_input("vanishing_ideal_generators: coincident points");

  const std::size_t k = points.size();
  std::vector<MultiPoly> gens;
  std::vector<int> choice(k, 0);  // choice[j] = which coordinate form at point j
  while (true) {
    MultiPoly g = MultiPoly::constant(d, Complex(1.0, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
      const int i = choice[j];
      MultiPoly lin = MultiPoly::variable(d, i);
      lin += MultiPoly::constant(d, -points[j](i));
      g = g * lin;
    }
    gens.push_back(std::move(g));
    // odometer over {0..d-1}^k
    std::size_t pos = 0;
    while (pos < k && choice[pos] == d - 1) {
      choice[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
    ++choice[pos];
  }
  return gens;
}

std::vector<std::optional<double>> az_profile(
    const MultiPoly& f, const CVector& lambda,
    const std::vector<double>& radii, const std::vector<CVector>& samples) {
  if (lambda.size() != f.vars())
    fail_input("az_profile: point dimension mismatch");
  if (lambda.norm() > 1.0 + 1e-12)
    fail_input("az_profile: center outside the closed ball");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 0.0) fail_input("az_profile: radii must be positive");
    if (i > 0 && radii[i] >= radii[i - 1])
      fail_input("az_profile: radii must be strictly decreasing");
  }
  // |f| at each sample, paired with its distance to lambda; sorted by
  // distance so each radius level is a prefix scan.
  std::vector<std::pair<double, double>> dist_val;
  dist_val.reserve(samples.size());
  for (const auto& z : samples) {
    if (z.size() != f.vars())
      fail_input("az_profile: sample dimension mismatch");
    dist_val.emplace_back((z - lambda).norm(), std::abs(f.eval(z)));
  }
  std::sort(dist_val.begin(), dist_val.end());
  std::vector<std::optional<double>> profile(radii.size());
  for (std::size_t r = 0; r < radii.size(); ++r) {
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& [dist, val] : dist_val) {
      if (dist >= radii[r]) break;
      best = std::min(best, val);
      any = true;
    }
    if (any) profile[r] = best;
  }
  return profile;
}

}  // namespace qmspec
