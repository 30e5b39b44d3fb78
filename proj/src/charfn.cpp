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

#include "qmspec/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qmspec/errors.hpp"

namespace qmspec {

namespace {

// Z = [z_1 I ... z_d I] : C^{dn} -> C^n.
CMatrix make_row_z(const CVector& z, Eigen::Index n) {
  const Eigen::Index d = z.size();
  CMatrix zrow = CMatrix::Zero(n, d * n);
  for (Eigen::Index i = 0; i < d; ++i)
    zrow.block(0, i * n, n, n) =
        z(i) * CMatrix::Identity(n, n);
  return zrow;
}

// 1 - ZT* = I - sum_i z_i T_i*.
CMatrix one_minus_zt_star(const CommutingTuple& t, const CVector& z) {
  CMatrix a = CMatrix::Identity(t.n, t.n);
  for (int i = 0; i < t.d; ++i) a -= z(i) * t.mats[i].adjoint();
  return a;
}

// 1 - TZ* = I - sum_i conj(z_i) T_i.
CMatrix one_minus_t_zstar(const CommutingTuple& t, const CVector& z) {
  CMatrix a = CMatrix::Identity(t.n, t.n);
  for (int i = 0; i < t.d; ++i) a -= std::conj(z(i)) * t.mats[i];
  return a;
}

void check_point(const CharFnEvaluator& e, const CVector& z) {
  if (z.size() != e.data.tuple.d)
    fail_input("charfn: point dimension mismatch");
  require_finite(z, "charfn point");
}

void require_extension_domain(const CharFnEvaluator& e, const CVector& z) {
  const ExtensionCheck ec = in_extension_domain(e, z);
  if (!ec.inside) fail_domain("charfn: outside extension domain");
}

}  // namespace

DefectData defect_data(const CommutingTuple& t) {
  DefectData d;
  d.tuple = t;
  const ContractionCheck cc = is_row_contraction(t);
  if (!cc.contraction) fail_domain("defect_data: not a row contraction");
  const CMatrix row = row_operator(t);
  const Eigen::Index n = t.n;
  const Eigen::Index dn = row.cols();
  const CMatrix sq_t = CMatrix::Identity(dn, dn) - row.adjoint() * row;
  const CMatrix sq_tstar = CMatrix::Identity(n, n) - row * row.adjoint();
  d.d_t = psd_sqrt(sq_t);
  d.d_tstar = psd_sqrt(sq_tstar);
  // Defect ranges are read off the squared defects: rank(D) = rank(D^2), and
  // thresholding the square avoids promoting sqrt-inflated noise directions
  // (an exact zero eigenvalue perturbed to 1e-16 would reappear as 1e-8 in
  // the root).
  d.defect_t = range_basis(sq_t);
  d.defect_tstar = range_basis(sq_tstar);
  const double scale = std::max(1.0, tuple_norm(t));
  const double r1 = op_norm(row * d.d_t - d.d_tstar * row);
  const double r2 = op_norm(row.adjoint() * d.d_tstar - d.d_t * row.adjoint());
  d.intertwining_residual = std::max(r1, r2);
  if (d.intertwining_residual > kIntertwineTol * scale)
    fail_numerical("defect_data: intertwining relation violated");
  return d;
}

CharFnEvaluator make_evaluator(const CommutingTuple& t, double condition_cap) {
  if (condition_cap < 1.0)
    fail_input("make_evaluator: condition cap must be at least 1");
  CharFnEvaluator e;
  e.data = defect_data(t);
  e.condition_cap = condition_cap;
  e.row = row_operator(t);
  e.theta_const =
      -(e.data.defect_tstar.basis.adjoint() * e.row * e.data.defect_t.basis);
  e.c1 = e.data.defect_tstar.basis.adjoint() * e.data.d_tstar;
  e.dq = e.data.d_t * e.data.defect_t.basis;
  return e;
}

ExtensionCheck in_extension_domain(const CharFnEvaluator& e, const CVector& z) {
  check_point(e, z);
  const RVector sv = singular_values(one_minus_zt_star(e.data.tuple, z));
  ExtensionCheck ec;
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) {
    ec.inside = false;
    ec.condition = std::numeric_limits<double>::infinity();
    return ec;
  }
  ec.condition = sv(0) / smin;
  ec.inside = ec.condition <= e.condition_cap;
  return ec;
}

CMatrix charfn_eval(const CharFnEvaluator& e, const CVector& z) {
  check_point(e, z);
  require_extension_domain(e, z);
  const Eigen::Index n = e.data.tuple.n;
  const Eigen::Index m = e.dim_defect();
  const CMatrix a = one_minus_zt_star(e.data.tuple, z);
  // Z D_T Q_T = sum_i z_i (block i of D_T Q_T).
  CMatrix zdq = CMatrix::Zero(n, m);
  for (int i = 0; i < e.data.tuple.d; ++i)
    zdq += z(i) * e.dq.block(static_cast<Eigen::Index>(i) * n, 0, n, m);
  return e.theta_const + e.c1 * a.partialPivLu().solve(zdq);
}

CMatrix charfn_eval_full(const CharFnEvaluator& e, const CVector& z) {
  check_point(e, z);
  require_extension_domain(e, z);
  const Eigen::Index n = e.data.tuple.n;
  const CMatrix a = one_minus_zt_star(e.data.tuple, z);
  const CMatrix zrow = make_row_z(z, n);
  return -e.row + e.data.d_tstar * a.partialPivLu().solve(zrow * e.data.d_t);
}

double dual_identity_residual(const CharFnEvaluator& e, const CVector& z) {
  check_point(e, z);
  const CMatrix lhs = e.data.d_t * charfn_eval_full(e, z).adjoint();
  const CMatrix b = one_minus_t_zstar(e.data.tuple, z);
  const CMatrix zcol = make_row_z(z, e.data.tuple.n).adjoint();
  const CMatrix rhs =
      (zcol - e.row.adjoint()) * b.partialPivLu().solve(e.data.d_tstar);
  return op_norm(lhs - rhs);
}

double surjectivity_margin(const CharFnEvaluator& e, const CVector& z) {
  return restricted_min_singular(charfn_eval(e, z), e.dim_defect_star());
}

int charfn_coker_dim(const CharFnEvaluator& e, const CVector& z,
                     double rel_tol) {
  const CMatrix theta = charfn_eval(e, z);
  if (theta.rows() == 0 || theta.cols() == 0)
    return static_cast<int>(e.dim_defect_star());
  // theta is a contraction, so its natural scale is 1.  Thresholding against
  // max(1, sigma_max) instead of sigma_max alone keeps an all-roundoff matrix
  // (theta at a spectral point with full cokernel) at rank zero; a purely
  // relative cut would read its noise as rank one.
  const RVector sv = singular_values(theta);
  const double cut = rel_tol * std::max(1.0, sv(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return static_cast<int>(e.dim_defect_star() - rank);
}

PolyMatrix charfn_taylor(const CharFnEvaluator& e, int degree_cap) {
  if (degree_cap < 1) fail_input("charfn_taylor: degree cap must be >= 1");
  const int d = e.data.tuple.d;
  const Eigen::Index n = e.data.tuple.n;
  const Eigen::Index m = e.dim_defect();

  // A(z) = ZT* = sum_i z_i T_i*, degree-1 n x n.
  PolyMatrix a_p = PolyMatrix::zeros(d, n, n);
  for (int i = 0; i < d; ++i) {
    MultiIndex ei(static_cast<std::size_t>(d), 0);
    ei[static_cast<std::size_t>(i)] = 1;
    const CMatrix ti_star = e.data.tuple.mats[static_cast<std::size_t>(i)].adjoint();
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        a_p.at(r, c).add_term(ei, ti_star(r, c));
  }
  // cur = (ZT*)^k Z D_T Q_T, starting at k = 0.
  PolyMatrix cur = PolyMatrix::zeros(d, n, m);
  for (int i = 0; i < d; ++i) {
    MultiIndex ei(static_cast<std::size_t>(d), 0);
    ei[static_cast<std::size_t>(i)] = 1;
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        cur.at(r, c).add_term(ei,
                              e.dq(static_cast<Eigen::Index>(i) * n + r, c));
  }
  const PolyMatrix c1_pm = PolyMatrix::from_constant(e.c1, d);
  PolyMatrix theta = PolyMatrix::from_constant(e.theta_const, d);
  for (int k = 0; k < degree_cap; ++k) {
    bool all_zero = true;
    for (const auto& entry : cur.entries)
      if (!entry.is_zero()) {
        all_zero = false;
        break;
      }
    if (all_zero) break;
    theta = pm_add(theta, pm_mul(c1_pm, cur, degree_cap));
    if (k + 1 < degree_cap) cur = pm_mul(a_p, cur, degree_cap);
  }
  return theta;
}

double charfn_tail_bound(const PolyMatrix& taylor, double rate) {
  if (!(rate >= 0.0 && rate < 1.0))
    fail_input("charfn_tail_bound: rate must lie in [0, 1)");
  if (rate == 0.0) return 0.0;
  const int top = pm_degree(taylor);
  // Frobenius norm of the coefficient block per total degree.
  std::vector<double> sq(static_cast<std::size_t>(top) + 1, 0.0);
  for (const auto& entry : taylor.entries)
    for (const auto& [alpha, c] : entry.terms())
      sq[static_cast<std::size_t>(multi_total(alpha))] += std::norm(c);
  double c_fit = 0.0;
  for (int k = std::max(0, top - 2); k <= top; ++k)
    c_fit = std::max(c_fit, std::sqrt(sq[static_cast<std::size_t>(k)]) /
                                std::pow(rate, k));
  return c_fit * std::pow(rate, top + 1) / (1.0 - rate);
}

namespace {

// T^{*alpha} for every monomial of the truncation, by graded recursion.
std::vector<CMatrix> adjoint_powers(const CommutingTuple& t,
                                    const TruncatedDA& trunc) {
  std::vector<CMatrix> powers(trunc.monomials.size());
  for (std::size_t idx = 0; idx < trunc.monomials.size(); ++idx) {
    const MultiIndex& alpha = trunc.monomials[idx];
    if (multi_total(alpha) == 0) {
      powers[idx] = CMatrix::Identity(t.n, t.n);
      continue;
    }
    int first = 0;
    while (alpha[static_cast<std::size_t>(first)] == 0) ++first;
    MultiIndex parent = alpha;
    parent[static_cast<std::size_t>(first)] -= 1;
    const auto it = trunc.position.find(parent);
    powers[idx] = t.mats[static_cast<std::size_t>(first)].adjoint() *
                  powers[static_cast<std::size_t>(it->second)];
  }
  return powers;
}

}  // namespace

CMatrix canonical_dilation(const CharFnEvaluator& e, int degree_cap) {
  if (degree_cap < 0) fail_input("canonical_dilation: negative degree cap");
  const Eigen::Index mp = e.dim_defect_star();
  if (mp == 0) fail_domain("canonical_dilation: empty defect space");
  const CommutingTuple& t = e.data.tuple;
  const TruncatedDA trunc =
      make_truncation(t.d, static_cast<int>(mp), degree_cap);
  const std::vector<CMatrix> powers = adjoint_powers(t, trunc);
  CMatrix j = CMatrix::Zero(trunc.dim(), t.n);
  for (std::size_t idx = 0; idx < trunc.monomials.size(); ++idx) {
    const double scale = 1.0 / std::sqrt(trunc.weights[idx]);
    j.block(static_cast<Eigen::Index>(idx) * mp, 0, mp, t.n) =
        scale * (e.c1 * powers[idx]);
  }
  return j;
}

double dilation_isometry_defect(const CharFnEvaluator& e, int degree_cap) {
  const CMatrix j = canonical_dilation(e, degree_cap);
  const Eigen::Index n = e.data.tuple.n;
  return herm_max_eig(
      (j.adjoint() * j - CMatrix::Identity(n, n)).eval());
}

double dilation_intertwining_residual(const CharFnEvaluator& e,
                                      int degree_cap) {
  const CommutingTuple& t = e.data.tuple;
  const Eigen::Index mp = e.dim_defect_star();
  if (mp == 0) fail_domain("dilation: empty defect space");
  const TruncatedDA trunc =
      make_truncation(t.d, static_cast<int>(mp), degree_cap);
  const CMatrix j = canonical_dilation(e, degree_cap);
  double worst = 0.0;
  for (int i = 0; i < t.d; ++i) {
    PolyMatrix sym = PolyMatrix::zeros(t.d, mp, mp);
    for (Eigen::Index c = 0; c < mp; ++c)
      sym.at(c, c) = MultiPoly::variable(t.d, i);
    const CMatrix mi = mult_op_matrix(sym, trunc, trunc, true);
    worst = std::max(
        worst, op_norm(j * t.mats[static_cast<std::size_t>(i)].adjoint() -
                       mi.adjoint() * j));
  }
  return worst;
}

BeurlingReport beurling_range_check(const CharFnEvaluator& e,
                                    const QuotientModel& model,
                                    int degree_cap) {
  const CommutingTuple& t = e.data.tuple;
  if (t.d != model.tuple.d || t.n != model.tuple.n)
    fail_input("beurling_range_check: evaluator does not match model");
  for (int i = 0; i < t.d; ++i)
    if (op_norm(t.mats[static_cast<std::size_t>(i)] -
                model.tuple.mats[static_cast<std::size_t>(i)]) >
        1e-12 * std::max(1.0, tuple_norm(t)))
      fail_input("beurling_range_check: evaluator does not match model");
  const Eigen::Index m_in = e.dim_defect();
  const Eigen::Index m_out = e.dim_defect_star();
  if (m_in == 0 || m_out == 0)
    fail_domain("beurling_range_check: empty defect space");

  BeurlingReport report;
  const PolyMatrix theta_n = charfn_taylor(e, degree_cap);
  const TruncatedDA trunc_in =
      make_truncation(t.d, static_cast<int>(m_in), degree_cap);
  const TruncatedDA trunc_out =
      make_truncation(t.d, static_cast<int>(m_out), degree_cap);
  const CMatrix mhat = mult_op_matrix(theta_n, trunc_in, trunc_out, true);
  const CMatrix j = canonical_dilation(e, degree_cap);
  const CMatrix gram_out = mhat * mhat.adjoint();
  report.identity_residual = herm_max_eig(
      (gram_out + j * j.adjoint() -
       CMatrix::Identity(trunc_out.dim(), trunc_out.dim()))
          .eval());

  double r_max = 0.0;
  for (const auto& node : model.spec.nodes)
    r_max = std::max(r_max, node.lambda.norm());
  report.tail_bound = charfn_tail_bound(theta_n, r_max);

  // Range basis of the truncated multiplication operator.  The operator is a
  // truncation of a partial isometry, so the eigenvalues of M M* cluster at
  // 0 and 1 (within the tail); the cut at 1/4 separates the clusters.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(
      ((gram_out + gram_out.adjoint()) * 0.5).eval());
  if (es.info() != Eigen::Success)
    fail_numerical("beurling_range_check: eigensolver failed");
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.25) ++rank;
  report.range_rank = rank;
  const CMatrix range_b =
      pin_column_phases(es.eigenvectors().rightCols(rank));

  // The dilation sends the kernel function at node j to k_{lambda_j} (x) w_j
  // with w_j the defect image of that kernel function, so the expected range
  // is the orthocomplement (inside the D_{T*}-coefficient space) of those
  // embedded vectors.  In the model's orthonormal coordinates the kernel
  // functions are the columns of G^{1/2}.
  const auto k = static_cast<Eigen::Index>(model.spec.nodes.size());
  const CMatrix w_vectors = e.c1 * model.gram_sqrt;  // m_out x k
  KernelModelSpec range_spec;
  range_spec.d = t.d;
  range_spec.m = static_cast<int>(m_out);
  for (Eigen::Index jcol = 0; jcol < k; ++jcol) {
    if (w_vectors.col(jcol).norm() <= 1e-12)
      fail_numerical("beurling_range_check: defect image of a kernel "
                     "function collapsed");
    KernelNode node;
    node.lambda = model.spec.nodes[static_cast<std::size_t>(jcol)].lambda;
    node.v = w_vectors.col(jcol);
    range_spec.nodes.push_back(std::move(node));
  }
  const CMatrix embedded = embed_kernel_vectors(range_spec, trunc_out);
  if (numerical_rank(embedded) < k)
    fail_numerical("beurling_range_check: embedded kernel vectors are "
                   "numerically dependent");
  Eigen::HouseholderQR<CMatrix> qr(embedded);
  const CMatrix qfull =
      qr.householderQ() *
      CMatrix::Identity(trunc_out.dim(), trunc_out.dim());
  const CMatrix complement = qfull.rightCols(trunc_out.dim() - k);

  Subspace range_space{trunc_out.dim(), range_b};
  Subspace target_space{trunc_out.dim(), complement};
  report.principal_angles = principal_angles(range_space, target_space);
  report.max_angle = report.principal_angles.empty()
                         ? 0.0
                         : report.principal_angles.back();
  return report;
}

PolyMatrix annihilator_matrix(const CharFnEvaluator& e,
                              const std::vector<CVector>& basis_vectors,
                              int degree_cap) {
  const Eigen::Index m = e.dim_defect();
  const Eigen::Index mp = e.dim_defect_star();
  if (static_cast<Eigen::Index>(basis_vectors.size()) != mp)
    fail_input("annihilator_matrix: need exactly dim D_{T*} vectors");
  for (const auto& v : basis_vectors)
    if (v.size() != m)
      fail_input("annihilator_matrix: vector dimension mismatch");
  const PolyMatrix theta_n = charfn_taylor(e, degree_cap);
  const int d = e.data.tuple.d;
  PolyMatrix big = PolyMatrix::zeros(d, mp, mp);
  for (Eigen::Index j = 0; j < mp; ++j)
    for (Eigen::Index i = 0; i < mp; ++i) {
      MultiPoly s(d);
      for (Eigen::Index c = 0; c < m; ++c)
        s += basis_vectors[static_cast<std::size_t>(j)](c) * theta_n.at(i, c);
      big.at(i, j) = s;
    }
  return big;
}

MultiPoly annihilator_from_charfn(const CharFnEvaluator& e,
                                  const std::vector<CVector>& basis_vectors,
                                  int degree_cap) {
  return poly_det(annihilator_matrix(e, basis_vectors, degree_cap));
}

}  // namespace qmspec
