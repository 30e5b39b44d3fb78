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

#include "qmspec/da_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qmspec/errors.hpp"

namespace qmspec {

void validate_model_spec(const KernelModelSpec& spec) {
  if (spec.d < 1) fail_input("model spec: d must be at least 1");
  if (spec.m < 1) fail_input("model spec: m must be at least 1");
  if (spec.nodes.empty()) fail_input("model spec: at least one node required");
  for (const auto& node : spec.nodes) {
    if (node.lambda.size() != spec.d)
      fail_input("model spec: node point dimension mismatch");
    if (node.v.size() != spec.m)
      fail_input("model spec: node vector dimension mismatch");
    require_finite(node.lambda, "node point");
    require_finite(node.v, "node vector");
    if (node.lambda.norm() >= 1.0)
      fail_input("model spec: node point not in the open ball");
    if (node.v.norm() == 0.0) fail_input("model spec: zero node vector");
  }
  for (std::size_t j = 0; j < spec.nodes.size(); ++j)
    for (std::size_t l = j + 1; l < spec.nodes.size(); ++l) {
      const auto& a = spec.nodes[j];
      const auto& b = spec.nodes[l];
      if ((a.lambda - b.lambda).norm() > 1e-12) continue;
      const double overlap = std::abs(b.v.dot(a.v));
      if (overlap >= a.v.norm() * b.v.norm() * (1.0 - 1e-12))
        fail_input("model spec: coincident nodes with parallel vectors");
    }
}

CMatrix gram_matrix(const KernelModelSpec& spec) {
  validate_model_spec(spec);
  const auto k = static_cast<Eigen::Index>(spec.nodes.size());
  CMatrix g(k, k);
  for (Eigen::Index l = 0; l < k; ++l)
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& nj = spec.nodes[static_cast<std::size_t>(j)];
      const auto& nl = spec.nodes[static_cast<std::size_t>(l)];
      // <f_j, f_l> = <v_j, v_l> / (1 - <lambda_l, lambda_j>)
      g(l, j) = nl.v.dot(nj.v) / (Complex(1.0, 0.0) - nj.lambda.dot(nl.lambda));
    }
  const RVector sv = singular_values(g);
  if (sv(sv.size() - 1) <= 0.0 ||
      sv(0) / sv(sv.size() - 1) > kGramConditionCap)
    fail_input("gram_matrix: nearly dependent nodes");
  return g;
}

namespace {

// Hermitian inverse square root via the eigendecomposition of a PSD matrix
// already known to be well conditioned.
CMatrix herm_inv_sqrt(const CMatrix& a, const char* what) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(((a + a.adjoint()) * 0.5).eval());
  if (es.info() != Eigen::Success)
    fail_numerical(std::string(what) + ": eigensolver failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    fail_numerical(std::string(what) + ": matrix not positive definite");
  const CVector inv_root =
      es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>();
  return es.eigenvectors() * inv_root.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

QuotientModel quotient_tuple(const KernelModelSpec& spec) {
  QuotientModel model;
  model.spec = spec;
  model.gram = gram_matrix(spec);
  model.gram_sqrt = psd_sqrt(model.gram);
  model.gram_sqrt_inv = herm_inv_sqrt(model.gram, "quotient_tuple gram");

  const auto k = static_cast<Eigen::Index>(spec.nodes.size());
  std::vector<CMatrix> mats;
  mats.reserve(static_cast<std::size_t>(spec.d));
  for (int i = 0; i < spec.d; ++i) {
    CVector diag(k);
    for (Eigen::Index j = 0; j < k; ++j)
      diag(j) = spec.nodes[static_cast<std::size_t>(j)].lambda(i);
    // T_i* = G^{1/2} diag(conj(lambda_i)) G^{-1/2}; store T_i.
    const CMatrix ti_star = model.gram_sqrt *
                            diag.conjugate().asDiagonal().toDenseMatrix() *
                            model.gram_sqrt_inv;
    mats.push_back(ti_star.adjoint());
  }
  model.tuple = validate_tuple(std::move(mats));
  const ContractionCheck cc = is_row_contraction(model.tuple);
  if (!cc.contraction)
    fail_numerical("quotient_tuple: model is not a row contraction");

  // Purity validation: the defect sequence must decrease and reach either
  // the absolute tolerance or the level expected from the node radii.
  model.purity_curve = purity_defects(model.tuple, kPurityIterations);
  double r_max = 0.0;
  for (const auto& node : spec.nodes)
    r_max = std::max(r_max, node.lambda.norm());
  const double expected =
      1e3 * std::pow(r_max, 2.0 * static_cast<double>(kPurityIterations));
  for (std::size_t i = 1; i < model.purity_curve.size(); ++i)
    if (model.purity_curve[i] > model.purity_curve[i - 1] + 1e-12)
      fail_numerical("quotient_tuple: purity defects failed to decrease");
  const double last = model.purity_curve.back();
  if (last > kPureTol && last > expected)
    fail_numerical("quotient_tuple: purity validation failed");
  return model;
}

namespace {

double factorial_as_double(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double da_weight(const MultiIndex& alpha) {
  double num = 1.0;
  for (int a : alpha) num *= factorial_as_double(a);
  return num / factorial_as_double(multi_total(alpha));
}

std::vector<MultiIndex> monomials_up_to(int d, int max_degree) {
  if (d < 1) fail_input("monomials_up_to: d must be at least 1");
  if (max_degree < 0) fail_input("monomials_up_to: negative degree cap");
  std::vector<MultiIndex> out;
  MultiIndex alpha(static_cast<std::size_t>(d), 0);
  for (int t = 0; t <= max_degree; ++t) {
    // Smallest composition of t in lex order: all mass on the last slot.
    std::fill(alpha.begin(), alpha.end(), 0);
    alpha[static_cast<std::size_t>(d) - 1] = t;
    while (true) {
      out.push_back(alpha);
      // Successor: rightmost pivot < d-1 with mass strictly to its right
      // gains one unit; the remainder collapses onto the last slot.
      int pivot = -1;
      int tail = alpha[static_cast<std::size_t>(d) - 1];
      for (int j = d - 2; j >= 0; --j) {
        if (tail > 0) {
          pivot = j;
          break;
        }
        tail += alpha[static_cast<std::size_t>(j)];
      }
      if (pivot < 0) break;
      int rest = -1;
      for (int j = pivot + 1; j < d; ++j) {
        rest += alpha[static_cast<std::size_t>(j)];
        alpha[static_cast<std::size_t>(j)] = 0;
      }
      alpha[static_cast<std::size_t>(pivot)] += 1;
      alpha[static_cast<std::size_t>(d) - 1] = rest;
    }
  }
  return out;
}

Eigen::Index TruncatedDA::index_of(const MultiIndex& alpha, int k) const {
  if (k < 0 || k >= m) fail_input("TruncatedDA: coefficient index range");
  const auto it = position.find(alpha);
  if (it == position.end()) return -1;
  return it->second * m + k;
}

TruncatedDA make_truncation(int d, int m, int degree_cap) {
  if (m < 1) fail_input("make_truncation: m must be at least 1");
  TruncatedDA t;
  t.d = d;
  t.m = m;
  t.degree_cap = degree_cap;
  t.monomials = monomials_up_to(d, degree_cap);
  t.weights.reserve(t.monomials.size());
  for (const auto& alpha : t.monomials) t.weights.push_back(da_weight(alpha));
  for (std::size_t i = 0; i < t.monomials.size(); ++i)
    t.position.emplace(t.monomials[i], static_cast<Eigen::Index>(i));
  return t;
}

CMatrix mult_op_matrix(const PolyMatrix& symbol, const TruncatedDA& src,
                       const TruncatedDA& dst, bool truncate_overflow) {
  if (symbol.d != src.d || src.d != dst.d)
    fail_input("mult_op_matrix: variable count mismatch");
  if (symbol.cols != src.m || symbol.rows != dst.m)
    fail_input("mult_op_matrix: symbol shape mismatch");
  if (!truncate_overflow && dst.degree_cap < src.degree_cap + pm_degree(symbol))
    fail_input("mult_op_matrix: degree overflow");
  CMatrix mat = CMatrix::Zero(dst.dim(), src.dim());
  MultiIndex gamma(static_cast<std::size_t>(src.d), 0);
  for (std::size_t a = 0; a < src.monomials.size(); ++a) {
    const MultiIndex& alpha = src.monomials[a];
    const double w_alpha = src.weights[a];
    for (Eigen::Index kp = 0; kp < symbol.rows; ++kp)
      for (Eigen::Index kc = 0; kc < symbol.cols; ++kc) {
        const MultiPoly& entry = symbol.at(kp, kc);
        for (const auto& [beta, coeff] : entry.terms()) {
          for (int i = 0; i < src.d; ++i)
            gamma[static_cast<std::size_t>(i)] =
                alpha[static_cast<std::size_t>(i)] +
                beta[static_cast<std::size_t>(i)];
          const auto it = dst.position.find(gamma);
          if (it == dst.position.end()) {
            if (truncate_overflow) continue;
            fail_input("mult_op_matrix: degree overflow");
          }
          const Eigen::Index row = it->second * dst.m + kp;
          const Eigen::Index col = static_cast<Eigen::Index>(a) * src.m + kc;
          const double w_gamma =
              dst.weights[static_cast<std::size_t>(it->second)];
          mat(row, col) += coeff * std::sqrt(w_gamma / w_alpha);
        }
      }
  }
  return mat;
}

CMatrix embed_kernel_vectors(const KernelModelSpec& spec,
                             const TruncatedDA& trunc) {
  validate_model_spec(spec);
  if (trunc.d != spec.d || trunc.m != spec.m)
    fail_input("embed_kernel_vectors: truncation mismatch");
  const auto k = static_cast<Eigen::Index>(spec.nodes.size());
  CMatrix e = CMatrix::Zero(trunc.dim(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& node = spec.nodes[static_cast<std::size_t>(j)];
    for (std::size_t a = 0; a < trunc.monomials.size(); ++a) {
      const MultiIndex& gamma = trunc.monomials[a];
      Complex lam_pow(1.0, 0.0);
      for (int i = 0; i < spec.d; ++i)
        for (int p = 0; p < gamma[static_cast<std::size_t>(i)]; ++p)
          lam_pow *= std::conj(node.lambda(i));
      const double scale = 1.0 / std::sqrt(trunc.weights[a]);
      for (int c = 0; c < spec.m; ++c)
        e(static_cast<Eigen::Index>(a) * spec.m + c, j) =
            scale * lam_pow * node.v(c);
    }
  }
  return e;
}

CVector eval_truncated(const CVector& coeffs, const TruncatedDA& trunc,
                       const CVector& z) {
  if (coeffs.size() != trunc.dim())
    fail_input("eval_truncated: coefficient length mismatch");
  if (z.size() != trunc.d) fail_input("eval_truncated: point dimension");
  CVector value = CVector::Zero(trunc.m);
  for (std::size_t a = 0; a < trunc.monomials.size(); ++a) {
    const MultiIndex& alpha = trunc.monomials[a];
    Complex z_pow(1.0, 0.0);
    for (int i = 0; i < trunc.d; ++i)
      for (int p = 0; p < alpha[static_cast<std::size_t>(i)]; ++p)
        z_pow *= z(i);
    const Complex fac = z_pow / std::sqrt(trunc.weights[a]);
    for (int c = 0; c < trunc.m; ++c)
      value(c) += fac * coeffs(static_cast<Eigen::Index>(a) * trunc.m + c);
  }
  return value;
}

double compression_residual(const KernelModelSpec& spec, int degree_cap) {
  if (degree_cap < 1) fail_input("compression_residual: cap must be >= 1");
  const QuotientModel model = quotient_tuple(spec);
  const TruncatedDA trunc = make_truncation(spec.d, spec.m, degree_cap);
  // Embedded orthonormalized model basis, polar-orthonormalized inside the
  // truncated space (truncation slightly deforms the embedded Gram).
  const CMatrix b = embed_kernel_vectors(spec, trunc) * model.gram_sqrt_inv;
  const CMatrix b_orth = b * herm_inv_sqrt((b.adjoint() * b).eval(),
                                           "compression_residual basis");
  double worst = 0.0;
  for (int i = 0; i < spec.d; ++i) {
    PolyMatrix sym = PolyMatrix::zeros(spec.d, spec.m, spec.m);
    for (int c = 0; c < spec.m; ++c)
      sym.at(c, c) = MultiPoly::variable(spec.d, i);
    // Compression of the truncated coordinate multiplier to the model space.
    const CMatrix mi = mult_op_matrix(sym, trunc, trunc, true);
    const CMatrix compressed = b_orth.adjoint() * mi * b_orth;
    worst = std::max(worst, op_norm(compressed - model.tuple.mats[i]));
  }
  return worst;
}

}  // namespace qmspec
