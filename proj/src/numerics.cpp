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

#include "qmspec/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "qmspec/errors.hpp"

namespace qmspec {

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

void require_finite(const CMatrix& a, const char* what) {
  if (!all_finite(a)) fail_input(std::string(what) + ": non-finite entries");
}

RVector singular_values(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return RVector(0);
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues();
}

double op_norm(const CMatrix& a) {
  RVector sv = singular_values(a);
  return sv.size() > 0 ? sv(0) : 0.0;
}

double herm_max_eig(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::Index numerical_rank(const CMatrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    fail_input("numerical_rank: rel_tol must lie in (0, 1)");
  require_finite(a, "numerical_rank");
  RVector sv = singular_values(a);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel_tol * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

CMatrix psd_sqrt(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) fail_input("psd_sqrt: matrix must be square");
  require_finite(a, "psd_sqrt");
  if (!(tol > 0.0)) fail_input("psd_sqrt: tol must be positive");
  const double scale = std::max(1.0, op_norm(a));
  if (op_norm(a - a.adjoint()) > tol * scale)
    fail_domain("psd_sqrt: matrix is not Hermitian within tolerance");
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) fail_numerical("psd_sqrt: eigensolver failed");
  RVector ev = es.eigenvalues();
  // Eigenvalues below the roundoff scale are exact zeros that the eigensolver
  // perturbed: taking their literal square root would inflate 1e-16 noise to
  // 1e-8 in the root (the square root is only Holder-1/2 at zero), so they
  // are flattened to zero before the root is formed.
  const double zero_floor = 1e-13 * scale;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol) fail_domain("psd_sqrt: matrix is not PSD");
    if (ev(i) < zero_floor) ev(i) = 0.0;
  }
  const CMatrix b =
      es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
      es.eigenvectors().adjoint();
  return 0.5 * (b + b.adjoint());
}

Subspace range_basis(const CMatrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    fail_input("range_basis: rel_tol must lie in (0, 1)");
  require_finite(a, "range_basis");
  Subspace s;
  s.ambient = a.rows();
  if (a.rows() == 0 || a.cols() == 0) {
    s.basis = CMatrix(a.rows(), 0);
    return s;
  }
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const RVector sv = svd.singularValues();
  Eigen::Index r = 0;
  if (sv(0) > 0.0) {
    const double cut = rel_tol * sv(0);
    while (r < sv.size() && sv(r) > cut) ++r;
  }
  s.basis = pin_column_phases(svd.matrixU().leftCols(r));
  return s;
}

double restricted_min_singular(const CMatrix& a, Eigen::Index target_rank) {
  if (target_rank < 0) fail_input("restricted_min_singular: negative rank");
  if (target_rank == 0) return 0.0;
  if (target_rank > std::min(a.rows(), a.cols()))
    fail_input("restricted_min_singular: target_rank exceeds matrix dimensions");
  require_finite(a, "restricted_min_singular");
  RVector sv = singular_values(a);
  return sv(target_rank - 1);
}

std::vector<double> principal_angles(const Subspace& u, const Subspace& v) {
  if (u.ambient != v.ambient)
    fail_input("principal_angles: ambient dimensions differ");
  if (u.dim() == 0 || v.dim() == 0) return {};
  const CMatrix m = u.basis.adjoint() * v.basis;
  RVector sv = singular_values(m);
  std::vector<double> angles;
  angles.reserve(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double c = std::clamp(sv(i), 0.0, 1.0);
    angles.push_back(std::acos(c));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

CMatrix pin_column_phases(CMatrix q) {
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      const double m = std::abs(q(i, j));
      if (m > best) {
        best = m;
        imax = i;
      }
    }
    if (best <= 0.0) continue;
    const Complex phase = q(imax, j) / best;
    q.col(j) *= std::conj(phase);
  }
  return q;
}

}  // namespace qmspec
