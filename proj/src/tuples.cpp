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

#include "qmspec/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qmspec/errors.hpp"

namespace qmspec {

namespace {

double strictly_lower_norm(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) s += std::norm(a(i, j));
  return std::sqrt(s);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

double point_distance(const CVector& a, const CVector& b) {
  return (a - b).norm();
}

// One triangularization attempt; fills raw with the n diagonal d-tuples.
bool triangularize_once(const CommutingTuple& t, std::uint64_t seed,
                        std::vector<CVector>& raw) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  CVector c(t.d);
  for (int i = 0; i < t.d; ++i) c(i) = Complex(g(rng), g(rng));
  const double cn = c.norm();
  if (cn == 0.0) return false;
  c /= cn;

  CMatrix s = CMatrix::Zero(t.n, t.n);
  for (int i = 0; i < t.d; ++i) s += c(i) * t.mats[i];
  Eigen::ComplexSchur<CMatrix> schur(s, /*computeU=*/true);
  if (schur.info() != Eigen::Success) return false;
  const CMatrix& u = schur.matrixU();

  std::vector<CMatrix> tri(t.d);
  for (int i = 0; i < t.d; ++i) {
    tri[i] = u.adjoint() * t.mats[i] * u;
    const double scale = std::max(1.0, op_norm(t.mats[i]));
    if (strictly_lower_norm(tri[i]) > kTriangTol * scale) return false;
  }
  raw.assign(t.n, CVector(t.d));
  for (Eigen::Index j = 0; j < t.n; ++j)
    for (int i = 0; i < t.d; ++i) raw[j](i) = tri[i](j, j);
  return true;
}

std::vector<CVector> triangularize_with_retries(const CommutingTuple& t,
                                                std::uint64_t seed) {
  std::vector<CVector> raw;
  for (int attempt = 0; attempt < 5; ++attempt)
    if (triangularize_once(t, mix_seed(seed, attempt), raw)) return raw;
  fail_numerical(
      "joint_eigenvalues: degenerate pencil (no random combination admitted a "
      "simultaneous triangularization in 5 draws)");
}

bool lex_less(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

CommutingTuple validate_tuple(std::vector<CMatrix> mats, double comm_tol) {
  if (mats.empty()) fail_input("validate_tuple: empty tuple");
  const Eigen::Index n = mats[0].rows();
  if (n < 1) fail_input("validate_tuple: empty matrices");
  for (const CMatrix& m : mats) {
    if (m.rows() != m.cols()) fail_input("validate_tuple: matrices must be square");
    if (m.rows() != n) fail_input("validate_tuple: size mismatch between entries");
    require_finite(m, "validate_tuple");
  }
  CommutingTuple t;
  t.d = static_cast<int>(mats.size());
  t.n = n;
  t.mats = std::move(mats);
  if (max_commutator_residual(t) > comm_tol)
    fail_domain("validate_tuple: not commuting");
  return t;
}

double max_commutator_residual(const CommutingTuple& t) {
  std::vector<double> norms(t.d);
  for (int i = 0; i < t.d; ++i) norms[i] = op_norm(t.mats[i]);
  double worst = 0.0;
  for (int i = 0; i < t.d; ++i)
    for (int j = i + 1; j < t.d; ++j) {
      const CMatrix c = t.mats[i] * t.mats[j] - t.mats[j] * t.mats[i];
      worst = std::max(worst, op_norm(c) / (1.0 + norms[i] * norms[j]));
    }
  return worst;
}

CommutingTuple shift_tuple(const CommutingTuple& t, const CVector& lambda) {
  if (lambda.size() != t.d) fail_input("shift_tuple: point dimension mismatch");
  CommutingTuple s;
  s.d = t.d;
  s.n = t.n;
  s.mats.reserve(t.d);
  const CMatrix id = CMatrix::Identity(t.n, t.n);
  for (int i = 0; i < t.d; ++i) s.mats.push_back(lambda(i) * id - t.mats[i]);
  return s;
}

CMatrix row_operator(const CommutingTuple& t) {
  CMatrix r(t.n, t.d * t.n);
  for (int i = 0; i < t.d; ++i) r.middleCols(i * t.n, t.n) = t.mats[i];
  return r;
}

CMatrix column_operator(const CommutingTuple& t) {
  CMatrix c(t.d * t.n, t.n);
  for (int i = 0; i < t.d; ++i) c.middleRows(i * t.n, t.n) = t.mats[i];
  return c;
}

double tuple_norm(const CommutingTuple& t) {
  double m = 0.0;
  for (const CMatrix& a : t.mats) m = std::max(m, op_norm(a));
  return m;
}

ContractionCheck is_row_contraction(const CommutingTuple& t, double tol) {
  CMatrix p = CMatrix::Zero(t.n, t.n);
  for (const CMatrix& a : t.mats) p += a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()),
                                            Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  ContractionCheck c;
  c.margin = 1.0 - lmax;
  c.contraction = lmax <= 1.0 + tol;
  return c;
}

std::vector<double> purity_defects(const CommutingTuple& t, int m_max) {
  if (m_max < 1) fail_input("purity_defects: m_max must be at least 1");
  if (!is_row_contraction(t).contraction)
    fail_domain("purity_defects: not a row contraction");
  std::vector<double> defects;
  defects.reserve(m_max);
  CMatrix x = CMatrix::Identity(t.n, t.n);
  for (int m = 0; m < m_max; ++m) {
    CMatrix next = CMatrix::Zero(t.n, t.n);
    for (const CMatrix& a : t.mats) next += a * x * a.adjoint();
    x = 0.5 * (next + next.adjoint());
    defects.push_back(herm_max_eig(x));
  }
  return defects;
}

JointSpectrum joint_eigenvalues(const CommutingTuple& t, std::uint64_t seed) {
  const std::vector<CVector> raw = triangularize_with_retries(t, seed);
  const std::vector<CVector> check =
      triangularize_with_retries(t, mix_seed(seed, 0xd1f3u) ^ 0x5bd1e995ULL);

  // Cross-draw stability: greedy multiset matching within 1e-8 (scaled).
  const double scale = std::max(1.0, tuple_norm(t));
  std::vector<bool> used(check.size(), false);
  for (const CVector& p : raw) {
    double best = -1.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < check.size(); ++j) {
      if (used[j]) continue;
      const double dd = point_distance(p, check[j]);
      if (best < 0.0 || dd < best) {
        best = dd;
        best_j = j;
      }
    }
    if (best < 0.0 || best > kTriangTol * scale)
      fail_numerical(
          "joint_eigenvalues: unresolved clustering (two independent draws "
          "disagree)");
    used[best_j] = true;
  }

  // Cluster raw diagonals: merge points within 1e-7, summing multiplicity.
  std::vector<CVector> sorted = raw;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  std::vector<CVector> centers;
  std::vector<int> mult;
  for (const CVector& p : sorted) {
    bool merged = false;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      if (point_distance(p, centers[k]) <= kClusterTol) {
        // multiplicity-weighted running mean keeps the center stable
        centers[k] = (centers[k] * static_cast<double>(mult[k]) + p) /
                     static_cast<double>(mult[k] + 1);
        ++mult[k];
        merged = true;
        break;
      }
    }
    if (!merged) {
      centers.push_back(p);
      mult.push_back(1);
    }
  }

  // Deterministic output order.
  std::vector<std::size_t> order(centers.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(centers[a], centers[b]);
  });
  JointSpectrum js;
  for (std::size_t i : order) {
    js.points.push_back(centers[i]);
    js.multiplicities.push_back(mult[i]);
  }
  return js;
}

}  // namespace qmspec
