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

#include "qmspec/koszul.hpp"

#include <algorithm>
#include <string>

#include "qmspec/errors.hpp"

namespace qmspec {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

int ExteriorBasis::position(int p, const std::vector<int>& idx) const {
  if (p < 0 || p > d) return -1;
  const auto& list = subsets[p];
  auto it = std::lower_bound(list.begin(), list.end(), idx);
  if (it == list.end() || *it != idx) return -1;
  return static_cast<int>(it - list.begin());
}

ExteriorBasis make_exterior_basis(int d) {
  if (d < 1) fail_input("make_exterior_basis: d must be at least 1");
  if (d > 24) fail_input("make_exterior_basis: exterior algebra too large");
  ExteriorBasis b;
  b.d = d;
  b.subsets.resize(d + 1);
  b.subsets[0].push_back({});
  for (int p = 1; p <= d; ++p) {
    // lexicographic enumeration of increasing p-tuples from {1..d}
    std::vector<int> cur(p);
    for (int i = 0; i < p; ++i) cur[i] = i + 1;
    while (true) {
      b.subsets[p].push_back(cur);
      int i = p - 1;
      while (i >= 0 && cur[i] == d - (p - 1 - i)) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return b;
}

KoszulComplex build_koszul(const CommutingTuple& t) {
  KoszulComplex k;
  k.tuple = t;
  const ExteriorBasis basis = make_exterior_basis(t.d);
  const Eigen::Index n = t.n;
  k.boundary.reserve(t.d);
  for (int p = 1; p <= t.d; ++p) {
    const auto& cols = basis.subsets[p];
    const auto& rows = basis.subsets[p - 1];
    CMatrix delta = CMatrix::Zero(n * static_cast<Eigen::Index>(rows.size()),
                                  n * static_cast<Eigen::Index>(cols.size()));
    for (std::size_t bcol = 0; bcol < cols.size(); ++bcol) {
      const std::vector<int>& idx = cols[bcol];
      for (int a = 0; a < p; ++a) {
        std::vector<int> sub = idx;
        sub.erase(sub.begin() + a);
        const int brow = basis.position(p - 1, sub);
        const double sign = (a % 2 == 0) ? 1.0 : -1.0;
        delta.block(brow * n, static_cast<Eigen::Index>(bcol) * n, n, n) +=
            sign * t.mats[idx[a] - 1];
      }
    }
    k.boundary.push_back(std::move(delta));
  }
  return k;
}

double chain_residual(const KoszulComplex& k) {
  double worst = 0.0;
  for (std::size_t p = 0; p + 1 < k.boundary.size(); ++p)
    worst = std::max(worst, op_norm(k.boundary[p] * k.boundary[p + 1]));
  return worst;
}

std::vector<int> homology_dims(const CommutingTuple& t, const CVector& lambda,
                               double rel_tol) {
  const KoszulComplex k = build_koszul(shift_tuple(t, lambda));
  const int d = t.d;
  const Eigen::Index n = t.n;
  // rank[p] = rank delta_p for p = 1..d; delta_0 and delta_{d+1} are zero.
  std::vector<Eigen::Index> rank(d + 2, 0);
  for (int p = 1; p <= d; ++p)
    rank[p] = numerical_rank(k.boundary[p - 1], rel_tol);
  std::vector<int> h(d + 1);
  for (int p = 0; p <= d; ++p) {
    const long dim_p = n * binomial(d, p);
    const long hp = dim_p - rank[p] - rank[p + 1];
    if (hp < 0)
      fail_numerical("homology_dims: rank tolerance inconsistency at degree " +
                     std::to_string(p));
    h[p] = static_cast<int>(hp);
  }
  return h;
}

RightSpectrumCheck in_right_spectrum(const CommutingTuple& t,
                                     const CVector& lambda, double rel_tol) {
  const CMatrix row = row_operator(shift_tuple(t, lambda));
  RightSpectrumCheck c;
  c.margin = restricted_min_singular(row, t.n);
  c.in_spectrum = numerical_rank(row, rel_tol) < t.n;
  return c;
}

int in_final_kernel(const CommutingTuple& t, const CVector& lambda,
                    double rel_tol) {
  const CMatrix col = column_operator(shift_tuple(t, lambda));
  return static_cast<int>(t.n - numerical_rank(col, rel_tol));
}

TaylorSpectrum taylor_spectrum(const CommutingTuple& t, double rel_tol,
                               std::uint64_t seed) {
  const JointSpectrum js = joint_eigenvalues(t, seed);
  TaylorSpectrum ts;
  ts.points.reserve(js.points.size());
  for (std::size_t i = 0; i < js.points.size(); ++i) {
    SpectralPoint p;
    p.point = js.points[i];
    p.multiplicity = js.multiplicities[i];
    p.homology = homology_dims(t, p.point, rel_tol);
    p.taylor = std::any_of(p.homology.begin(), p.homology.end(),
                           [](int h) { return h > 0; });
    const RightSpectrumCheck rc = in_right_spectrum(t, p.point, rel_tol);
    p.right = rc.in_spectrum;
    p.right_margin = rc.margin;
    ts.points.push_back(std::move(p));
  }
  return ts;
}

}  // namespace qmspec
