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

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "qmspec/errors.hpp"
#include "qmspec/koszul.hpp"

using namespace qmspec;
using qmspec::testing::naive_koszul_homology;
using qmspec::testing::polynomial_tuple;
using qmspec::testing::Rng;

namespace {

CommutingTuple zero_tuple(int d, Eigen::Index n) {
  std::vector<CMatrix> mats(static_cast<std::size_t>(d), CMatrix::Zero(n, n));
  return validate_tuple(std::move(mats));
}

}  // namespace

TEST_CASE("binomial closed forms") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(10, 3) == 120);
}

TEST_CASE("exterior basis enumerates increasing tuples in lex order") {
  ExteriorBasis basis = make_exterior_basis(3);
  REQUIRE(basis.subsets.size() == 4);
  CHECK(basis.subsets[0].size() == 1);
  CHECK(basis.subsets[1].size() == 3);
  CHECK(basis.subsets[2].size() == 3);
  CHECK(basis.subsets[3].size() == 1);
  CHECK(basis.subsets[2][0] == std::vector<int>{1, 2});
  CHECK(basis.subsets[2][1] == std::vector<int>{1, 3});
  CHECK(basis.subsets[2][2] == std::vector<int>{2, 3});
  CHECK(basis.position(2, {1, 3}) == 1);
  CHECK(basis.position(2, {3, 1}) == -1);
  CHECK_THROWS_AS(make_exterior_basis(0), Error);
}

TEST_CASE("boundaries vanish for the zero tuple at the origin") {
  CommutingTuple t = zero_tuple(2, 1);
  KoszulComplex k = build_koszul(t);
  REQUIRE(k.boundary.size() == 2);
  CHECK(op_norm(k.boundary[0]) == 0.0);
  CHECK(op_norm(k.boundary[1]) == 0.0);
  CHECK(chain_residual(k) == 0.0);

  std::vector<int> h = homology_dims(t, CVector::Zero(2));
  REQUIRE(h.size() == 3);
  CHECK(h[0] == 1);
  CHECK(h[1] == 2);  // n * C(2,1) with all boundaries zero
  CHECK(h[2] == 1);

  CVector away(2);
  away << Complex(0.3, 0.0), Complex(0.1, 0.0);
  std::vector<int> h_away = homology_dims(t, away);
  CHECK(h_away == std::vector<int>{0, 0, 0});
}

TEST_CASE("single-variable complexes reduce to kernel and cokernel") {
  CMatrix m(1, 1);
  m << Complex(0.5, 0.0);
  CommutingTuple t = validate_tuple({m});

  CVector at(1), off(1);
  at << Complex(0.5, 0.0);
  off << Complex(0.0, 0.0);
  CHECK(homology_dims(t, at) == std::vector<int>{1, 1});
  CHECK(homology_dims(t, off) == std::vector<int>{0, 0});
}

TEST_CASE("homology agrees with the independent bitmask assembly") {
  Rng rng(207);
  for (int trial = 0; trial < 12; ++trial) {
    int d = 1 + static_cast<int>(rng.gen() % 3);
    Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.gen() % 4);
    CommutingTuple t = polynomial_tuple(d, n, rng);

    std::vector<CVector> lambdas;
    lambdas.push_back(CVector::Zero(d));
    lambdas.push_back(rng.ball_point(d, 1.5));
    JointSpectrum js = joint_eigenvalues(t, 3 + trial);
    for (std::size_t i = 0; i < js.points.size() && i < 3; ++i)
      lambdas.push_back(js.points[i]);

    for (const auto& lambda : lambdas) {
      std::vector<int> lib = homology_dims(t, lambda);
      std::vector<int> oracle = naive_koszul_homology(t, lambda);
      CHECK(lib == oracle);
    }
  }
}

TEST_CASE("end identities and the vanishing alternating sum") {
  Rng rng(307);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 1 + static_cast<int>(rng.gen() % 3);
    Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.gen() % 4);
    CommutingTuple t = polynomial_tuple(d, n, rng);

    std::vector<CVector> lambdas = {CVector::Zero(d), rng.ball_point(d, 1.2)};
    JointSpectrum js = joint_eigenvalues(t, 41 + trial);
    if (!js.points.empty()) lambdas.push_back(js.points.front());

    for (const auto& lambda : lambdas) {
      std::vector<int> h = homology_dims(t, lambda);
      REQUIRE(h.size() == static_cast<std::size_t>(d) + 1);

      CommutingTuple shifted = shift_tuple(t, lambda);
      Eigen::Index row_rank = numerical_rank(row_operator(shifted));
      CHECK(h.front() == static_cast<int>(n - row_rank));
      CHECK(h.back() == in_final_kernel(t, lambda));

      int alternating = 0, sign = 1;
      for (int v : h) {
        alternating += sign * v;
        sign = -sign;
      }
      CHECK(alternating == 0);
    }
  }
}

TEST_CASE("chain residual is roundoff for commuting tuples") {
  Rng rng(401);
  for (int trial = 0; trial < 6; ++trial) {
    CommutingTuple t = polynomial_tuple(2 + trial % 2, 4, rng);
    KoszulComplex k = build_koszul(t);
    double scale = std::max(1.0, tuple_norm(t) * tuple_norm(t));
    CHECK(chain_residual(k) <= 1e-12 * scale);
  }
}

TEST_CASE("right spectrum membership and margins for scalar tuples") {
  CommutingTuple t = {2, 1, {}};
  CMatrix a(1, 1), b(1, 1);
  a << Complex(0.3, 0.0);
  b << Complex(0.0, 0.4);
  t = validate_tuple({a, b});

  CVector at(2);
  at << Complex(0.3, 0.0), Complex(0.0, 0.4);
  RightSpectrumCheck hit = in_right_spectrum(t, at);
  CHECK(hit.in_spectrum);
  CHECK(hit.margin == doctest::Approx(0.0).epsilon(1e-14));

  CVector off(2);
  off << Complex(0.3, 0.0), Complex(0.0, 0.0);
  RightSpectrumCheck miss = in_right_spectrum(t, off);
  CHECK_FALSE(miss.in_spectrum);
  // For n = 1 the margin is the Euclidean distance to the point.
  CHECK(miss.margin == doctest::Approx(0.4));
}

TEST_CASE("taylor_spectrum flags every candidate of a diagonal pair") {
  CMatrix t1 = CMatrix::Zero(3, 3), t2 = CMatrix::Zero(3, 3);
  t1.diagonal() << Complex(0.1, 0.0), Complex(0.5, 0.0), Complex(-0.2, 0.3);
  t2.diagonal() << Complex(0.2, 0.0), Complex(-0.1, 0.0), Complex(0.0, 0.1);
  CommutingTuple t = validate_tuple({t1, t2});

  TaylorSpectrum ts = taylor_spectrum(t);
  REQUIRE(ts.points.size() == 3);
  for (const auto& p : ts.points) {
    CHECK(p.taylor);
    CHECK(p.right);
    CHECK(p.multiplicity == 1);
    REQUIRE(p.homology.size() == 3);
    CHECK(p.homology[0] == 1);  // one-dimensional cokernel at each node
    CHECK(p.right_margin <= 1e-10);
  }
}
