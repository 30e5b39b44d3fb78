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

// Top-level acceptance run: twelve numbered criteria covering the chain
// property, the homology identifications, the three-way spectrum agreement,
// the operator identities (dual, dilation, shift-range), the determinant
// annihilators, the sampled zero-set intersection, and the single-variable
// regressions.  Prints one PASS/FAIL line per criterion and exits nonzero
// if any fail.

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmspec/charfn.hpp"
#include "qmspec/errors.hpp"
#include "qmspec/grid.hpp"
#include "qmspec/koszul.hpp"
#include "qmspec/polynomials.hpp"
#include "qmspec/scenario.hpp"

using namespace qmspec;
using qmspec::testing::polynomial_tuple;
using qmspec::testing::random_kernel_model;
using qmspec::testing::Rng;
using qmspec::testing::single_node_origin_spec;
using qmspec::testing::two_node_spec;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Criterion {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

// Shared model zoo -----------------------------------------------------------

std::vector<CommutingTuple> tuple_zoo() {
  std::vector<CommutingTuple> zoo;
  for (int i = 0; i < 20; ++i) {
    Rng rng(4000 + 13 * static_cast<std::uint64_t>(i));
    int d = 1 + i % 3;
    Eigen::Index n = 2 + static_cast<Eigen::Index>(i % 5);  // up to 6
    zoo.push_back(polynomial_tuple(d, n, rng));
  }
  return zoo;
}

// Kernel models: the single-node and two-node references first, then ten
// seeded models (d in {2,3}, up to 4 nodes, radii in [0.1, 0.6], coefficient
// dimension up to 2).  For the decay-rate criterion the dominant node radius
// must stand clear of the runner-up, so draws without a 0.08 radius gap are
// rejected (single-radius models always qualify).
std::vector<KernelModelSpec> model_zoo() {
  std::vector<KernelModelSpec> zoo;
  zoo.push_back(single_node_origin_spec());
  zoo.push_back(two_node_spec());
  for (int i = 0; i < 10; ++i) {
    int d = 2 + i % 2;
    std::uint64_t seed = 9000 + 17 * static_cast<std::uint64_t>(i);
    for (;;) {
      Rng rng(seed);
      KernelModelSpec spec = random_kernel_model(d, rng);
      double top = 0.0, second = 0.0;
      for (const auto& node : spec.nodes) {
        double r = node.lambda.norm();
        if (r > top) {
          second = top;
          top = r;
        } else if (r > second) {
          second = r;
        }
      }
      if (top - second >= 0.08) {
        zoo.push_back(spec);
        break;
      }
      seed += 100003;  // reseed and redraw
    }
  }
  return zoo;
}

std::vector<CVector> sampled_lambdas(const CommutingTuple& t, int count,
                                     std::uint64_t seed) {
  std::vector<CVector> lambdas;
  lambdas.push_back(CVector::Zero(t.d));
  JointSpectrum js = joint_eigenvalues(t, seed);
  for (const auto& p : js.points) lambdas.push_back(p);
  Rng rng(seed + 1);
  while (static_cast<int>(lambdas.size()) < count)
    lambdas.push_back(rng.ball_point(t.d, 1.4));
  lambdas.resize(static_cast<std::size_t>(count));
  return lambdas;
}

double max_node_radius(const KernelModelSpec& spec) {
  double r = 0.0;
  for (const auto& node : spec.nodes) r = std::max(r, node.lambda.norm());
  return r;
}

double node_distance(const KernelModelSpec& spec, const CVector& z) {
  double dist = 1e300;
  for (const auto& node : spec.nodes)
    dist = std::min(dist, (z - node.lambda).norm());
  return dist;
}

std::vector<CVector> annihilator_basis(const CharFnEvaluator& e, int d) {
  CVector star = CVector::Zero(d);
  star(0) = 1.0;
  CMatrix theta_star = charfn_eval(e, star);
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(theta_star);
  CMatrix pinv = cod.pseudoInverse();
  std::vector<CVector> basis;
  for (Eigen::Index j = 0; j < theta_star.rows(); ++j)
    basis.push_back(pinv.col(j));
  return basis;
}

// Criteria -------------------------------------------------------------------

Criterion chain_property(const std::vector<CommutingTuple>& zoo) {
  Criterion c;
  double worst = 0.0;
  for (const auto& t : zoo) {
    double bound = 1e-12 * std::max(1.0, tuple_norm(t) * tuple_norm(t));
    double res = chain_residual(build_koszul(t));
    worst = std::max(worst, res / bound);
    c.require(res <= bound, "chain residual " + fmt(res) + " above " +
                                fmt(bound));
  }
  c.note("20 models, worst residual at " + fmt(worst) + " of the bound");
  return c;
}

Criterion homology_identities(const std::vector<CommutingTuple>& zoo) {
  Criterion c;
  int checked = 0;
  for (std::size_t mi = 0; mi < zoo.size(); ++mi) {
    const auto& t = zoo[mi];
    for (const auto& lambda : sampled_lambdas(t, 50, 100 + mi)) {
      std::vector<int> h = homology_dims(t, lambda);
      CommutingTuple shifted = shift_tuple(t, lambda);
      int h0 = static_cast<int>(t.n - numerical_rank(row_operator(shifted)));
      int hd = in_final_kernel(t, lambda);
      c.require(h.front() == h0, "h0 mismatch at a sampled point");
      c.require(h.back() == hd, "h_d mismatch at a sampled point");
      ++checked;
    }
  }
  c.note(std::to_string(checked) + " sampled points, exact agreement");
  return c;
}

Criterion euler_characteristic(const std::vector<CommutingTuple>& zoo) {
  Criterion c;
  int checked = 0;
  for (std::size_t mi = 0; mi < zoo.size(); ++mi) {
    const auto& t = zoo[mi];
    for (const auto& lambda : sampled_lambdas(t, 50, 500 + mi)) {
      std::vector<int> h = homology_dims(t, lambda);
      int alternating = 0, sign = 1;
      for (int v : h) {
        alternating += sign * v;
        sign = -sign;
      }
      c.require(alternating == 0, "nonzero alternating sum");
      ++checked;
    }
  }
  c.note(std::to_string(checked) + " sampled points, sum identically zero");
  return c;
}

Criterion spectrum_agreement(const std::vector<QuotientModel>& models) {
  Criterion c;
  Tolerances tol;
  for (const auto& model : models) {
    SpectrumComparison cmp = compare_spectra(model, tol);
    c.require(cmp.pass, "three-way mismatch (" +
                            std::to_string(cmp.mismatches) +
                            " symmetric differences)");
    c.require(cmp.flags_agree, "right/full spectral flags disagree");
  }
  c.note(std::to_string(models.size()) +
         " models matched within 1e-7 with agreeing flags");
  return c;
}

Criterion interior_localization(const std::vector<QuotientModel>& models,
                                const std::vector<CharFnEvaluator>& evals) {
  Criterion c;
  int checked = 0;
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    GridSpec grid;
    grid.radial_levels = {0.2, 0.45, 0.7};
    grid.points_per_sphere = 34;
    grid.seed = 600 + mi;
    for (const auto& z : grid_points(grid, models[mi].spec.d)) {
      int coker = charfn_coker_dim(evals[mi], z);
      std::vector<int> h = homology_dims(models[mi].tuple, z);
      c.require(coker == h.front(), "coker != h0 at an interior point");
      ++checked;
    }
  }
  c.note(std::to_string(checked) + " interior points, exact agreement");
  return c;
}

Criterion boundary_surjectivity(const std::vector<QuotientModel>& models,
                                const std::vector<CharFnEvaluator>& evals) {
  Criterion c;
  double global_min = 1e300;
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    double min_margin = 1e300;
    int in_domain = 0;
    for (const auto& zeta :
         sphere_points(models[mi].spec.d, 500, 700 + mi)) {
      if (!in_extension_domain(evals[mi], zeta).inside) continue;
      ++in_domain;
      min_margin = std::min(min_margin, surjectivity_margin(evals[mi], zeta));
    }
    c.require(in_domain >= 500, "fewer than 500 usable boundary points");
    c.require(min_margin > 1e-9, "margin " + fmt(min_margin) +
                                     " not positive at rank tolerance");
    global_min = std::min(global_min, min_margin);
  }
  c.note("minimum boundary margin over all models " + fmt(global_min));
  return c;
}

Criterion dual_identity(const std::vector<QuotientModel>& models,
                        const std::vector<CharFnEvaluator>& evals) {
  Criterion c;
  double worst_ratio = 0.0;
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const int d = models[mi].spec.d;
    std::vector<CVector> pts;
    for (double r : {0.35, 0.65, 0.9})
      for (const auto& z : sphere_points(d, 27, 800 + mi))
        pts.push_back(r * z);
    for (const auto& z : sphere_points(d, 20, 900 + mi)) pts.push_back(z);

    int used = 0, boundary = 0;
    for (const auto& z : pts) {
      ExtensionCheck chk = in_extension_domain(evals[mi], z);
      if (!chk.inside) continue;
      ++used;
      if (std::abs(z.norm() - 1.0) < 1e-12) ++boundary;
      double res = dual_identity_residual(evals[mi], z);
      double bound = 1e-9 * (1.0 + chk.condition);
      worst_ratio = std::max(worst_ratio, res / bound);
      c.require(res <= bound, "dual residual " + fmt(res) + " above " +
                                  fmt(bound));
    }
    c.require(used >= 100, "fewer than 100 extension-domain points");
    c.require(boundary >= 20, "fewer than 20 boundary points");
  }
  c.note("worst residual at " + fmt(worst_ratio) + " of the bound");
  return c;
}

Criterion dilation_isometry(const std::vector<QuotientModel>& models,
                            const std::vector<CharFnEvaluator>& evals) {
  Criterion c;
  double worst_defect = 0.0;
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    double direct40 = dilation_isometry_defect(evals[mi], 40);
    worst_defect = std::max(worst_defect, direct40);
    c.require(direct40 <= 1e-6,
              "defect " + fmt(direct40) + " above 1e-6 at degree 40");

    // Rate: the defect equals ||P^{N+1}(1)|| (cross-checked at degree 20,
    // where the direct Gram evaluation is still above the roundoff floor),
    // and that PSD recursion is computed in relative precision, so the
    // log-slope between degrees 20 and 40 is meaningful even below 1e-16.
    const auto& purity = models[mi].purity_curve;
    double d20 = purity[20], d40 = purity[40];
    double direct20 = dilation_isometry_defect(evals[mi], 20);
    c.require(std::abs(direct20 - d20) <= 1e-12 + 0.05 * std::max(direct20, d20),
              "dilation defect disagrees with the purity curve at degree 20");
    double r_max = max_node_radius(models[mi].spec);
    if (r_max == 0.0 || d40 <= 0.0) continue;  // exact at every degree
    double slope = (std::log(d40) - std::log(d20)) / 20.0;
    double expected = 2.0 * std::log(r_max);
    c.require(std::abs(slope - expected) <= 0.2 * std::abs(expected),
              "decay slope " + fmt(slope) + " vs expected " + fmt(expected));
  }
  c.note("worst degree-40 defect " + fmt(worst_defect));
  return c;
}

Criterion beurling_identity(const std::vector<QuotientModel>& models,
                            const std::vector<CharFnEvaluator>& evals) {
  Criterion c;
  // Single node at the origin: exact at degree 12.
  BeurlingReport a = beurling_range_check(evals[0], models[0], 12);
  c.require(a.identity_residual <= 1e-10,
            "single-node residual " + fmt(a.identity_residual));
  c.require(a.max_angle <= 1e-10, "single-node angle " + fmt(a.max_angle));

  // Two-node model: bound at degree 20, recorded again at degree 28.
  BeurlingReport b20 = beurling_range_check(evals[1], models[1], 20);
  BeurlingReport b28 = beurling_range_check(evals[1], models[1], 28);
  c.require(b20.identity_residual <= 1e-4,
            "two-node residual " + fmt(b20.identity_residual));
  c.require(b20.max_angle <= 1e-4, "two-node angle " + fmt(b20.max_angle));
  c.require(b28.identity_residual <= 1e-4,
            "two-node degree-28 residual " + fmt(b28.identity_residual));
  c.note("two-node residual " + fmt(b20.identity_residual) + " at degree 20, " +
         fmt(b28.identity_residual) + " at degree 28 (tail bounds " +
         fmt(b20.tail_bound) + ", " + fmt(b28.tail_bound) + ")");
  return c;
}

Criterion determinant_annihilator(const std::vector<QuotientModel>& models,
                                  const std::vector<CharFnEvaluator>& evals) {
  Criterion c;
  const QuotientModel& model = models[1];  // two-node reference
  const CharFnEvaluator& e = evals[1];
  std::vector<CVector> basis = annihilator_basis(e, model.spec.d);

  PolyMatrix theta_n = annihilator_matrix(e, basis, 20);
  PolyMatrix adj = poly_adjugate(theta_n);
  MultiPoly det = poly_det(theta_n);
  PolyMatrix det_id = PolyMatrix::identity(theta_n.d, theta_n.rows);
  for (Eigen::Index i = 0; i < theta_n.rows; ++i) det_id.at(i, i) = det;
  double adj_res = std::max(pm_max_coeff(pm_sub(pm_mul(theta_n, adj), det_id)),
                            pm_max_coeff(pm_sub(pm_mul(adj, theta_n), det_id)));
  c.require(adj_res <= 1e-10, "adjugate identity residual " + fmt(adj_res));

  double node_worst = 0.0;
  for (const auto& node : model.spec.nodes)
    node_worst = std::max(node_worst, std::abs(det.eval(node.lambda)));
  c.require(node_worst <= 1e-6, "node value " + fmt(node_worst));

  CVector star = CVector::Zero(model.spec.d);
  star(0) = 1.0;
  double limit_dev = 0.0;
  for (double t : {0.999}) {
    CVector z = t * star;
    limit_dev = std::abs(std::abs(det.eval(z)) - 1.0);
  }
  c.require(limit_dev <= 1e-2, "radial limit off by " + fmt(limit_dev));
  c.note("adjugate residual " + fmt(adj_res) + ", node values " +
         fmt(node_worst) + ", radial deviation " + fmt(limit_dev));
  return c;
}

Criterion az_intersection(const std::vector<QuotientModel>& models,
                          const std::vector<CharFnEvaluator>& evals) {
  Criterion c;
  const std::vector<double> radii = {0.2, 0.1, 0.05, 0.02, 0.005};
  for (std::size_t mi = 0; mi < 2; ++mi) {  // the two reference models
    const QuotientModel& model = models[mi];
    const CharFnEvaluator& e = evals[mi];
    const int d = model.spec.d;

    std::vector<CVector> nodes;
    for (const auto& node : model.spec.nodes) nodes.push_back(node.lambda);
    std::vector<MultiPoly> family = vanishing_ideal_generators(nodes, d);
    MultiPoly det =
        annihilator_from_charfn(e, annihilator_basis(e, d), 20);
    if (!det.is_zero()) family.push_back(det);

    // Vanishing profiles at every node for every family member.
    for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
      std::vector<CVector> samples;
      for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        auto ring = ring_points(nodes[ni], 0.5 * radii[ri], 32,
                                1000 + 31 * mi + 7 * ri);
        samples.insert(samples.end(), ring.begin(), ring.end());
      }
      auto approach = ring_points(nodes[ni], 5e-4, 8, 2000 + mi);
      samples.insert(samples.end(), approach.begin(), approach.end());

      for (const auto& f : family) {
        auto profile = az_profile(f, nodes[ni], radii, samples);
        c.require(profile.back().has_value(),
                  "empty finest-radius sample set");
        if (profile.back().has_value())
          c.require(*profile.back() <= 1e-3,
                    "profile " + fmt(*profile.back()) +
                        " above 1e-3 at the finest radius");
      }
    }

    // Away from the spectrum the family cannot all be small.
    GridSpec grid;
    grid.radial_levels = {0.3, 0.6, 0.9};
    grid.points_per_sphere = 64;
    grid.seed = 3000 + mi;
    double floor = 1e300;
    for (const auto& z : grid_points(grid, d)) {
      if (node_distance(model.spec, z) <= 0.1) continue;
      double best = 0.0;
      for (const auto& f : family)
        best = std::max(best, std::abs(f.eval(z)));
      floor = std::min(floor, best);
    }
    c.require(floor > 1e-6, "off-spectrum family floor " + fmt(floor));
    c.note("model " + std::to_string(mi) + " off-spectrum floor " +
           fmt(floor));
  }
  return c;
}

Criterion scalar_regressions() {
  Criterion c;
  // T = [[0]]: theta(z) = z and the spectrum is {0}.
  CMatrix zero(1, 1);
  zero << Complex(0.0, 0.0);
  CommutingTuple tz = validate_tuple({zero});
  CharFnEvaluator ez = make_evaluator(tz);
  Rng rng(2026);
  for (int i = 0; i < 5; ++i) {
    CVector z(1);
    z << rng.scalar(0.4);
    CMatrix theta = charfn_eval(ez, z);
    c.require(std::abs(theta(0, 0) - z(0)) <= 1e-12,
              "theta(z) deviates from z");
  }
  TaylorSpectrum ts = taylor_spectrum(tz);
  c.require(ts.points.size() == 1, "spectrum of the zero operator not {0}");
  if (!ts.points.empty()) {
    c.require(ts.points[0].point.norm() <= 1e-12, "spectral point not 0");
    c.require(ts.points[0].taylor, "0 not flagged spectral");
  }

  // T = [[1/2]]: Taylor coefficients of the scalar Moebius factor.
  CMatrix half(1, 1);
  half << Complex(0.5, 0.0);
  CharFnEvaluator eh = make_evaluator(validate_tuple({half}));
  PolyMatrix taylor = charfn_taylor(eh, 2);
  auto coeff = [&](int k) {
    MultiIndex alpha{k};
    auto it = taylor.at(0, 0).terms().find(alpha);
    return it == taylor.at(0, 0).terms().end() ? Complex(0.0) : it->second;
  };
  c.require(std::abs(coeff(0) - Complex(-0.5, 0.0)) <= 1e-12,
            "constant coefficient");
  c.require(std::abs(coeff(1) - Complex(0.75, 0.0)) <= 1e-12,
            "linear coefficient");
  c.require(std::abs(coeff(2) - Complex(0.375, 0.0)) <= 1e-12,
            "quadratic coefficient");
  c.note("Moebius coefficients -1/2, 3/4, 3/8 reproduced");
  return c;
}

}  // namespace

int main() {
  struct Entry {
    std::string label;
    std::function<Criterion()> run;
  };

  std::vector<CommutingTuple> tuples = tuple_zoo();
  std::vector<KernelModelSpec> specs = model_zoo();
  std::vector<QuotientModel> models;
  std::vector<CharFnEvaluator> evals;
  for (const auto& spec : specs) {
    models.push_back(quotient_tuple(spec));
    evals.push_back(make_evaluator(models.back().tuple));
  }

  std::vector<Entry> entries = {
      {"Koszul chain property", [&] { return chain_property(tuples); }},
      {"homology end identifications",
       [&] { return homology_identities(tuples); }},
      {"Euler characteristic vanishes",
       [&] { return euler_characteristic(tuples); }},
      {"three-way spectrum agreement",
       [&] { return spectrum_agreement(models); }},
      {"interior cokernel localization",
       [&] { return interior_localization(models, evals); }},
      {"boundary surjectivity margins",
       [&] { return boundary_surjectivity(models, evals); }},
      {"dual identity residuals", [&] { return dual_identity(models, evals); }},
      {"dilation isometry and decay rate",
       [&] { return dilation_isometry(models, evals); }},
      {"shift-range identity", [&] { return beurling_identity(models, evals); }},
      {"determinant annihilator", [&] {
         return determinant_annihilator(models, evals);
       }},
      {"zero-set intersection", [&] { return az_intersection(models, evals); }},
      {"scalar regressions", [] { return scalar_regressions(); }},
  };

  bool all_pass = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Criterion result;
    try {
      result = entries[i].run();
    } catch (const std::exception& ex) {
      result.pass = false;
      result.detail = std::string("exception: ") + ex.what();
    }
    all_pass = all_pass && result.pass;
    std::printf("criterion %02zu %s  %s%s%s\n", i + 1,
                result.pass ? "PASS" : "FAIL", entries[i].label.c_str(),
                result.detail.empty() ? "" : " -- ",
                result.detail.c_str());
  }
  std::printf("acceptance: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}
