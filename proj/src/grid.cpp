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

#include "qmspec/grid.hpp"

#include <cmath>
#include <iterator>
#include <random>

#include "qmspec/errors.hpp"

namespace qmspec {

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                           23, 29, 31, 37, 41, 43, 47, 53};

double halton(int index, int base) {
  double f = 1.0;
  double r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

}  // namespace

void validate_grid(const GridSpec& spec, int d) {
  if (d < 1) fail_input("grid: d must be at least 1");
  if (spec.points_per_sphere < 1)
    fail_input("grid: points_per_sphere must be at least 1");
  double prev = -1.0;
  for (double r : spec.radial_levels) {
    if (r < 0.0 || r > 1.0) fail_input("grid: radius outside [0, 1]");
    if (r < prev) fail_input("grid: radii must be sorted ascending");
    prev = r;
  }
  for (const auto& z : spec.extra_points) {
    if (z.size() != d) fail_input("grid: extra point dimension mismatch");
    require_finite(z, "grid extra point");
  }
}

std::vector<CVector> sphere_points(int d, int count, std::uint64_t seed) {
  if (d < 1) fail_input("sphere_points: d must be at least 1");
  if (count < 1) fail_input("sphere_points: count must be at least 1");
  const int real_dim = 2 * d;
  if (real_dim > static_cast<int>(std::size(kPrimes)))
    fail_input("sphere_points: dimension too large for the sampler");
  // Cranley-Patterson rotation of a Halton sequence, then the Gaussian map
  // (Box-Muller pairs, normalize) onto the sphere of C^d.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> shift(real_dim);
  for (double& s : shift) s = unif(rng);

  std::vector<CVector> out;
  out.reserve(count);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (int k = 0; k < count; ++k) {
    std::vector<double> g(real_dim);
    for (int j = 0; j < real_dim; j += 2) {
      double u1 = halton(k + 1, kPrimes[j]) + shift[j];
      double u2 = halton(k + 1, kPrimes[j + 1]) + shift[j + 1];
      u1 -= std::floor(u1);
      u2 -= std::floor(u2);
      const double rad = std::sqrt(-2.0 * std::log1p(-u1));
      g[j] = rad * std::cos(kTwoPi * u2);
      g[j + 1] = rad * std::sin(kTwoPi * u2);
    }
    CVector z(d);
    double norm2 = 0.0;
    for (int j = 0; j < real_dim; ++j) norm2 += g[j] * g[j];
    if (norm2 <= 0.0) {
      // All-zero draw (possible only at the sequence origin): pick a pole.
      z.setZero();
      z(0) = Complex(1.0, 0.0);
    } else {
      const double inv = 1.0 / std::sqrt(norm2);
      for (int j = 0; j < d; ++j)
        z(j) = Complex(g[2 * j] * inv, g[2 * j + 1] * inv);
    }
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<CVector> grid_points(const GridSpec& spec, int d) {
  validate_grid(spec, d);
  std::vector<CVector> out;
  out.reserve(spec.radial_levels.size() * spec.points_per_sphere +
              spec.extra_points.size());
  for (std::size_t level = 0; level < spec.radial_levels.size(); ++level) {
    const double r = spec.radial_levels[level];
    const std::uint64_t level_seed =
        spec.seed + 0x9e3779b97f4a7c15ull * (level + 1);
    for (auto& z : sphere_points(d, spec.points_per_sphere, level_seed))
      out.push_back(r * z);
  }
  for (const auto& z : spec.extra_points) out.push_back(z);
  return out;
}

std::vector<CVector> ring_points(const CVector& center, double radius,
                                 int count, std::uint64_t seed) {
  if (radius <= 0.0) fail_input("ring_points: radius must be positive");
  const int d = static_cast<int>(center.size());
  std::vector<CVector> out;
  for (const auto& u : sphere_points(d, count, seed)) {
    CVector z = center + radius * u;
    if (z.norm() <= 1.0) out.push_back(std::move(z));
  }
  return out;
}

}  // namespace qmspec
