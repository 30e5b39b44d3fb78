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

// Deterministic sampling of the closed unit ball of C^d: seeded
// low-discrepancy sphere points, multi-radius grids and rings around a
// center, shared by margin scans and approximate-zero-set profiles.

#pragma once

#include <cstdint>
#include <vector>

#include "qmspec/numerics.hpp"

namespace qmspec {

// Sampling plan for the closed unit ball of C^d: quasi-uniform spheres at
// the given radii plus explicit extra points.
struct GridSpec {
  std::vector<double> radial_levels;  // ascending, each in [0, 1]
  int points_per_sphere = 64;
  std::uint64_t seed = 1;
  std::vector<CVector> extra_points;
};

void validate_grid(const GridSpec& spec, int d);

// count quasi-uniform points on the unit sphere of C^d (deterministic for a
// fixed seed; low-discrepancy sequence pushed through the Gaussian map).
std::vector<CVector> sphere_points(int d, int count, std::uint64_t seed);

// All sphere levels scaled by their radii, followed by the extra points.
std::vector<CVector> grid_points(const GridSpec& spec, int d);

// center + radius * (unit sphere samples); samples falling outside the
// closed unit ball are dropped, so fewer than `count` points may return.
std::vector<CVector> ring_points(const CVector& center, double radius,
                                 int count, std::uint64_t seed);

}  // namespace qmspec
