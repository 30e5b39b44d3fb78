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

// Scenario-driven verification pipeline: builds a quotient model from a
// kernel spec, runs the spectrum computations three ways (joint eigenvalues,
// chain-complex homology, multiplier surjectivity margins), runs the
// operator-identity suites, and emits deterministic machine-readable
// reports.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qmspec/charfn.hpp"
#include "qmspec/da_model.hpp"
#include "qmspec/grid.hpp"
#include "qmspec/json_io.hpp"
#include "qmspec/koszul.hpp"

namespace qmspec {

// Central tolerance block.  Every scenario check names the tolerance it
// binds to; scenario files may override any field.
struct Tolerances {
  double rank = 1e-9;          // relative rank cut for all rank decisions
  double identity = 1e-10;     // algebraic identity residuals
  double chain = 1e-12;        // chain property, relative to max(1, |T|^2)
  double spectra_match = 1e-7; // point matching radius between spectrum sets
  double margin_zero = 1e-7;   // margin below which theta counts as
                               // non-surjective at a candidate
  double dual = 1e-9;          // dual identity, relative to 1 + condition
  double condition_cap = 1e8;  // extension-domain conditioning cut
  int range_cap = 12;          // truncation degree for range checks
  int dilation_cap = 40;       // truncation degree for the dilation isometry
  double dilation_defect = 1e-6;   // |j*j - 1| cap at dilation_cap
  double slope_rel = 0.2;          // relative slack on the decay-rate slope
  double beurling = 1e-4;          // residual/angle cap for the range check
  double annihilator_node = 1e-6;  // |det annihilator| cap at the nodes
  double radial_limit = 1e-2;      // |det| distance from 1 on radial approach
  double az_zero = 1e-3;       // vanishing-profile cap at the finest radius
  double az_floor = 1e-6;      // positive lower bound away from the spectrum
  double off_spectrum_dist = 0.1;  // distance that counts as off-spectrum
};

Json tolerances_to_json(const Tolerances& tol);
// Partial overrides: absent members keep their defaults.
Tolerances tolerances_from_json(const Json& j, const std::string& path);

// {"model": ..., "grid": ..., "tolerances": {...}, "checks": [names]};
// "name" is an optional model identifier, "checks" empty or absent runs all.
struct Scenario {
  std::string name = "model";
  KernelModelSpec model;
  GridSpec grid;
  Tolerances tolerances;
  std::vector<std::string> checks;
};

// Canonical check order; scenario reports always list results in this order.
const std::vector<std::string>& all_check_names();

Scenario scenario_from_json(const Json& j, const std::string& path);
Json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& filename);

struct CheckResult {
  std::string name;
  bool pass = false;
  double tolerance = 0.0;  // the binding tolerance, resolved to a number
  double measured = 0.0;   // headline measured value compared against it
  std::string detail;      // human-readable summary with recorded values
};

struct ScenarioReport {
  std::string name;
  bool pass = true;
  std::vector<CheckResult> checks;
  Json spectrum = Json::array();   // candidates with h-vectors and margins
  Json scan = Json::object();      // grid margin summary
  Json residuals = Json::object(); // chain/dual/dilation/beurling/adjugate
};

ScenarioReport run_scenario(const Scenario& s);
Json report_to_json(const ScenarioReport& r);

// Three-way spectrum comparison on the joint-eigenvalue candidate set:
// candidate list itself, the subset with nonvanishing homology, and the
// subset where the characteristic function loses surjectivity.  Pass
// requires empty symmetric differences under spectra_match and agreement of
// the right/full spectral flags at every candidate.
struct SpectrumComparison {
  std::vector<CVector> oracle;
  std::vector<CVector> koszul_positive;
  std::vector<CVector> margin_zero;
  std::size_t mismatches = 0;
  bool flags_agree = true;
  bool pass = false;
};

SpectrumComparison compare_spectra(const QuotientModel& model,
                                   const Tolerances& tol);
Json comparison_to_json(const SpectrumComparison& c);

// One CSV row per grid point: re/im coordinates, surjectivity margin, dual
// identity residual, and a 0/1 extension-domain flag.  Points outside the
// extension domain keep their row with nan in the evaluated columns.
std::string scan_margins_csv(const QuotientModel& model, const GridSpec& grid,
                             const Tolerances& tol);

}  // namespace qmspec
