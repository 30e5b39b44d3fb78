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

// JSON serialization for the library's value types.  Complex numbers are
// stored as two-element arrays [re, im]; parse failures carry the JSON path
// of the offending element.

#pragma once

#include <string>

#include <json.hpp>

#include "qmspec/da_model.hpp"
#include "qmspec/grid.hpp"
#include "qmspec/numerics.hpp"
#include "qmspec/polynomials.hpp"

namespace qmspec {

using Json = nlohmann::json;

// --- scalars and vectors ---------------------------------------------------

Json complex_to_json(const Complex& c);
Complex complex_from_json(const Json& j, const std::string& path);

Json cvector_to_json(const CVector& v);
CVector cvector_from_json(const Json& j, const std::string& path);

// --- polynomials -----------------------------------------------------------

// {"d": <int>, "terms": [{"alpha": [..], "re": <num>, "im": <num>}, ...]}
Json multipoly_to_json(const MultiPoly& f);
MultiPoly multipoly_from_json(const Json& j, const std::string& path);

// --- kernel models ---------------------------------------------------------

// {"d": <int>, "m": <int>,
//  "nodes": [{"lambda": [[re,im],..], "v": [[re,im],..]}, ...]}
Json model_spec_to_json(const KernelModelSpec& spec);
KernelModelSpec model_spec_from_json(const Json& j, const std::string& path);

// --- evaluation grids ------------------------------------------------------

// {"radial_levels": [..], "points_per_sphere": <int>, "seed": <int>,
//  "extra_points": [[[re,im],..], ...]}   (all fields optional on input)
Json grid_spec_to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const Json& j, const std::string& path);

// --- files -----------------------------------------------------------------

// Reads and parses a JSON document; open failures raise io errors, malformed
// documents raise parse errors.
Json load_json_file(const std::string& filename);

void write_text_file(const std::string& filename, const std::string& content);

// Helpers shared by other parsers (scenario files, CLI payloads).
const Json& require_member(const Json& j, const char* key,
                           const std::string& path);
int int_from_json(const Json& j, const std::string& path);
double double_from_json(const Json& j, const std::string& path);

}  // namespace qmspec
