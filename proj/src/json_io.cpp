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

#include "qmspec/json_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "qmspec/errors.hpp"

namespace qmspec {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail_parse(path + ": " + what);
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string member(const std::string& path, const char* key) {
  return path + "." + key;
}

}  // namespace

const Json& require_member(const Json& j, const char* key,
                           const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing member '") + key + "'");
  return *it;
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

double double_from_json(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

Json complex_to_json(const Complex& c) {
  return Json::array({c.real(), c.imag()});
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    bad(path, "expected a two-element array [re, im]");
  return {double_from_json(j[0], item(path, 0)),
          double_from_json(j[1], item(path, 1))};
}

Json cvector_to_json(const CVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(complex_to_json(v(i)));
  return arr;
}

CVector cvector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], item(path, i));
  return v;
}

Json multipoly_to_json(const MultiPoly& f) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : f.terms()) {
    Json t;
    t["alpha"] = alpha;
    t["re"] = c.real();
    t["im"] = c.imag();
    terms.push_back(std::move(t));
  }
  Json j;
  j["d"] = f.vars();
  j["terms"] = std::move(terms);
  return j;
}

MultiPoly multipoly_from_json(const Json& j, const std::string& path) {
  const int d = int_from_json(require_member(j, "d", path), member(path, "d"));
  if (d < 1) bad(member(path, "d"), "variable count must be positive");
  MultiPoly f(d);
  const Json& terms = require_member(j, "terms", path);
  const std::string terms_path = member(path, "terms");
  if (!terms.is_array()) bad(terms_path, "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Json& t = terms[i];
    const std::string tpath = item(terms_path, i);
    const Json& alpha_j = require_member(t, "alpha", tpath);
    const std::string apath = member(tpath, "alpha");
    if (!alpha_j.is_array()) bad(apath, "expected an array of exponents");
    MultiIndex alpha;
    alpha.reserve(alpha_j.size());
    for (std::size_t a = 0; a < alpha_j.size(); ++a) {
      const int e = int_from_json(alpha_j[a], item(apath, a));
      if (e < 0) bad(item(apath, a), "exponents must be nonnegative");
      alpha.push_back(e);
    }
    if (static_cast<int>(alpha.size()) != d)
      bad(apath, "exponent count does not match 'd'");
    const double re =
        double_from_json(require_member(t, "re", tpath), member(tpath, "re"));
    const double im =
        double_from_json(require_member(t, "im", tpath), member(tpath, "im"));
    f.add_term(alpha, Complex(re, im));
  }
  return f;
}

Json model_spec_to_json(const KernelModelSpec& spec) {
  Json nodes = Json::array();
  for (const auto& node : spec.nodes) {
    Json n;
    n["lambda"] = cvector_to_json(node.lambda);
    n["v"] = cvector_to_json(node.v);
    nodes.push_back(std::move(n));
  }
  Json j;
  j["d"] = spec.d;
  j["m"] = spec.m;
  j["nodes"] = std::move(nodes);
  return j;
}

KernelModelSpec model_spec_from_json(const Json& j, const std::string& path) {
  KernelModelSpec spec;
  spec.d = int_from_json(require_member(j, "d", path), member(path, "d"));
  spec.m = int_from_json(require_member(j, "m", path), member(path, "m"));
  const Json& nodes = require_member(j, "nodes", path);
  const std::string npath = member(path, "nodes");
  if (!nodes.is_array()) bad(npath, "expected an array of nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string node_path = item(npath, i);
    KernelNode node;
    node.lambda = cvector_from_json(
        require_member(nodes[i], "lambda", node_path),
        member(node_path, "lambda"));
    node.v = cvector_from_json(require_member(nodes[i], "v", node_path),
                               member(node_path, "v"));
    spec.nodes.push_back(std::move(node));
  }
  validate_model_spec(spec);
  return spec;
}

Json grid_spec_to_json(const GridSpec& spec) {
  Json j;
  j["radial_levels"] = spec.radial_levels;
  j["points_per_sphere"] = spec.points_per_sphere;
  j["seed"] = spec.seed;
  Json extras = Json::array();
  for (const auto& p : spec.extra_points) extras.push_back(cvector_to_json(p));
  j["extra_points"] = std::move(extras);
  return j;
}

GridSpec grid_spec_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  GridSpec spec;
  if (j.contains("radial_levels")) {
    const Json& levels = j["radial_levels"];
    const std::string lpath = member(path, "radial_levels");
    if (!levels.is_array()) bad(lpath, "expected an array of radii");
    spec.radial_levels.clear();
    for (std::size_t i = 0; i < levels.size(); ++i)
      spec.radial_levels.push_back(
          double_from_json(levels[i], item(lpath, i)));
  }
  if (j.contains("points_per_sphere"))
    spec.points_per_sphere = int_from_json(
        j["points_per_sphere"], member(path, "points_per_sphere"));
  if (j.contains("seed")) {
    const Json& s = j["seed"];
    if (!s.is_number_integer() && !s.is_number_unsigned())
      bad(member(path, "seed"), "expected an integer");
    spec.seed = s.get<std::uint64_t>();
  }
  if (j.contains("extra_points")) {
    const Json& extras = j["extra_points"];
    const std::string epath = member(path, "extra_points");
    if (!extras.is_array()) bad(epath, "expected an array of points");
    for (std::size_t i = 0; i < extras.size(); ++i)
      spec.extra_points.push_back(
          cvector_from_json(extras[i], item(epath, i)));
  }
  return spec;
}

Json load_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) fail_io("cannot open file: " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail_io("read failure: " + filename);
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) fail_parse("malformed JSON in " + filename);
  return j;
}

void write_text_file(const std::string& filename, const std::string& content) {
  std::ofstream out(filename);
  if (!out) fail_io("cannot open file for writing: " + filename);
  out << content;
  out.flush();
  if (!out) fail_io("write failure: " + filename);
}

}  // namespace qmspec
