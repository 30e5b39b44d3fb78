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

// Exercises the shared library through its C surface only: this binary
// deliberately links nothing from the static core, so it proves the exported
// symbol set and the error-code contract are complete.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "qmspec.h"

using nlohmann::json;

namespace {

std::string dir() {
#ifdef QMSPEC_SCENARIO_DIR
  return QMSPEC_SCENARIO_DIR;
#else
  return "scenarios";
#endif
}

struct StringOut {
  char* s = nullptr;
  ~StringOut() { qms_string_free(s); }
  json parse() const {
    REQUIRE(s != nullptr);
    return json::parse(std::string(s));
  }
};

struct ModelHandle {
  qms_model* m = nullptr;
  ~ModelHandle() { qms_model_destroy(m); }
};

constexpr const char* kBareModel = R"({
  "d": 2, "m": 1,
  "nodes": [
    {"lambda": [[0.0, 0.0], [0.0, 0.0]], "v": [[1.0, 0.0]]},
    {"lambda": [[0.5, 0.0], [0.0, 0.0]], "v": [[1.0, 0.0]]}
  ]
})";

}  // namespace

TEST_CASE("version and status names") {
  const char* v = qms_version();
  REQUIRE(v != nullptr);
  CHECK(std::strchr(v, '.') != nullptr);

  CHECK(std::string(qms_status_name(QMS_OK)) == "ok");
  CHECK(std::string(qms_status_name(QMS_ERR_INVALID_ARGUMENT)) ==
        "invalid_argument");
  CHECK(std::string(qms_status_name(QMS_ERR_PARSE)) == "parse_error");
  CHECK(std::string(qms_status_name(QMS_ERR_IO)) == "io_error");
  CHECK(std::string(qms_status_name(QMS_ERR_DOMAIN)) == "domain_error");
  CHECK(std::string(qms_status_name(QMS_ERR_NUMERICAL)) == "numerical_error");
}

TEST_CASE("model creation from files and strings with getters") {
  ModelHandle h;
  qms_status st =
      qms_model_create_file((dir() + "/single_node.json").c_str(), &h.m);
  REQUIRE(st == QMS_OK);
  REQUIRE(h.m != nullptr);
  CHECK(qms_model_vars(h.m) == 2);
  CHECK(qms_model_dim(h.m) == 1);
  CHECK(qms_model_defect_dim(h.m) == 2);
  CHECK(qms_model_defect_star_dim(h.m) == 1);

  // Bare kernel-model documents (no scenario wrapper) are accepted too.
  ModelHandle bare;
  REQUIRE(qms_model_create_json(kBareModel, &bare.m) == QMS_OK);
  CHECK(qms_model_vars(bare.m) == 2);
  CHECK(qms_model_dim(bare.m) == 2);

  CHECK(qms_model_set_seed(bare.m, 7) == QMS_OK);
  CHECK(qms_model_set_seed(nullptr, 7) == QMS_ERR_INVALID_ARGUMENT);
  CHECK(qms_model_vars(nullptr) == 0);
}

TEST_CASE("creation failures map to typed statuses with messages") {
  qms_model* m = reinterpret_cast<qms_model*>(0x1);
  CHECK(qms_model_create_json("this is not json", &m) == QMS_ERR_PARSE);
  CHECK(m == nullptr);
  CHECK(std::string(qms_last_error()).size() > 0);

  CHECK(qms_model_create_file((dir() + "/nope.json").c_str(), &m) ==
        QMS_ERR_IO);

  // Structured but invalid input: coincident parallel nodes.
  CHECK(qms_model_create_file((dir() + "/degenerate_pair.json").c_str(),
                              &m) == QMS_ERR_INVALID_ARGUMENT);

  CHECK(qms_model_create_json(nullptr, &m) == QMS_ERR_INVALID_ARGUMENT);
  CHECK(qms_model_create_json(kBareModel, nullptr) ==
        QMS_ERR_INVALID_ARGUMENT);

  // Destroy tolerates NULL, as does string free.
  qms_model_destroy(nullptr);
  qms_string_free(nullptr);
}

TEST_CASE("characteristic function evaluation over the C boundary") {
  ModelHandle h;
  REQUIRE(qms_model_create_file((dir() + "/single_node.json").c_str(),
                                &h.m) == QMS_OK);

  const double point[4] = {0.3, 0.0, 0.1, 0.0};
  StringOut out;
  REQUIRE(qms_charfn_eval(h.m, point, &out.s) == QMS_OK);
  json j = out.parse();
  REQUIRE(j["matrix"].size() == 1);
  REQUIRE(j["matrix"][0].size() == 2);
  CHECK(j["matrix"][0][0][0].get<double>() == doctest::Approx(0.3));
  CHECK(j["matrix"][0][1][0].get<double>() == doctest::Approx(0.1));
  // For the model of the zero tuple the margin is |z|.
  CHECK(j["margin"].get<double>() ==
        doctest::Approx(std::sqrt(0.3 * 0.3 + 0.1 * 0.1)).epsilon(1e-10));
  CHECK(j["coker"].get<int>() == 0);
  CHECK(j["dual_residual"].get<double>() <= 1e-10);
  CHECK(j["condition"].get<double>() >= 1.0);

  // Domain failure: a point where 1 - ZT* is singular.
  ModelHandle two;
  REQUIRE(qms_model_create_json(kBareModel, &two.m) == QMS_OK);
  const double bad[4] = {2.0, 0.0, 0.0, 0.0};
  StringOut unused;
  CHECK(qms_charfn_eval(two.m, bad, &unused.s) == QMS_ERR_DOMAIN);
  CHECK(unused.s == nullptr);
  CHECK(qms_charfn_eval(two.m, nullptr, &unused.s) ==
        QMS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("koszul h-vectors over the C boundary") {
  ModelHandle h;
  REQUIRE(qms_model_create_file((dir() + "/single_node.json").c_str(),
                                &h.m) == QMS_OK);

  const double origin[4] = {0.0, 0.0, 0.0, 0.0};
  StringOut at;
  REQUIRE(qms_koszul_hvector(h.m, origin, &at.s) == QMS_OK);
  json j = at.parse();
  CHECK(j["h"] == json::array({1, 2, 1}));
  CHECK(j["taylor"].get<bool>());
  CHECK(j["right"].get<bool>());
  CHECK(j["right_margin"].get<double>() <= 1e-12);

  const double off[4] = {0.3, 0.0, 0.0, 0.0};
  StringOut away;
  REQUIRE(qms_koszul_hvector(h.m, off, &away.s) == QMS_OK);
  json k = away.parse();
  CHECK(k["h"] == json::array({0, 0, 0}));
  CHECK_FALSE(k["taylor"].get<bool>());
  CHECK(k["right_margin"].get<double>() == doctest::Approx(0.3));
}

TEST_CASE("joint spectrum and comparison over the C boundary") {
  ModelHandle h;
  REQUIRE(qms_model_create_json(kBareModel, &h.m) == QMS_OK);

  StringOut spec;
  REQUIRE(qms_joint_spectrum(h.m, &spec.s) == QMS_OK);
  json j = spec.parse();
  REQUIRE(j["spectrum"].size() == 2);
  for (const auto& p : j["spectrum"]) {
    CHECK(p["taylor"].get<bool>());
    CHECK(p["right"].get<bool>());
    CHECK(p["coker"].get<int>() == 1);
    CHECK(p["theta_margin"].get<double>() <= 1e-7);
  }

  StringOut cmp;
  REQUIRE(qms_compare_spectra(h.m, &cmp.s) == QMS_OK);
  json c = cmp.parse();
  CHECK(c["pass"].get<bool>());
  CHECK(c["symmetric_differences"].get<int>() == 0);
  CHECK(c["flags_agree"].get<bool>());
}

TEST_CASE("margin scan over the C boundary") {
  ModelHandle h;
  REQUIRE(qms_model_create_file((dir() + "/single_node.json").c_str(),
                                &h.m) == QMS_OK);
  StringOut csv;
  REQUIRE(qms_scan_margins(h.m, &csv.s) == QMS_OK);
  std::string text(csv.s);
  CHECK(text.rfind("re(z1),im(z1),re(z2),im(z2),margin,dual_residual,"
                   "in_extension_domain\n",
                   0) == 0);
  // 3 radial levels x 64 points, plus the header line.
  std::size_t rows = 0;
  for (char ch : text)
    if (ch == '\n') ++rows;
  CHECK(rows == 1 + 3 * 64);
}

TEST_CASE("scenario runs over the C boundary") {
  StringOut report;
  int pass = -1;
  REQUIRE(qms_run_scenario_file((dir() + "/single_node.json").c_str(), -1,
                                &report.s, &pass) == QMS_OK);
  CHECK(pass == 1);
  json j = report.parse();
  CHECK(j["pass"].get<bool>());
  CHECK(j["checks"].size() == 12);

  // Inline document with a check subset and a seed override.
  std::string inline_doc = std::string(R"({"model": )") + kBareModel +
                           R"(, "checks": ["chain_property"]})";
  StringOut small;
  int small_pass = -1;
  REQUIRE(qms_run_scenario_json(inline_doc.c_str(), 11, &small.s,
                                &small_pass) == QMS_OK);
  CHECK(small_pass == 1);
  json sj = small.parse();
  REQUIRE(sj["checks"].size() == 1);
  CHECK(sj["checks"][0]["name"].get<std::string>() == "chain_property");

  // Degenerate scenario: typed invalid-argument failure, no report.
  StringOut none;
  int none_pass = -1;
  CHECK(qms_run_scenario_file((dir() + "/degenerate_pair.json").c_str(), -1,
                              &none.s, &none_pass) ==
        QMS_ERR_INVALID_ARGUMENT);
  CHECK(none.s == nullptr);
  CHECK(none_pass == 0);
  CHECK(std::string(qms_last_error()).find("node") != std::string::npos);

  CHECK(qms_run_scenario_json("{]", -1, &none.s, &none_pass) ==
        QMS_ERR_PARSE);
}
