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

#include "qmspec.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "qmspec/charfn.hpp"
#include "qmspec/errors.hpp"
#include "qmspec/json_io.hpp"
#include "qmspec/scenario.hpp"

namespace {

thread_local std::string g_last_error;

qms_status status_of(qmspec::ErrorKind kind) {
  switch (kind) {
    case qmspec::ErrorKind::input:
      return QMS_ERR_INVALID_ARGUMENT;
    case qmspec::ErrorKind::parse:
      return QMS_ERR_PARSE;
    case qmspec::ErrorKind::io:
      return QMS_ERR_IO;
    case qmspec::ErrorKind::domain:
      return QMS_ERR_DOMAIN;
    case qmspec::ErrorKind::numerical:
      return QMS_ERR_NUMERICAL;
  }
  return QMS_ERR_INTERNAL;
}

template <typename F>
qms_status guarded(F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return QMS_OK;
  } catch (const qmspec::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QMS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QMS_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qms_status arg_error(const char* msg) {
  g_last_error = msg;
  return QMS_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct qms_model {
  qmspec::Scenario scenario;
  qmspec::QuotientModel model;
  qmspec::CharFnEvaluator evaluator;
};

namespace {

qmspec::Scenario scenario_from_document(const qmspec::Json& doc) {
  if (doc.is_object() && doc.contains("model"))
    return qmspec::scenario_from_json(doc, "scenario");
  qmspec::Scenario s;
  s.model = qmspec::model_spec_from_json(doc, "model");
  s.grid.radial_levels = {0.3, 0.6, 0.9};
  return s;
}

qms_model* build_model(const qmspec::Json& doc) {
  auto holder = new qms_model{scenario_from_document(doc), {}, {}};
  try {
    holder->model = qmspec::quotient_tuple(holder->scenario.model);
    holder->evaluator = qmspec::make_evaluator(
        holder->model.tuple, holder->scenario.tolerances.condition_cap);
  } catch (...) {
    delete holder;
    throw;
  }
  return holder;
}

qmspec::CVector point_from_doubles(const qms_model* model,
                                   const double* point) {
  const int d = model->scenario.model.d;
  qmspec::CVector z(d);
  for (int i = 0; i < d; ++i)
    z(i) = qmspec::Complex(point[2 * i], point[2 * i + 1]);
  return z;
}

qmspec::Json spectrum_json(const qms_model* m) {
  const qmspec::TaylorSpectrum spectrum =
      qmspec::taylor_spectrum(m->model.tuple, m->scenario.tolerances.rank,
                              m->scenario.grid.seed);
  qmspec::Json arr = qmspec::Json::array();
  for (const auto& p : spectrum.points) {
    qmspec::Json e;
    e["point"] = qmspec::cvector_to_json(p.point);
    e["multiplicity"] = p.multiplicity;
    e["h"] = p.homology;
    e["taylor"] = p.taylor;
    e["right"] = p.right;
    e["right_margin"] = p.right_margin;
    e["theta_margin"] = qmspec::surjectivity_margin(m->evaluator, p.point);
    e["coker"] = qmspec::charfn_coker_dim(m->evaluator, p.point,
                                          m->scenario.tolerances.rank);
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace

extern "C" {

const char* qms_version(void) { return "0.1.0"; }

const char* qms_status_name(qms_status status) {
  switch (status) {
    case QMS_OK:
      return "ok";
    case QMS_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case QMS_ERR_PARSE:
      return "parse_error";
    case QMS_ERR_IO:
      return "io_error";
    case QMS_ERR_DOMAIN:
      return "domain_error";
    case QMS_ERR_NUMERICAL:
      return "numerical_error";
    case QMS_ERR_INTERNAL:
      return "internal_error";
  }
  return "unknown";
}

const char* qms_last_error(void) { return g_last_error.c_str(); }

void qms_string_free(char* s) { std::free(s); }

qms_status qms_model_create_json(const char* json_text, qms_model** out) {
  if (json_text == nullptr || out == nullptr)
    return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    qmspec::Json doc =
        qmspec::Json::parse(std::string(json_text), nullptr, false);
    if (doc.is_discarded()) qmspec::fail_parse("malformed JSON document");
    *out = build_model(doc);
  });
}

qms_status qms_model_create_file(const char* path, qms_model** out) {
  if (path == nullptr || out == nullptr) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] { *out = build_model(qmspec::load_json_file(path)); });
}

void qms_model_destroy(qms_model* model) { delete model; }

qms_status qms_model_set_seed(qms_model* model, unsigned long long seed) {
  if (model == nullptr) return arg_error("null model");
  model->scenario.grid.seed = seed;
  g_last_error.clear();
  return QMS_OK;
}

int qms_model_vars(const qms_model* model) {
  return model == nullptr ? 0 : model->scenario.model.d;
}

int qms_model_dim(const qms_model* model) {
  return model == nullptr ? 0 : static_cast<int>(model->model.tuple.n);
}

int qms_model_defect_dim(const qms_model* model) {
  return model == nullptr ? 0
                          : static_cast<int>(model->evaluator.dim_defect());
}

int qms_model_defect_star_dim(const qms_model* model) {
  return model == nullptr
             ? 0
             : static_cast<int>(model->evaluator.dim_defect_star());
}

qms_status qms_charfn_eval(const qms_model* model, const double* point,
                           char** json_out) {
  if (model == nullptr || point == nullptr || json_out == nullptr)
    return arg_error("null argument");
  *json_out = nullptr;
  return guarded([&] {
    const qmspec::CVector z = point_from_doubles(model, point);
    const qmspec::ExtensionCheck ec =
        qmspec::in_extension_domain(model->evaluator, z);
    const qmspec::CMatrix theta = qmspec::charfn_eval(model->evaluator, z);
    qmspec::Json j;
    j["point"] = qmspec::cvector_to_json(z);
    qmspec::Json rows = qmspec::Json::array();
    for (Eigen::Index r = 0; r < theta.rows(); ++r) {
      qmspec::Json row = qmspec::Json::array();
      for (Eigen::Index c = 0; c < theta.cols(); ++c)
        row.push_back(qmspec::complex_to_json(theta(r, c)));
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    j["margin"] = qmspec::surjectivity_margin(model->evaluator, z);
    j["coker"] = qmspec::charfn_coker_dim(model->evaluator, z,
                                          model->scenario.tolerances.rank);
    j["dual_residual"] = qmspec::dual_identity_residual(model->evaluator, z);
    j["condition"] = ec.condition;
    *json_out = dup_string(j.dump(2));
  });
}

qms_status qms_koszul_hvector(const qms_model* model, const double* point,
                              char** json_out) {
  if (model == nullptr || point == nullptr || json_out == nullptr)
    return arg_error("null argument");
  *json_out = nullptr;
  return guarded([&] {
    const qmspec::CVector z = point_from_doubles(model, point);
    const double rank_tol = model->scenario.tolerances.rank;
    const std::vector<int> h =
        qmspec::homology_dims(model->model.tuple, z, rank_tol);
    const qmspec::RightSpectrumCheck rc =
        qmspec::in_right_spectrum(model->model.tuple, z, rank_tol);
    bool taylor = false;
    for (int hp : h) taylor = taylor || hp > 0;
    qmspec::Json j;
    j["point"] = qmspec::cvector_to_json(z);
    j["h"] = h;
    j["taylor"] = taylor;
    j["right"] = rc.in_spectrum;
    j["right_margin"] = rc.margin;
    *json_out = dup_string(j.dump(2));
  });
}

qms_status qms_joint_spectrum(const qms_model* model, char** json_out) {
  if (model == nullptr || json_out == nullptr)
    return arg_error("null argument");
  *json_out = nullptr;
  return guarded([&] {
    qmspec::Json j;
    j["model"] = model->scenario.name;
    j["spectrum"] = spectrum_json(model);
    *json_out = dup_string(j.dump(2));
  });
}

qms_status qms_compare_spectra(const qms_model* model, char** json_out) {
  if (model == nullptr || json_out == nullptr)
    return arg_error("null argument");
  *json_out = nullptr;
  return guarded([&] {
    const qmspec::SpectrumComparison cmp =
        qmspec::compare_spectra(model->model, model->scenario.tolerances);
    *json_out = dup_string(qmspec::comparison_to_json(cmp).dump(2));
  });
}

qms_status qms_scan_margins(const qms_model* model, char** csv_out) {
  if (model == nullptr || csv_out == nullptr)
    return arg_error("null argument");
  *csv_out = nullptr;
  return guarded([&] {
    *csv_out = dup_string(qmspec::scan_margins_csv(
        model->model, model->scenario.grid, model->scenario.tolerances));
  });
}

qms_status qms_run_scenario_json(const char* json_text,
                                 long long seed_override,
                                 char** report_json_out, int* pass_out) {
  if (json_text == nullptr || report_json_out == nullptr ||
      pass_out == nullptr)
    return arg_error("null argument");
  *report_json_out = nullptr;
  *pass_out = 0;
  return guarded([&] {
    qmspec::Json doc =
        qmspec::Json::parse(std::string(json_text), nullptr, false);
    if (doc.is_discarded()) qmspec::fail_parse("malformed JSON document");
    qmspec::Scenario scenario = qmspec::scenario_from_json(doc, "scenario");
    if (seed_override >= 0)
      scenario.grid.seed = static_cast<std::uint64_t>(seed_override);
    const qmspec::ScenarioReport report = qmspec::run_scenario(scenario);
    *report_json_out = dup_string(qmspec::report_to_json(report).dump(2));
    *pass_out = report.pass ? 1 : 0;
  });
}

qms_status qms_run_scenario_file(const char* path, long long seed_override,
                                 char** report_json_out, int* pass_out) {
  if (path == nullptr || report_json_out == nullptr || pass_out == nullptr)
    return arg_error("null argument");
  *report_json_out = nullptr;
  *pass_out = 0;
  return guarded([&] {
    qmspec::Scenario scenario = qmspec::load_scenario(path);
    if (seed_override >= 0)
      scenario.grid.seed = static_cast<std::uint64_t>(seed_override);
    const qmspec::ScenarioReport report = qmspec::run_scenario(scenario);
    *report_json_out = dup_string(qmspec::report_to_json(report).dump(2));
    *pass_out = report.pass ? 1 : 0;
  });
}

}  // extern "C"
