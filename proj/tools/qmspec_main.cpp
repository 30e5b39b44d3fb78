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

// Command-line driver for the qmspec shared library.
//
// Subcommands: verify (full scenario run), spectrum (three-way comparison),
// scan (margin scan CSV), charfun (pointwise characteristic function),
// koszul (h-vector at a shift).  Exit codes: 0 pass, 1 scenario check
// failure, 2 input error, 3 numerical breakdown.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmspec.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

int exit_code_for(qms_status status) {
  switch (status) {
    case QMS_OK:
      return kExitPass;
    case QMS_ERR_INVALID_ARGUMENT:
    case QMS_ERR_PARSE:
    case QMS_ERR_IO:
    case QMS_ERR_DOMAIN:
      return kExitInputError;
    case QMS_ERR_NUMERICAL:
    case QMS_ERR_INTERNAL:
      return kExitNumericalError;
  }
  return kExitNumericalError;
}

int report_failure(qms_status status) {
  std::cerr << "error (" << qms_status_name(status)
            << "): " << qms_last_error() << "\n";
  return exit_code_for(status);
}

// Owned C string from the library.
struct LibString {
  char* ptr = nullptr;
  ~LibString() { qms_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : ptr; }
};

struct ModelHandle {
  qms_model* ptr = nullptr;
  ~ModelHandle() { qms_model_destroy(ptr); }
};

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return kExitPass;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error (io_error): cannot open output file: " << out_path
              << "\n";
    return kExitInputError;
  }
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
  if (!out.flush()) {
    std::cerr << "error (io_error): write failure: " << out_path << "\n";
    return kExitInputError;
  }
  return kExitPass;
}

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Accepts "re,im,re,im,..." (2d values) or "re,re,..." (d values, imaginary
// parts zero); separators are commas and/or whitespace.
bool parse_point(const std::string& text, int d, std::vector<double>& out) {
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(normalized);
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) return false;
  if (static_cast<int>(values.size()) == d) {
    out.assign(2 * static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) out[2 * static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i)];
    return true;
  }
  if (static_cast<int>(values.size()) == 2 * d) {
    out = values;
    return true;
  }
  return false;
}

int open_model(const std::string& scenario_path, long long seed,
               ModelHandle& handle) {
  const qms_status st = qms_model_create_file(scenario_path.c_str(),
                                              &handle.ptr);
  if (st != QMS_OK) return report_failure(st);
  if (seed >= 0)
    qms_model_set_seed(handle.ptr, static_cast<unsigned long long>(seed));
  return kExitPass;
}

// --- per-format renderings ---------------------------------------------

std::string checks_csv(const nlohmann::json& report) {
  std::ostringstream out;
  out << "check,pass,tolerance,measured\n";
  for (const auto& c : report.at("checks")) {
    out << c.at("name").get<std::string>() << ","
        << (c.at("pass").get<bool>() ? 1 : 0) << ","
        << fmt17(c.at("tolerance").get<double>()) << ","
        << fmt17(c.at("measured").get<double>()) << "\n";
  }
  return out.str();
}

std::string point_csv_fields(const nlohmann::json& point) {
  std::ostringstream out;
  bool first = true;
  for (const auto& coord : point) {
    if (!first) out << ",";
    first = false;
    out << fmt17(coord[0].get<double>()) << ","
        << fmt17(coord[1].get<double>());
  }
  return out.str();
}

std::string spectrum_csv(const nlohmann::json& cmp) {
  std::ostringstream out;
  out << "set,point\n";
  const char* sets[] = {"oracle", "homology_positive", "margin_zero"};
  for (const char* set : sets)
    for (const auto& p : cmp.at(set))
      out << set << "," << point_csv_fields(p) << "\n";
  out << "symmetric_differences,"
      << cmp.at("symmetric_differences").get<std::size_t>() << "\n";
  out << "flags_agree," << (cmp.at("flags_agree").get<bool>() ? 1 : 0) << "\n";
  out << "pass," << (cmp.at("pass").get<bool>() ? 1 : 0) << "\n";
  return out.str();
}

std::string scan_json(const std::string& csv) {
  nlohmann::json rows = nlohmann::json::array();
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> columns;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    if (header) {
      while (std::getline(fields, field, ',')) columns.push_back(field);
      header = false;
      continue;
    }
    nlohmann::json row = nlohmann::json::object();
    std::size_t i = 0;
    while (std::getline(fields, field, ',') && i < columns.size()) {
      row[columns[i]] = std::strtod(field.c_str(), nullptr);
      ++i;
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json j;
  j["rows"] = std::move(rows);
  return j.dump(2);
}

std::string charfun_csv(const nlohmann::json& j) {
  std::ostringstream out;
  out << "field,row,col,re,im\n";
  out << "margin,,," << fmt17(j.at("margin").get<double>()) << ",\n";
  out << "coker,,," << j.at("coker").get<int>() << ",\n";
  out << "dual_residual,,," << fmt17(j.at("dual_residual").get<double>())
      << ",\n";
  out << "condition,,," << fmt17(j.at("condition").get<double>()) << ",\n";
  const auto& matrix = j.at("matrix");
  for (std::size_t r = 0; r < matrix.size(); ++r)
    for (std::size_t c = 0; c < matrix[r].size(); ++c)
      out << "theta," << r << "," << c << ","
          << fmt17(matrix[r][c][0].get<double>()) << ","
          << fmt17(matrix[r][c][1].get<double>()) << "\n";
  return out.str();
}

std::string koszul_csv(const nlohmann::json& j) {
  std::ostringstream out;
  const auto& h = j.at("h");
  for (std::size_t p = 0; p < h.size(); ++p) out << "h" << p << ",";
  out << "taylor,right,right_margin\n";
  for (const auto& hp : h) out << hp.get<int>() << ",";
  out << (j.at("taylor").get<bool>() ? 1 : 0) << ","
      << (j.at("right").get<bool>() ? 1 : 0) << ","
      << fmt17(j.at("right_margin").get<double>()) << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for finite-dimensional quotient modules: "
               "joint spectra, chain-complex homology, characteristic "
               "functions, dilations, and annihilator ideals."};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string format = "json";
  std::string point_text;
  long long seed = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_point) {
    cmd->add_option("--scenario", scenario_path,
                    "Scenario or model JSON file")
        ->required();
    cmd->add_option("--out", out_path, "Write output to this file");
    cmd->add_option("--seed", seed, "Override the sampling seed");
    cmd->add_option("--format", format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    if (needs_point)
      cmd->add_option("--point", point_text,
                      "Point in C^d: re,im pairs interleaved (or d real "
                      "values)")
          ->required();
  };

  CLI::App* verify = app.add_subcommand(
      "verify", "Run every scenario check and emit the report");
  add_common(verify, false);
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Three-way spectrum comparison");
  add_common(spectrum, false);
  CLI::App* scan = app.add_subcommand(
      "scan", "Margin scan over the scenario grid");
  add_common(scan, false);
  CLI::App* charfun = app.add_subcommand(
      "charfun", "Evaluate the characteristic function at a point");
  add_common(charfun, true);
  CLI::App* koszul = app.add_subcommand(
      "koszul", "Homology dimensions at a shift");
  add_common(koszul, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  if (verify->parsed()) {
    LibString report;
    int pass = 0;
    const qms_status st = qms_run_scenario_file(scenario_path.c_str(), seed,
                                                &report.ptr, &pass);
    if (st != QMS_OK) return report_failure(st);
    std::string text = report.str();
    if (format == "csv") text = checks_csv(nlohmann::json::parse(text));
    const int emit_code = emit(text, out_path);
    if (emit_code != kExitPass) return emit_code;
    return pass == 1 ? kExitPass : kExitCheckFailure;
  }

  ModelHandle model;
  const int open_code = open_model(scenario_path, seed, model);
  if (open_code != kExitPass) return open_code;

  if (spectrum->parsed()) {
    LibString text;
    const qms_status st = qms_compare_spectra(model.ptr, &text.ptr);
    if (st != QMS_OK) return report_failure(st);
    if (format == "csv")
      return emit(spectrum_csv(nlohmann::json::parse(text.str())), out_path);
    return emit(text.str(), out_path);
  }

  if (scan->parsed()) {
    LibString text;
    const qms_status st = qms_scan_margins(model.ptr, &text.ptr);
    if (st != QMS_OK) return report_failure(st);
    // scan defaults to CSV; --format json wraps the rows.
    const bool json_requested =
        scan->get_option("--format")->count() > 0 && format == "json";
    if (json_requested) return emit(scan_json(text.str()), out_path);
    return emit(text.str(), out_path);
  }

  std::vector<double> point;
  if (!parse_point(point_text, qms_model_vars(model.ptr), point)) {
    std::cerr << "error (invalid_argument): --point needs " <<
        qms_model_vars(model.ptr) << " complex values (re,im interleaved)\n";
    return kExitInputError;
  }

  if (charfun->parsed()) {
    LibString text;
    const qms_status st =
        qms_charfn_eval(model.ptr, point.data(), &text.ptr);
    if (st != QMS_OK) return report_failure(st);
    if (format == "csv")
      return emit(charfun_csv(nlohmann::json::parse(text.str())), out_path);
    return emit(text.str(), out_path);
  }

  if (koszul->parsed()) {
    LibString text;
    const qms_status st =
        qms_koszul_hvector(model.ptr, point.data(), &text.ptr);
    if (st != QMS_OK) return report_failure(st);
    if (format == "csv")
      return emit(koszul_csv(nlohmann::json::parse(text.str())), out_path);
    return emit(text.str(), out_path);
  }

  return kExitInputError;
}
