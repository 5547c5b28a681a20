// Copyright 2026 The strobe-tomo Authors
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

#include "strobe/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace strobe::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

Index count_at(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<Index>();
}

const json& member(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(field + "." + key, "missing");
  return *it;
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected {\"re\": ..., \"im\": ...}");
  const double re = number_at(member(j, "re", field), field + ".re");
  double im = 0.0;
  if (auto it = j.find("im"); it != j.end()) im = number_at(*it, field + ".im");
  return {re, im};
}

double parse_double(const std::string& text, const std::string& field) {
  if (text.empty()) fail(field, "empty value");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) fail(field, "not a number: '" + text + "'");
  return v;
}

Index parse_index(const std::string& text, const std::string& field) {
  if (text.empty()) fail(field, "empty value");
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || errno == ERANGE || v < 0) {
    fail(field, "not a non-negative integer: '" + text + "'");
  }
  return static_cast<Index>(v);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  Index cols = -1;
  ComplexMatrix m;
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!row.is_array()) fail(row_field, "expected an array");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      fail(row_field, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    }
    for (Index c = 0; c < cols; ++c) {
      m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)], row_field + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

json model_to_json(const LindbladModel& model) {
  json jumps = json::array();
  for (const auto& jump : model.jumps()) jumps.push_back({{"rate", jump.rate}, {"matrix", matrix_to_json(jump.op)}});
  return {{"dim", model.dim()}, {"hamiltonian", matrix_to_json(model.hamiltonian())}, {"jumps", jumps}};
}

LindbladModel model_from_json(const json& j, const ToleranceConfig& tol) {
  const Index dim = count_at(member(j, "dim", "model"), "dim");
  if (dim < 1) fail("dim", "must be >= 1");

  ComplexMatrix hamiltonian = ComplexMatrix::Zero(dim, dim);
  if (auto it = j.find("hamiltonian"); it != j.end() && !it->is_null()) {
    hamiltonian = matrix_from_json(*it, "hamiltonian");
    if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
      fail("hamiltonian", "expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
  }

  std::vector<JumpChannel> jumps;
  if (auto it = j.find("jumps"); it != j.end()) {
    if (!it->is_array()) fail("jumps", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& entry = (*it)[k];
      const std::string field = "jumps[" + std::to_string(k) + "]";
      const double rate = number_at(member(entry, "rate", field), field + ".rate");
      if (rate < 0.0) fail(field + ".rate", "must be >= 0");
      ComplexMatrix op = matrix_from_json(member(entry, "matrix", field), field + ".matrix");
      if (op.rows() != dim || op.cols() != dim) {
        fail(field + ".matrix", "expected " + std::to_string(dim) + "x" + std::to_string(dim));
      }
      jumps.push_back({rate, std::move(op)});
    }
  }
  try {
    return LindbladModel(std::move(hamiltonian), std::move(jumps), tol);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

json observables_to_json(const ObservableSet& set) {
  json out = json::array();
  for (const auto& q : set) out.push_back(matrix_to_json(q));
  return out;
}

ObservableSet observables_from_json(const json& j, const ToleranceConfig& tol) {
  if (!j.is_array() || j.empty()) fail("observables", "expected a non-empty array of matrices");
  std::vector<ComplexMatrix> list;
  for (std::size_t k = 0; k < j.size(); ++k) {
    list.push_back(matrix_from_json(j[k], "observables[" + std::to_string(k) + "]"));
  }
  try {
    return ObservableSet(std::move(list), tol);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

DensityMatrix state_from_json(const json& j) {
  const json& body = j.is_object() ? member(j, "matrix", "state") : j;
  return DensityMatrix(matrix_from_json(body, "state"));
}

json tolerances_to_json(const ToleranceConfig& tol) {
  return {{"rank_rtol", tol.rank_rtol},
          {"eig_cluster_rtol", tol.eig_cluster_rtol},
          {"hermiticity_atol", tol.hermiticity_atol}};
}

ToleranceConfig tolerances_from_json(const json& j) {
  ToleranceConfig tol;
  if (!j.is_object()) fail("tolerances", "expected an object");
  if (auto it = j.find("rank_rtol"); it != j.end()) tol.rank_rtol = number_at(*it, "tolerances.rank_rtol");
  if (auto it = j.find("eig_cluster_rtol"); it != j.end()) {
    tol.eig_cluster_rtol = number_at(*it, "tolerances.eig_cluster_rtol");
  }
  if (auto it = j.find("hermiticity_atol"); it != j.end()) {
    tol.hermiticity_atol = number_at(*it, "tolerances.hermiticity_atol");
  }
  try {
    tol.validate();
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return tol;
}

json report_to_json(const SpectralReport& report, const LindbladModel& model, const ToleranceConfig& tol) {
  json distinct = json::array();
  for (const auto& c : report.distinct_eigenvalues) {
    distinct.push_back({{"re", c.value.real()},
                        {"im", c.value.imag()},
                        {"algebraic", c.algebraic_multiplicity},
                        {"geometric", c.geometric_multiplicity}});
  }
  json poly = json::array();
  for (Index k = 0; k < report.min_poly.size(); ++k) poly.push_back(complex_to_json(report.min_poly(k)));
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"tolerances", tolerances_to_json(tol)},
          {"model", model_to_json(model)},
          {"dim", report.dim},
          {"distinct_eigenvalues", distinct},
          {"eta", report.eta},
          {"mu", report.mu},
          {"min_poly", poly},
          {"measurement_budget", report.measurement_budget},
          {"static_observable_count", report.static_observable_count}};
}

SpectralReport report_from_json(const json& j) {
  SpectralReport report;
  report.dim = count_at(member(j, "dim", "report"), "dim");
  const json& distinct = member(j, "distinct_eigenvalues", "report");
  if (!distinct.is_array()) fail("distinct_eigenvalues", "expected an array");
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    const std::string field = "distinct_eigenvalues[" + std::to_string(k) + "]";
    EigenvalueCluster c;
    c.value = complex_from_json(distinct[k], field);
    c.algebraic_multiplicity = count_at(member(distinct[k], "algebraic", field), field + ".algebraic");
    c.geometric_multiplicity = count_at(member(distinct[k], "geometric", field), field + ".geometric");
    report.distinct_eigenvalues.push_back(c);
  }
  report.eta = count_at(member(j, "eta", "report"), "eta");
  report.mu = count_at(member(j, "mu", "report"), "mu");
  const json& poly = member(j, "min_poly", "report");
  if (!poly.is_array()) fail("min_poly", "expected an array");
  report.min_poly.resize(static_cast<Index>(poly.size()));
  for (std::size_t k = 0; k < poly.size(); ++k) {
    report.min_poly(static_cast<Index>(k)) = complex_from_json(poly[k], "min_poly[" + std::to_string(k) + "]");
  }
  report.measurement_budget = count_at(member(j, "measurement_budget", "report"), "measurement_budget");
  report.static_observable_count =
      count_at(member(j, "static_observable_count", "report"), "static_observable_count");
  return report;
}

json reconstruction_to_json(const ReconstructionResult& result) {
  json out = {{"rho_hat", matrix_to_json(result.rho_hat)},
              {"projected", result.projected},
              {"residual_norm", result.residual_norm},
              {"design_rank", result.design_rank},
              {"design_condition", result.design_condition},
              {"min_eigenvalue", min_hermitian_eigenvalue(result.rho_hat)}};
  if (result.frobenius_error) out["frobenius_error"] = *result.frobenius_error;
  if (result.trace_distance) out["trace_distance"] = *result.trace_distance;
  return out;
}

void write_record_csv(std::ostream& out, const MeasurementRecord& record) {
  out << "observable_index,time,value,sigma\n";
  for (const auto& e : record.entries) {
    out << e.observable_index << ',' << format_double(e.time) << ',' << format_double(e.value) << ','
        << format_double(e.sigma) << '\n';
  }
}

MeasurementRecord read_record_csv(std::istream& in, Index observable_count) {
  std::string line;
  if (!std::getline(in, line)) fail("record", "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "observable_index,time,value,sigma") {
    fail("record header", "expected 'observable_index,time,value,sigma', got '" + line + "'");
  }
  MeasurementRecord record;
  Index largest = -1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    const std::string where = "record line " + std::to_string(line_no);
    if (cells.size() != 4) fail(where, "expected 4 columns, got " + std::to_string(cells.size()));
    Measurement m;
    m.observable_index = parse_index(cells[0], where + " observable_index");
    m.time = parse_double(cells[1], where + " time");
    m.value = parse_double(cells[2], where + " value");
    m.sigma = parse_double(cells[3], where + " sigma");
    largest = std::max(largest, m.observable_index);
    record.entries.push_back(m);
  }
  record.observable_count = observable_count > 0 ? observable_count : largest + 1;
  try {
    record.validate();
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return record;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << content;
  if (!out) throw Error(path + ": write failed");
}

}  // namespace strobe::io
