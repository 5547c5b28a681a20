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

// File formats.
//
// Complex matrices are JSON arrays of rows, each entry {"re": x, "im": y}.
// Model:        {"dim": N, "hamiltonian": <matrix>?, "jumps": [{"rate": r, "matrix": <matrix>}]}
// Observables:  [<matrix>, ...]
// State:        <matrix> or {"matrix": <matrix>}
// Report:       {"tool", "version", "tolerances", "model", "dim", "distinct_eigenvalues",
//                "eta", "mu", "min_poly", "measurement_budget", "static_observable_count", ...}
// Record CSV:   header observable_index,time,value,sigma; floats with 17 significant digits.

#ifndef STROBE_IO_HPP
#define STROBE_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "strobe/tomography_sim.hpp"

namespace strobe::io {

using json = nlohmann::json;

inline constexpr const char* kToolName = "strobe-tomo";
inline constexpr const char* kToolVersion = "0.1.0";

json matrix_to_json(const ComplexMatrix& m);
/// `field` names the value in error messages, e.g. "jumps[0].matrix".
ComplexMatrix matrix_from_json(const json& j, const std::string& field);

json model_to_json(const LindbladModel& model);
LindbladModel model_from_json(const json& j, const ToleranceConfig& tol = {});

json observables_to_json(const ObservableSet& set);
ObservableSet observables_from_json(const json& j, const ToleranceConfig& tol = {});

DensityMatrix state_from_json(const json& j);

json tolerances_to_json(const ToleranceConfig& tol);
ToleranceConfig tolerances_from_json(const json& j);

/// Self-contained analysis document: report plus model echo, tool version and tolerances.
json report_to_json(const SpectralReport& report, const LindbladModel& model, const ToleranceConfig& tol);
SpectralReport report_from_json(const json& j);

json reconstruction_to_json(const ReconstructionResult& result);

void write_record_csv(std::ostream& out, const MeasurementRecord& record);
/// observable_count 0 means "one more than the largest index present".
MeasurementRecord read_record_csv(std::istream& in, Index observable_count = 0);

/// Reads and parses a JSON file; ParseError names the file on failure.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Text form of a number with 17 significant digits.
std::string format_double(double v);

}  // namespace strobe::io

#endif  // STROBE_IO_HPP
