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

#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "strobe/io.hpp"
#include "test_support.hpp"

using namespace strobe;
using io::json;

TEST(ModelJson, ParsesDocumentedSchema) {
  const json doc = json::parse(R"({
    "dim": 2,
    "hamiltonian": [[{"re": 1, "im": 0}, {"re": 0, "im": -0.5}],
                    [{"re": 0, "im": 0.5}, {"re": -1, "im": 0}]],
    "jumps": [{"rate": 0.25, "matrix": [[{"re": 0, "im": 0}, {"re": 1, "im": 0}],
                                         [{"re": 0, "im": 0}, {"re": 0, "im": 0}]]}]
  })");
  const LindbladModel m = io::model_from_json(doc);
  EXPECT_EQ(m.dim(), 2);
  EXPECT_EQ(m.hamiltonian()(0, 1), Complex(0.0, -0.5));
  ASSERT_EQ(m.jumps().size(), 1u);
  EXPECT_EQ(m.jumps()[0].rate, 0.25);
  EXPECT_EQ(m.jumps()[0].op(0, 1), Complex(1.0));
}

TEST(ModelJson, OmittedHamiltonianIsZero) {
  const LindbladModel m = io::model_from_json(json::parse(R"({"dim": 3, "jumps": []})"));
  EXPECT_EQ(m.hamiltonian(), ComplexMatrix::Zero(3, 3));
  EXPECT_TRUE(m.jumps().empty());
}

TEST(ModelJson, RoundTrip) {
  std::mt19937_64 rng(51);
  const LindbladModel m = strobe::testing::random_model(3, rng);
  const LindbladModel back = io::model_from_json(json::parse(io::model_to_json(m).dump()));
  EXPECT_EQ(back.hamiltonian(), m.hamiltonian());
  ASSERT_EQ(back.jumps().size(), m.jumps().size());
  for (std::size_t k = 0; k < m.jumps().size(); ++k) {
    EXPECT_EQ(back.jumps()[k].rate, m.jumps()[k].rate);
    EXPECT_EQ(back.jumps()[k].op, m.jumps()[k].op);
  }
}

TEST(ModelJson, ErrorsNameTheField) {
  auto message = [](const char* text) {
    try {
      io::model_from_json(json::parse(text));
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"jumps": []})").find("dim"), std::string::npos);
  EXPECT_NE(message(R"({"dim": 2, "jumps": [{"matrix": [[{"re":0},{"re":0}],[{"re":0},{"re":0}]]}]})")
                .find("jumps[0].rate"),
            std::string::npos);
  EXPECT_NE(message(R"({"dim": 2, "jumps": [{"rate": 1, "matrix": [[{"re":0}],[{"re":0},{"re":0}]]}]})")
                .find("jumps[0].matrix[1]"),
            std::string::npos);
  EXPECT_NE(message(R"({"dim": 2, "jumps": [{"rate": -1, "matrix": [[{"re":0},{"re":0}],[{"re":0},{"re":0}]]}]})")
                .find("jumps[0].rate"),
            std::string::npos);
  EXPECT_NE(message(R"({"dim": 2, "hamiltonian": [[{"re":0},{"re":1}],[{"re":0},{"re":0}]]})").find("hermitian"),
            std::string::npos);
  EXPECT_NE(message(R"({"dim": 1, "hamiltonian": [[{"im": 2}]]})").find("hamiltonian[0][0].re"), std::string::npos);
}

TEST(ObservablesJson, RoundTripAndValidation) {
  std::mt19937_64 rng(52);
  const ObservableSet set({random_hermitian(3, rng), random_hermitian(3, rng)});
  const ObservableSet back = io::observables_from_json(json::parse(io::observables_to_json(set).dump()));
  ASSERT_EQ(back.size(), 2);
  EXPECT_EQ(back[0], set[0]);
  EXPECT_EQ(back[1], set[1]);
  EXPECT_THROW(io::observables_from_json(json::array()), ParseError);
  EXPECT_THROW(io::observables_from_json(json::parse(R"([[[{"re":0},{"re":1}],[{"re":0},{"re":0}]]])")), ParseError);
}

TEST(StateJson, BareAndWrapped) {
  const json bare = io::matrix_to_json(DensityMatrix::basis_state(2, 1).matrix());
  EXPECT_EQ(io::state_from_json(bare).matrix()(1, 1), Complex(1.0));
  EXPECT_EQ(io::state_from_json(json{{"matrix", bare}}).matrix()(1, 1), Complex(1.0));
  EXPECT_THROW(io::state_from_json(io::matrix_to_json(ComplexMatrix::Identity(2, 2))), StateError);
}

TEST(ReportJson, RoundTrip) {
  const LindbladModel model = laser_cooling_model(1, 2);
  const ToleranceConfig tol;
  const SpectralReport r = spectral_report(build_generator(model), tol);
  const json doc = json::parse(io::report_to_json(r, model, tol).dump());
  EXPECT_EQ(doc.at("tool"), io::kToolName);
  EXPECT_EQ(doc.at("version"), io::kToolVersion);
  EXPECT_EQ(doc.at("eta"), 4);
  const SpectralReport back = io::report_from_json(doc);
  EXPECT_EQ(back.eta, r.eta);
  EXPECT_EQ(back.mu, r.mu);
  EXPECT_EQ(back.measurement_budget, 12);
  EXPECT_EQ(back.static_observable_count, 8);
  EXPECT_EQ(back.min_poly, r.min_poly);
  ASSERT_EQ(back.distinct_eigenvalues.size(), r.distinct_eigenvalues.size());
  for (std::size_t k = 0; k < r.distinct_eigenvalues.size(); ++k) {
    EXPECT_EQ(back.distinct_eigenvalues[k].value, r.distinct_eigenvalues[k].value);
    EXPECT_EQ(back.distinct_eigenvalues[k].geometric_multiplicity, r.distinct_eigenvalues[k].geometric_multiplicity);
  }
  // Self-contained: the embedded model and tolerances reproduce the report.
  const LindbladModel again = io::model_from_json(doc.at("model"));
  const SpectralReport rerun = spectral_report(build_generator(again), io::tolerances_from_json(doc.at("tolerances")));
  EXPECT_EQ(rerun.min_poly, r.min_poly);
}

TEST(RecordCsv, HeaderAndFormat) {
  MeasurementRecord rec{2, {{0, 1.0 / 3.0, 0.1, 0.0}, {1, 2.0, -1e-300, 1e-3}}};
  std::ostringstream out;
  io::write_record_csv(out, rec);
  EXPECT_EQ(out.str(),
            "observable_index,time,value,sigma\n"
            "0,0.33333333333333331,0.10000000000000001,0\n"
            "1,2,-1e-300,0.001\n");
}

TEST(RecordCsv, ExactRoundTripOnRandomValues) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-200, 200);
  MeasurementRecord rec{5, {}};
  for (int k = 0; k < 500; ++k) {
    rec.entries.push_back({k % 5, std::ldexp(std::abs(u(rng)) + 0.5, expo(rng) / 10), std::ldexp(u(rng), expo(rng)),
                           std::abs(u(rng))});
  }
  std::stringstream buf;
  io::write_record_csv(buf, rec);
  EXPECT_EQ(io::read_record_csv(buf, 5), rec);
}

TEST(RecordCsv, Errors) {
  std::istringstream bad_header("index,time,value,sigma\n");
  EXPECT_THROW(io::read_record_csv(bad_header), ParseError);
  std::istringstream bad_cell("observable_index,time,value,sigma\n0,1,abc,0\n");
  EXPECT_THROW(io::read_record_csv(bad_cell), ParseError);
  std::istringstream short_row("observable_index,time,value,sigma\n0,1,2\n");
  EXPECT_THROW(io::read_record_csv(short_row), ParseError);
  std::istringstream out_of_range("observable_index,time,value,sigma\n3,1,2,0\n");
  EXPECT_THROW(io::read_record_csv(out_of_range, 2), ParseError);
  std::istringstream crlf("observable_index,time,value,sigma\r\n1,0.5,0.25,0\r\n");
  const auto rec = io::read_record_csv(crlf);
  EXPECT_EQ(rec.observable_count, 2);
  EXPECT_EQ(rec.entries.at(0).value, 0.25);
}
