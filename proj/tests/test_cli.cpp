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
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "strobe/io.hpp"

using namespace strobe;
using io::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + STROBE_CLI_PATH + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("strobe_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    write("laser.json", io::model_to_json(laser_cooling_model(1, 2)).dump());
    write("zero3.json", R"({"dim": 3, "jumps": []})");
    write("zero2.json", R"({"dim": 2})");
    write("excited.json", io::matrix_to_json(DensityMatrix::basis_state(3, 1).matrix()).dump());
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { io::write_text_file(path(name), text); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, AnalyzeLaserCoolingFlags) {
  const CliResult r = run("analyze --gamma1 1 --gamma2 2 --json");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc.at("eta"), 4);
  EXPECT_EQ(doc.at("mu"), 3);
  EXPECT_EQ(doc.at("measurement_budget"), 12);
  EXPECT_EQ(doc.at("static_observable_count"), 8);
  const SpectralReport back = io::report_from_json(doc);
  EXPECT_EQ(back.distinct_eigenvalues.size(), 3u);

  const CliResult text = run("analyze --gamma1 1 --gamma2 2");
  ASSERT_EQ(text.exit_code, 0);
  EXPECT_NE(text.out.find("eta            = 4"), std::string::npos) << text.out;
  EXPECT_NE(text.out.find("= 12"), std::string::npos);
  EXPECT_NE(text.out.find("static tomography observables     = 8"), std::string::npos);
}

TEST_F(Cli, AnalyzeReportIsRerunnable) {
  const CliResult first = run("analyze " + path("laser.json") + " --json");
  ASSERT_EQ(first.exit_code, 0) << first.out;
  write("report.json", first.out);
  const CliResult second = run("analyze " + path("report.json") + " --json");
  ASSERT_EQ(second.exit_code, 0) << second.out;
  EXPECT_EQ(first.out, second.out);
}

TEST_F(Cli, AnalyzeZeroModel) {
  const CliResult r = run("analyze " + path("zero3.json") + " --json");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc.at("eta"), 9);
  EXPECT_EQ(doc.at("mu"), 1);
}

TEST_F(Cli, AnalyzeMalformedInput) {
  write("bad.json", R"({"dim": 2, "jumps": [{"rate": "fast"}]})");
  const CliResult r = run("analyze " + path("bad.json"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("jumps[0].rate"), std::string::npos) << r.out;

  write("notjson.json", "{ nope");
  EXPECT_EQ(run("analyze " + path("notjson.json")).exit_code, 2);
  EXPECT_EQ(run("analyze " + path("missing.json")).exit_code, 2);
  EXPECT_EQ(run("analyze --gamma1 1").exit_code, 2);
  EXPECT_EQ(run("analyze --gamma1 -1 --gamma2 1").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
}

TEST_F(Cli, ToleranceEnvironmentOverride) {
  const CliResult r = run("analyze --gamma1 1 --gamma2 2 --json", "STROBE_TOMO_TOLERANCE=1e-6");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_DOUBLE_EQ(json::parse(r.out).at("tolerances").at("rank_rtol").get<double>(), 1e-6);
  EXPECT_EQ(run("analyze --gamma1 1 --gamma2 2", "STROBE_TOMO_TOLERANCE=oops").exit_code, 2);
}

TEST_F(Cli, FindObservablesIsDeterministicAndSpanning) {
  const CliResult a = run("find-observables " + path("laser.json") + " --seed 7 --out " + path("a.json"));
  ASSERT_EQ(a.exit_code, 0) << a.out;
  EXPECT_NE(a.out.find("achieved rank 9 of 9"), std::string::npos) << a.out;
  const CliResult b = run("find-observables --gamma1 1 --gamma2 2 --seed 7 --out " + path("b.json"));
  ASSERT_EQ(b.exit_code, 0) << b.out;
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));

  const ObservableSet set = io::observables_from_json(io::read_json_file(path("a.json")));
  EXPECT_EQ(set.size(), 4);
  EXPECT_TRUE(verify_observables(build_generator(laser_cooling_model(1, 2)), set).ok);
}

TEST_F(Cli, FindObservablesZeroModelAndExhaustion) {
  const CliResult r = run("find-observables " + path("zero2.json") + " --out " + path("z.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(io::observables_from_json(io::read_json_file(path("z.json"))).size(), 4);
  EXPECT_EQ(run("find-observables " + path("laser.json") + " --max-attempts 0").exit_code, 4);
}

TEST_F(Cli, SimulateExcitedPopulation) {
  write("q.json", io::observables_to_json(ObservableSet({ComplexMatrix::Identity(3, 3),
                                                          DensityMatrix::basis_state(3, 1).matrix()}))
                      .dump());
  const CliResult r = run("simulate " + path("laser.json") + " " + path("excited.json") + " " + path("q.json") +
                    " --out " + path("rec.csv"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  std::ifstream in(path("rec.csv"));
  const MeasurementRecord rec = io::read_record_csv(in, 2);
  ASSERT_EQ(rec.entries.size(), 6u);
  for (const auto& e : rec.entries) {
    if (e.observable_index == 0) EXPECT_NEAR(e.value, 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(rec.entries[3].time, 1.0 / 3.0);
  EXPECT_NEAR(rec.entries[3].value, std::exp(-1.0), 1e-12);
}

TEST_F(Cli, SimulateErrors) {
  write("q.json", io::observables_to_json(ObservableSet({ComplexMatrix::Identity(3, 3)})).dump());
  EXPECT_EQ(run("simulate " + path("laser.json") + " " + path("nothere.json") + " " + path("q.json")).exit_code, 2);
  write("notstate.json", io::matrix_to_json(ComplexMatrix::Identity(3, 3)).dump());
  EXPECT_EQ(run("simulate " + path("laser.json") + " " + path("notstate.json") + " " + path("q.json")).exit_code, 5);
}

TEST_F(Cli, FullPipelineRoundTrip) {
  std::mt19937_64 rng(61);
  const DensityMatrix truth = random_density_matrix(3, rng);
  write("truth.json", io::matrix_to_json(truth.matrix()).dump());
  ASSERT_EQ(run("find-observables " + path("laser.json") + " --seed 3 --out " + path("obs.json")).exit_code, 0);
  const CliResult sim = run("simulate " + path("laser.json") + " " + path("truth.json") + " " + path("obs.json") +
                      " --out " + path("rec.csv"));
  ASSERT_EQ(sim.exit_code, 0) << sim.out;
  const CliResult rec = run("reconstruct " + path("laser.json") + " " + path("obs.json") + " " + path("rec.csv") +
                      " --truth " + path("truth.json") + " --json");
  ASSERT_EQ(rec.exit_code, 0) << rec.out;
  const json doc = json::parse(rec.out);
  EXPECT_LE(doc.at("frobenius_error").get<double>(), 1e-8);
  EXPECT_EQ(doc.at("design_rank"), 9);

  const CliResult text = run("reconstruct " + path("laser.json") + " " + path("obs.json") + " " + path("rec.csv") +
                       " --truth " + path("truth.json"));
  ASSERT_EQ(text.exit_code, 0);
  EXPECT_NE(text.out.find("frobenius error"), std::string::npos);
  EXPECT_NE(text.out.find("condition number"), std::string::npos);
}

TEST_F(Cli, ReconstructWithThreeObservablesFails) {
  std::mt19937_64 rng(62);
  write("truth.json", io::matrix_to_json(random_density_matrix(3, rng).matrix()).dump());
  ASSERT_EQ(run("find-observables " + path("laser.json") + " --seed 3 --out " + path("obs.json")).exit_code, 0);
  json four = io::read_json_file(path("obs.json"));
  four.erase(3);
  write("three.json", four.dump());
  ASSERT_EQ(run("simulate " + path("laser.json") + " " + path("truth.json") + " " + path("three.json") + " --out " +
                path("rec.csv"))
                .exit_code,
            0);
  const CliResult r = run("reconstruct " + path("laser.json") + " " + path("three.json") + " " + path("rec.csv"));
  EXPECT_EQ(r.exit_code, 6);
  EXPECT_NE(r.out.find("required 9"), std::string::npos) << r.out;
}

TEST_F(Cli, NoProjectReportsRawEstimate) {
  // A pure state measured with noise lands slightly outside the state set.
  write("pure.json", io::matrix_to_json(DensityMatrix::basis_state(3, 0).matrix()).dump());
  ASSERT_EQ(run("find-observables " + path("laser.json") + " --seed 3 --out " + path("obs.json")).exit_code, 0);
  ASSERT_EQ(run("simulate " + path("laser.json") + " " + path("pure.json") + " " + path("obs.json") +
                " --sigma 0.01 --seed 4 --out " + path("rec.csv"))
                .exit_code,
            0);
  const std::string base = "reconstruct " + path("laser.json") + " " + path("obs.json") + " " + path("rec.csv");
  const CliResult raw = run(base + " --no-project --json");
  const CliResult clipped = run(base + " --json");
  ASSERT_EQ(raw.exit_code, 0) << raw.out;
  ASSERT_EQ(clipped.exit_code, 0) << clipped.out;
  const json raw_doc = json::parse(raw.out);
  const json clipped_doc = json::parse(clipped.out);
  EXPECT_FALSE(raw_doc.at("projected").get<bool>());
  EXPECT_TRUE(clipped_doc.at("projected").get<bool>());
  EXPECT_LT(raw_doc.at("min_eigenvalue").get<double>(), 0.0);
  EXPECT_GE(clipped_doc.at("min_eigenvalue").get<double>(), -1e-14);
}

TEST_F(Cli, SimulateIsDeterministic) {
  ASSERT_EQ(run("find-observables " + path("laser.json") + " --seed 1 --out " + path("obs.json")).exit_code, 0);
  const std::string cmd = "simulate " + path("laser.json") + " " + path("excited.json") + " " + path("obs.json") +
                          " --sigma 0.001 --seed 11 --out ";
  ASSERT_EQ(run(cmd + path("r1.csv")).exit_code, 0);
  ASSERT_EQ(run(cmd + path("r2.csv")).exit_code, 0);
  EXPECT_EQ(slurp(path("r1.csv")), slurp(path("r2.csv")));
}
