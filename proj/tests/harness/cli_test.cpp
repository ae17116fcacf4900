// Copyright 2026 The gaussprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"
#include "json.hpp"

namespace gaussprep::harness {
namespace {

namespace fs = std::filesystem;

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "gaussprep");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

nlohmann::json last_json_line(const std::string &text) {
    auto end = text.find_last_not_of('\n');
    auto start = text.rfind('\n', end);
    start = start == std::string::npos ? 0 : start + 1;
    return nlohmann::json::parse(text.substr(start, end - start + 1));
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("gaussprep-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(CliTest, ThetaPrintsValue) {
    const auto r = cli({"theta", "--sigma", "10", "--mu", "0.3"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string key;
    double value = 0.0;
    in >> key >> value;
    EXPECT_EQ(key, "value");
    EXPECT_NEAR(value, 17.7245385090552, 1e-12);
    EXPECT_NE(r.out.find("branch poisson"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
    for (const auto &args : std::vector<std::vector<std::string>>{
             {}, {"frobnicate"}, {"theta", "--sigma", "1"}, {"theta", "--sigma", "x", "--mu", "0"}}) {
        const auto r = cli(args);
        EXPECT_EQ(r.code, kExitUsage);
        const auto j = last_json_line(r.err);
        EXPECT_EQ(j["error"]["kind"], "usage");
        EXPECT_EQ(j["error"]["exit_code"], 2);
    }
}

TEST_F(CliTest, ValidationErrors) {
    auto r = cli({"theta", "--sigma", "-1", "--mu", "0"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_EQ(last_json_line(r.err)["error"]["kind"], "validation");

    r = cli({"--max-amplitudes", "64", "prep1d", "--sigma", "4", "--mu", "8", "--n-qubits", "7"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_EQ(last_json_line(r.err)["error"]["kind"], "memory_cap");

    r = cli({"verify", "--only", "9"});
    EXPECT_EQ(r.code, kExitValidation);

    r = cli({"prepnd", "--matrix", path("missing.txt"), "--k-bits", "4"});
    EXPECT_EQ(r.code, kExitValidation);
}

TEST_F(CliTest, Prep1dArtifacts) {
    const auto r = cli({"prep1d", "--sigma", "6", "--mu", "20", "--n-qubits", "6", "--angle-bits", "10",
                        "--dump-state", path("s.csv"), "--dump-trace", path("t.txt"), "--report", path("r.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto state = read_text(path("s.csv"));
    EXPECT_EQ(state.rfind("# gaussprep " + std::string(tool_version()) + " prep1d ", 0), 0u);
    EXPECT_NE(state.find("angle_bits=10"), std::string::npos);
    EXPECT_NE(state.find("index,coord_1,re,im,abs2"), std::string::npos);
    EXPECT_NE(read_text(path("t.txt")).find("HEADER N 6 MODE quantized K 10"), std::string::npos);
    const auto report = nlohmann::json::parse(read_text(path("r.json")));
    EXPECT_EQ(report["meta"]["version"], tool_version());
    EXPECT_EQ(report["gate_counts"]["standard_rotations"], 60);
    EXPECT_LT(report["distance_vs_oracle"].get<double>(), 1.25 * 6 / 1024.0);
}

TEST_F(CliTest, Prep1dRepeatable) {
    for (const auto *name : {"a.csv", "b.csv"}) {
        ASSERT_EQ(cli({"--threads", "3", "prep1d", "--sigma", "30", "--mu", "300.5", "--n-qubits", "10",
                       "--dump-state", path(name)})
                      .code,
                  0);
    }
    EXPECT_EQ(read_text(path("a.csv")), read_text(path("b.csv")));
}

TEST_F(CliTest, PrepndReport) {
    write_text(path("m.txt"), "2\n0.02 0.01\n0.01 0.02\n");
    const auto r = cli({"prepnd", "--matrix", path("m.txt"), "--k-bits", "6", "--report", path("nd.json"),
                        "--dump-state", path("nd.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(read_text(path("nd.json")));
    EXPECT_NEAR(j["fidelity"].get<double>(), 0.999375374465, 1e-9);
    EXPECT_TRUE(j.contains("decomposition"));
    EXPECT_TRUE(j.contains("tail_mass_estimate"));
    EXPECT_NE(read_text(path("nd.csv")).find("index,coord_1,coord_2,re,im,abs2"), std::string::npos);

    write_text(path("bad.txt"), "2\n1 2\n2 1\n");
    EXPECT_EQ(cli({"prepnd", "--matrix", path("bad.txt"), "--k-bits", "4"}).code, kExitValidation);
}

TEST_F(CliTest, ResampleReportAndBand) {
    const auto r = cli({"resample", "--a", "1.5", "--psi", "gaussian:20,128", "--n-qubits", "8", "--window",
                        "uniform:4", "--report", path("rs.json"), "--band-csv", path("band.csv"), "--dump-b-state",
                        path("b.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(read_text(path("rs.json")));
    for (const auto *key : {"a", "n_qubits", "window", "uncompute_window", "band_width_used", "prob_A_zero",
                            "fidelity_B_vs_target", "strip_agreement", "leaked_mass", "a_marginal", "warnings"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_NE(read_text(path("band.csv")).find("x,y,re,im,abs2"), std::string::npos);

    // Feed B back in as a sampled psi.
    const auto again = cli({"resample", "--a", "1", "--psi", path("b.csv"), "--n-qubits", "8", "--window",
                            "gaussian:2"});
    EXPECT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(cli({"resample", "--a", "1", "--psi", path("b.csv"), "--n-qubits", "7", "--window", "uniform:2"}).code,
              kExitValidation);
    EXPECT_EQ(cli({"resample", "--a", "1", "--psi", "gaussian:3", "--n-qubits", "7", "--window", "uniform:2"}).code,
              kExitValidation);
}

TEST_F(CliTest, SweepAngleBits) {
    const auto r = cli({"sweep", "--experiment", "angle-bits", "--n-qubits", "8", "--k", "8:16", "--out", path("sw")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(read_text(path("sw/angle-bits.csv")));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# gaussprep ", 0), 0u);
    while (line.rfind('#', 0) == 0) std::getline(in, line);
    EXPECT_EQ(line, "k,distance,bound");
    int rows = 0;
    while (std::getline(in, line)) {
        int k = 0;
        double dist = 0.0, bound = 0.0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%d,%lf,%lf", &k, &dist, &bound), 3);
        EXPECT_DOUBLE_EQ(bound, 1.25 * 8 * std::ldexp(1.0, -k));
        EXPECT_LE(dist, bound);
        ++rows;
    }
    EXPECT_EQ(rows, 9);
}

TEST_F(CliTest, SweepUsesEnvironmentDirectory) {
    ::setenv("GAUSSPREP_OUT_DIR", dir_.c_str(), 1);
    const auto r = cli({"sweep", "--experiment", "nd-ladder", "--scales", "0.08,0.04"});
    ::unsetenv("GAUSSPREP_OUT_DIR");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "nd-ladder.csv"));
}

TEST_F(CliTest, VerifySubset) {
    const auto r = cli({"verify", "--only", "1,2", "--out", path("v")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("[PASS] 1."), std::string::npos);
    EXPECT_NE(r.out.find("[PASS] 2."), std::string::npos);
    EXPECT_TRUE(fs::exists(path("v/theta_crosscheck.csv")));
    EXPECT_TRUE(fs::exists(path("v/split_identity.csv")));
}

}  // namespace
}  // namespace gaussprep::harness
