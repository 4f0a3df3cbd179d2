// Copyright 2026 The quasijoint Authors
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

#include "cli_support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>

using namespace quasijoint::testing;

namespace {

const std::string kCli = QUASIJOINT_CLI_PATH;
const std::string kGolden = QUASIJOINT_GOLDEN_DIR;

class Golden : public ::testing::TestWithParam<GoldenCase> {};

}  // namespace

TEST_P(Golden, MatchesStoredOutput) {
    const auto& c = GetParam();
    const auto r = run_cli(kCli, c.args);
    EXPECT_EQ(r.exit_code, c.exit_code);
    EXPECT_EQ(r.out, read_file(kGolden + "/" + c.name + ".out"));
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(load_golden_cases(QUASIJOINT_GOLDEN_DIR)),
                         [](const auto& info) { return info.param.name; });

TEST(Cli, SingularMarkingMessage) {
    const auto r = run_cli(kCli, "invert --theta 1.5707963267948966", true);
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_NE(r.out.find("singular marking"), std::string::npos);
    EXPECT_NE(r.out.find("cos(theta)"), std::string::npos);
}

TEST(Cli, SingularAnalyzerMessage) {
    const auto r = run_cli(kCli, "operational --theta 0.5 --vartheta 0.25", true);
    EXPECT_EQ(r.exit_code, 0);
    const auto s = run_cli(kCli, "invert --mode phase --theta 0.5 --vartheta 0.25", true);
    EXPECT_EQ(s.exit_code, 3);
    EXPECT_NE(s.out.find("sin(2*vartheta - theta)"), std::string::npos);
}

TEST(Cli, InvalidInputExitsTwo) {
    EXPECT_EQ(run_cli(kCli, "exact --state 1,0,0").exit_code, 2);
    EXPECT_EQ(run_cli(kCli, "exact --theta 2.0").exit_code, 2);
    EXPECT_EQ(run_cli(kCli, "sample --n 0").exit_code, 2);
    EXPECT_EQ(run_cli(kCli, "frobnicate").exit_code, 2);
    EXPECT_EQ(run_cli(kCli, "").exit_code, 2);
    EXPECT_EQ(run_cli(kCli, "exact --config /nonexistent.cfg").exit_code, 2);
}

TEST(Cli, CsvEchoesConfigOnStderr) {
    const auto r = run_cli(kCli, "invert --format csv --theta 0.3 --vartheta 1.0", true);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("# theta = 2.9999999999999999e-01"), std::string::npos);
    EXPECT_EQ(run_cli(kCli, "invert --format csv --theta 0.3 --vartheta 1.0").out.find('#'), std::string::npos);
}

TEST(Cli, FlagsOverrideConfigFile) {
    const auto from_file = nlohmann::json::parse(run_cli(kCli, "exact --config " + kGolden + "/run.cfg").out);
    EXPECT_NEAR(from_file["config"]["vartheta"].get<double>(), 1.1, 1e-15);
    const auto overridden =
        nlohmann::json::parse(run_cli(kCli, "exact --config " + kGolden + "/run.cfg --vartheta 0.5").out);
    EXPECT_NEAR(overridden["config"]["vartheta"].get<double>(), 0.5, 1e-15);
}

TEST(Cli, SampleWritesShotFile) {
    const auto path = (std::filesystem::temp_directory_path() / "quasijoint_cli_counts.csv").string();
    const auto r = run_cli(kCli, "sample --n 100 --seed 4 --theta 0.3 --vartheta 1.0 --out " + path);
    EXPECT_EQ(r.exit_code, 0);
    const auto csv = read_file(path);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,z,count");
    const auto report = nlohmann::json::parse(r.out);
    std::int64_t total = 0;
    for (const auto& c : report["counts"]) total += c["count"].get<std::int64_t>();
    EXPECT_EQ(total, 100);
    std::remove(path.c_str());
}

TEST(Cli, ScanIndependentOfThreads) {
    const std::string args = "scan --format csv --theta-grid 0:1.5:13 --vartheta-grid 0:3:17 --state 0.8,0,0.6,0";
    EXPECT_EQ(run_cli(kCli, args + " --threads 1").out, run_cli(kCli, args + " --threads 3").out);
}
