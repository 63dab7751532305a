// Copyright 2026 The qwalk Authors
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

#include "qwalk_cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace qwalk;
using namespace qwalk::cli;

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string first_line(const std::string &s) { return s.substr(0, s.find('\n')); }

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("qwalk_cli_test_" + std::string(::testing::UnitTest::GetInstance()
                                                    ->current_test_info()
                                                    ->name()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    int invoke(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return main_entry(args, out_, err_);
    }

    std::filesystem::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST(ParseArgs, simulate) {
    const auto c =
        parse_args({"simulate", "--q", "4", "--theta", "0.5236", "--steps", "100", "--out", "d.csv"});
    EXPECT_EQ(c.command, Command::Simulate);
    EXPECT_EQ(c.periods, (std::vector<std::int64_t>{4}));
    ASSERT_EQ(c.thetas.size(), 1u);
    EXPECT_NEAR(c.thetas[0], kPi / 6, 1e-4);
    EXPECT_EQ(c.steps, (std::vector<std::int64_t>{100}));
    ASSERT_TRUE(c.output_path.has_value());
    EXPECT_EQ(c.output_path->string(), "d.csv");
    ASSERT_TRUE(c.manifest_path.has_value());
    EXPECT_EQ(c.manifest_path->string(), "d.csv.manifest.json");
}

TEST(ParseArgs, sweep_period_range) {
    const auto c = parse_args({"sweep-period", "--theta", "1.0472", "--q", "1:10", "--steps", "200"});
    EXPECT_EQ(c.command, Command::SweepPeriod);
    EXPECT_EQ(c.periods, integer_range(1, 10));
    EXPECT_NEAR(c.thetas[0], kPi / 3, 1e-4);
    EXPECT_EQ(c.steps, (std::vector<std::int64_t>{200}));
    EXPECT_FALSE(c.output_path.has_value());
    EXPECT_FALSE(c.manifest_path.has_value());
}

TEST(ParseArgs, theta_in_units_of_pi) {
    const auto c = parse_args({"simulate", "--q", "2", "--theta-pi", "0.25"});
    EXPECT_DOUBLE_EQ(c.thetas[0], kPi / 4);
    EXPECT_EQ(c.steps, (std::vector<std::int64_t>{200}));
    const auto g = parse_args({"sweep-theta", "--q", "2", "--theta-pi", "0:2:5"});
    ASSERT_EQ(g.thetas.size(), 5u);
    EXPECT_DOUBLE_EQ(g.thetas[2], kPi);
    EXPECT_DOUBLE_EQ(g.thetas[4], 2 * kPi);
}

TEST(ParseArgs, defaults) {
    const auto t = parse_args({"sweep-theta", "--q", "3"});
    EXPECT_EQ(t.thetas, theta_grid_pi_over_24(0, 48));
    const auto q1 = parse_args({"check-q1"});
    EXPECT_EQ(q1.thetas, theta_grid_pi_over_24(1, 47));
    EXPECT_EQ(q1.steps, (std::vector<std::int64_t>{200}));
    const auto sp = parse_args({"sweep-period", "--theta", "0.5"});
    EXPECT_EQ(sp.periods, integer_range(1, 10));
    const auto ss = parse_args({"sweep-steps", "--q", "2", "--theta", "0.5", "--steps", "10,20,30"});
    EXPECT_EQ(ss.steps, (std::vector<std::int64_t>{10, 20, 30}));
}

TEST(ParseArgs, usage_errors_name_the_flag) {
    auto expect_usage = [](std::vector<std::string> args, const std::string &needle) {
        try {
            parse_args(args);
            ADD_FAILURE() << "no error for " << args.front();
        } catch (const UsageError &e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << needle << " / " << e.what();
        }
    };
    expect_usage({"simulate", "--q", "0"}, "--q");
    expect_usage({"simulate", "--q", "abc", "--theta", "1"}, "--q");
    expect_usage({"simulate", "--q", "2", "--theta", "x1"}, "--theta");
    expect_usage({"simulate", "--q", "2", "--theta", "1", "--steps", "-4"}, "--steps");
    expect_usage({"simulate", "--q", "2", "--theta", "1", "--bogus", "3"}, "--bogus");
    expect_usage({"sweep-theta", "--q", "2", "--theta", "0:1:1"}, "count");
    expect_usage({"simulate", "--q", "2"}, "--theta");
    expect_usage({"simulate", "--q", "2", "--theta", "1", "--theta-pi", "0.3"}, "theta");
    expect_usage({"sweep-steps", "--q", "2", "--theta", "1", "--steps", "0,5"}, "--steps");
    expect_usage({"check-q1", "--steps", "50"}, "--steps");
    expect_usage({"frobnicate"}, "frobnicate");
}

TEST_F(CliTest, usage_error_exit_status) {
    EXPECT_EQ(invoke({"simulate", "--q", "0"}), kExitUsage);
    EXPECT_NE(err_.str().find("--q"), std::string::npos);
    EXPECT_EQ(invoke({}), kExitUsage);
}

TEST_F(CliTest, help_exits_cleanly) {
    EXPECT_EQ(invoke({"--help"}), kExitOk);
    EXPECT_NE(out_.str().find("sweep-period"), std::string::npos);
}

TEST_F(CliTest, simulate_writes_distribution_and_manifest) {
    const auto csv = dir_ / "d.csv";
    ASSERT_EQ(invoke({"simulate", "--q", "4", "--theta-pi", "0.1666666666666667", "--steps", "100",
                      "--out", csv.string()}),
              kExitOk)
        << err_.str();
    const auto text = slurp(csv);
    EXPECT_EQ(first_line(text), "position,probability");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 202);
    EXPECT_NE(text.find("\n-100,"), std::string::npos);
    EXPECT_EQ(text.find('\r'), std::string::npos);

    const auto manifest = nlohmann::json::parse(slurp(dir_ / "d.csv.manifest.json"));
    EXPECT_EQ(manifest["command"], "simulate");
    EXPECT_EQ(manifest["config"]["q"][0], 4);
    EXPECT_EQ(manifest["output"]["rows"], 201);
    EXPECT_TRUE(manifest.contains("wall_clock_seconds"));
    EXPECT_TRUE(manifest["thresholds"].contains("lazy_relative_spread"));
    EXPECT_LT(manifest["summary"]["symmetry_residual"].get<double>(), 1e-12);
}

TEST_F(CliTest, sweep_steps_ballistic_row) {
    ASSERT_EQ(invoke({"sweep-steps", "--q", "1", "--theta-pi", "0.5", "--steps", "10"}), kExitOk);
    std::istringstream lines(out_.str());
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "n,sigma");
    EXPECT_FALSE(std::getline(lines, extra));
    ASSERT_EQ(row.substr(0, 3), "10,");
    EXPECT_NEAR(std::stod(row.substr(3)), 10.0, 1e-12);
}

TEST_F(CliTest, every_command_has_its_schema) {
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"simulate", "--q", "3", "--theta", "0.4", "--steps", "20"}, "position,probability"},
        {{"sweep-steps", "--q", "3", "--theta", "0.4", "--steps", "1:20"}, "n,sigma"},
        {{"sweep-theta", "--q", "3", "--theta", "0:3:7", "--steps", "20"}, "theta,sigma"},
        {{"sweep-period", "--theta", "0.4", "--q", "1:5", "--steps", "20"}, "q,inv_q,sigma"},
        {{"check-q1", "--theta", "0.5,1.5", "--steps", "100"}, "theta,sigma2_over_N2,law,residual"},
    };
    for (const auto &[args, header] : cases) {
        ASSERT_EQ(invoke(args), kExitOk) << args.front() << ": " << err_.str();
        EXPECT_EQ(first_line(out_.str()), header);
    }
}

TEST_F(CliTest, output_is_byte_identical_across_runs) {
    for (const auto &cmd : std::vector<std::vector<std::string>>{
             {"simulate", "--q", "4", "--theta", "0.5236", "--steps", "100"},
             {"sweep-theta", "--q", "2", "--steps", "60", "--threads", "4"},
             {"check-q1", "--steps", "120", "--threads", "3"}}) {
        auto a = cmd;
        a.insert(a.end(), {"--out", (dir_ / "a.csv").string()});
        auto b = cmd;
        b.insert(b.end(), {"--out", (dir_ / "b.csv").string()});
        ASSERT_EQ(invoke(a), kExitOk);
        ASSERT_EQ(invoke(b), kExitOk);
        EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv")) << cmd.front();
    }
}

TEST_F(CliTest, unwritable_output_is_io_error) {
    EXPECT_EQ(invoke({"simulate", "--q", "2", "--theta", "1", "--steps", "5", "--out",
                      (dir_ / "missing" / "x.csv").string()}),
              kExitIo);
    EXPECT_NE(err_.str().find("cannot write"), std::string::npos);
}

TEST_F(CliTest, invariant_violation_exit_status) {
    auto cfg = parse_args({"simulate", "--q", "2", "--theta", "1", "--steps", "5"});
    cfg.thresholds.norm_drift = -1.0;
    EXPECT_EQ(run(cfg, out_, err_), kExitInvariant);
    EXPECT_NE(err_.str().find("invariant"), std::string::npos);
}

TEST(FormatReal, seventeen_significant_digits) {
    EXPECT_EQ(format_real(0.5), "0.5");
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(format_real(100.0), "100");
    EXPECT_EQ(format_real(1e-20), "9.9999999999999995e-21");
}
