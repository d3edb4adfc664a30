// Copyright 2026 The ionramsey Authors
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

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <json.hpp>
#include <map>
#include <sstream>

#include "ramsey/records_io.h"

namespace fs = std::filesystem;
using ramsey::cli::run_command;

namespace {

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("ionramsey_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    std::string write_config(const std::string &name, const std::string &text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return run_command(args, out_, err_);
    }

    std::string out_dir(const std::string &name) const {
        return (dir_ / name).string();
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_F(CliTest, ramsey_zero_detuning_returns_every_ion_down) {
    std::string cfg = write_config("a.ini",
                                   "[experiment]\n"
                                   "ions = 2\n"
                                   "protocol = standard\n"
                                   "t_ramsey = 1.5\n"
                                   "trials = 200\n");
    ASSERT_EQ(run({"ramsey", "--config", cfg, "--seed", "11", "--out", out_dir("o")}), 0) << err_.str();
    std::ifstream in(dir_ / "o" / "ramsey.csv");
    auto rows = ramsey::read_record_rows(in);
    int trials = 0;
    for (const auto &r : rows) {
        if (!r.outcome.empty()) {
            ++trials;
            EXPECT_EQ(r.outcome, "2");
        }
    }
    EXPECT_EQ(trials, 200);
    std::string text = slurp(dir_ / "o" / "ramsey.csv");
    EXPECT_NE(text.find("# mean_excitations 0\n"), std::string::npos);
}

TEST_F(CliTest, scaling_output_is_identical_across_runs_and_thread_counts) {
    std::string cfg = write_config("s.ini",
                                   "[scaling]\n"
                                   "ions = 1, 2, 4\n"
                                   "trials = 300\n");
    ASSERT_EQ(run({"scaling", "--config", cfg, "--seed", "5", "--out", out_dir("a")}), 0) << err_.str();
    ASSERT_EQ(run({"scaling", "--config", cfg, "--seed", "5", "--out", out_dir("b")}), 0) << err_.str();
    ASSERT_EQ(run({"scaling", "--config", cfg, "--seed", "5", "--out", out_dir("c"), "--threads", "3"}), 0);
    std::string a = slurp(dir_ / "a" / "scaling.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir_ / "b" / "scaling.csv"));
    EXPECT_EQ(a, slurp(dir_ / "c" / "scaling.csv"));

    ASSERT_EQ(run({"scaling", "--config", cfg, "--seed", "6", "--out", out_dir("d")}), 0);
    EXPECT_NE(a, slurp(dir_ / "d" / "scaling.csv"));
}

TEST_F(CliTest, fourier_fit_of_fixture_matches_generator) {
    const fs::path data = fs::path(RAMSEY_TEST_DATA) / "fourier_synthetic_L3.csv";
    // Oracle: the generator parameters recorded in the fixture header.
    std::map<std::string, double> truth;
    {
        std::ifstream in(data);
        std::string line;
        while (std::getline(in, line) && line[0] == '#') {
            std::istringstream fields(line.substr(1));
            std::string key;
            double value;
            while (fields >> key >> value) {
                truth[key] = value;
            }
        }
    }
    ASSERT_EQ(truth.count("C_3"), 1u);
    std::string cfg = write_config("f.ini", "[fourier]\ninput = " + data.string() +
                                                "\nharmonics = 3\ndelta_omega = " +
                                                ramsey::format_number(truth["delta_omega"]) + "\n");
    ASSERT_EQ(run({"fourier", "--config", cfg, "--out", out_dir("o"), "--format", "json"}), 0) << err_.str();
    auto j = nlohmann::json::parse(slurp(dir_ / "o" / "fourier.json"));
    EXPECT_EQ(j["schema"], "ionramsey.summary/1");
    const auto &r = j["result"];
    EXPECT_NEAR(r["offset"].get<double>(), truth["offset"], 1e-6);
    for (int p = 1; p <= 3; ++p) {
        std::string s = std::to_string(p);
        EXPECT_NEAR(r["C"][p - 1].get<double>(), truth["C_" + s], 1e-6) << p;
        EXPECT_NEAR(r["xi"][p - 1].get<double>(), truth["xi_" + s], 1e-6) << p;
    }
    EXPECT_EQ(r["samples"], 32);
    EXPECT_FALSE(r["change_detection"]["holds"].get<bool>());
}

TEST_F(CliTest, unknown_key_is_a_config_error) {
    std::string cfg = write_config("bad.ini", "[experiment]\nions = 2\nbogus = 1\n");
    EXPECT_EQ(run({"ramsey", "--config", cfg, "--out", out_dir("o")}), ramsey::cli::kExitConfig);
    auto j = nlohmann::json::parse(err_.str());
    EXPECT_EQ(j["error"], "config");
    EXPECT_FALSE(fs::exists(dir_ / "o" / "ramsey.csv"));
}

TEST_F(CliTest, malformed_values_and_flags_are_config_errors) {
    std::string cfg = write_config("bad.ini", "[experiment]\nions = two\n");
    EXPECT_EQ(run({"ramsey", "--config", cfg, "--out", out_dir("o")}), ramsey::cli::kExitConfig);
    EXPECT_EQ(run({"ramsey", "--format", "xml", "--out", out_dir("o")}), ramsey::cli::kExitConfig);
    EXPECT_EQ(run({"ramsey", "--no-such-flag"}), ramsey::cli::kExitConfig);
    EXPECT_EQ(run({"ramsey", "--config", (dir_ / "missing.ini").string()}), ramsey::cli::kExitConfig);
    EXPECT_EQ(run({"scaling", "--expectation-mode", "--out", out_dir("o")}), ramsey::cli::kExitConfig);
}

TEST_F(CliTest, too_many_ions_is_a_capacity_error) {
    std::string cfg = write_config("big.ini", "[experiment]\nions = 40\n");
    EXPECT_EQ(run({"ramsey", "--config", cfg, "--out", out_dir("o")}), ramsey::cli::kExitCapacity);
    auto j = nlohmann::json::parse(err_.str());
    EXPECT_EQ(j["error"], "capacity");
    EXPECT_EQ(j["exit_code"], 3);
}

TEST_F(CliTest, calibration_iteration_cap_is_non_convergence) {
    std::string cfg = write_config("cal.ini",
                                   "[experiment]\nions = 2\n"
                                   "[calibration]\nomega_0 = 0.003\nbias = exponential\nbias_time = 20\n"
                                   "max_iterations = 1\n");
    EXPECT_EQ(run({"calibrate", "--config", cfg, "--expectation-mode", "--out", out_dir("o")}),
              ramsey::cli::kExitNonConvergence);
    auto j = nlohmann::json::parse(err_.str());
    EXPECT_EQ(j["error"], "non_convergence");
}

TEST_F(CliTest, calibration_removes_bias_that_shifts_naive_estimate) {
    std::string cfg = write_config("cal.ini",
                                   "[experiment]\nions = 2\n"
                                   "[calibration]\nomega_0 = 0.003\nbias = exponential\nbias_time = 20\n");
    ASSERT_EQ(run({"calibrate", "--config", cfg, "--expectation-mode", "--out", out_dir("o"), "--format", "json"}),
              0)
        << err_.str();
    auto r = nlohmann::json::parse(slurp(dir_ / "o" / "calibrate.json"))["result"];
    const double width = r["fringe_width"].get<double>();
    EXPECT_LT(std::abs(r["omega_0_estimate"].get<double>() - 0.003), 1e-3 * width);
    // Oracle: S = B cos(x) inverted with acos misplaces omega_0 by (acos(B cos x) - x) / (L T).
    const double pi = std::acos(-1.0);
    const double b = std::exp(-10.0 / 20.0), x = 2 * (0.0 - 0.003) * 10 + pi / 2;
    EXPECT_NEAR(0.003 - r["naive_estimate"].get<double>(), (std::acos(b * std::cos(x)) - x) / 20, 1e-12);
    EXPECT_GT(std::abs(r["naive_estimate"].get<double>() - 0.003), 5e-3 * width);
}

TEST_F(CliTest, existing_output_needs_force) {
    ASSERT_EQ(run({"ramsey", "--expectation-mode", "--out", out_dir("o")}), 0) << err_.str();
    const std::string first = slurp(dir_ / "o" / "ramsey.csv");
    EXPECT_EQ(run({"ramsey", "--expectation-mode", "--seed", "9", "--out", out_dir("o")}), ramsey::cli::kExitFailure);
    auto j = nlohmann::json::parse(err_.str());
    EXPECT_NE(j["message"].get<std::string>().find("--force"), std::string::npos);
    EXPECT_EQ(slurp(dir_ / "o" / "ramsey.csv"), first);
    EXPECT_EQ(run({"ramsey", "--expectation-mode", "--seed", "9", "--out", out_dir("o"), "--force"}), 0);
    EXPECT_NE(slurp(dir_ / "o" / "ramsey.csv"), first);
}

TEST_F(CliTest, header_records_manifest) {
    ASSERT_EQ(run({"ramsey", "--expectation-mode", "--seed", "17", "--out", out_dir("o")}), 0);
    std::string text = slurp(dir_ / "o" / "ramsey.csv");
    EXPECT_EQ(text.rfind("# ionramsey ", 0), 0u);
    EXPECT_NE(text.find("# seed 17\n"), std::string::npos);
    EXPECT_NE(text.find("# mode expectation\n"), std::string::npos);

    ramsey::cli::RunManifest a{.command = "ramsey", .config_text = "x", .seed = 1};
    ramsey::cli::RunManifest b = a;
    b.threads = 8;
    EXPECT_EQ(a.hash(), b.hash());
    b.seed = 2;
    EXPECT_NE(a.hash(), b.hash());
}

TEST_F(CliTest, simulated_fourier_scan_in_expectation_mode) {
    std::string cfg = write_config("f.ini",
                                   "[experiment]\nions = 3\nprotocol = ghz_final_pulse\nomega_0 = 0.5\n"
                                   "[fourier]\npoints = 16\n");
    ASSERT_EQ(run({"fourier", "--config", cfg, "--expectation-mode", "--out", out_dir("o"), "--format", "json"}), 0)
        << err_.str();
    auto r = nlohmann::json::parse(slurp(dir_ / "o" / "fourier.json"))["result"];
    EXPECT_NEAR(r["C"][2].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(r["C"][0].get<double>(), 0.0, 1e-9);
    EXPECT_TRUE(r["change_detection"]["holds"].get<bool>());
}
