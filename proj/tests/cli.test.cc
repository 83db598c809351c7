// Copyright 2026 The rspsim Authors
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

#include "rspsim/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gtest/gtest.h"

#include "oracle.test.h"

using namespace rspsim;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "rspsim");
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(cli_rsp, equatorial_example) {
    auto r = run_cli({"rsp", "--theta", "1.5707963", "--phi", "0.7853982", "--family", "equatorial", "--bell",
                      "psi-minus", "--trials", "1000", "--seed", "7", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["schema_version"], "1");
    ASSERT_EQ(j["result"]["exact_delivery_rate"].get<double>(), 1.0);
    ASSERT_EQ(j["result"]["verdict"], "pass");
}

TEST(cli_rsp, polar_analytic_both_branches) {
    auto r = run_cli({"rsp", "--theta", "0", "--phi", "0", "--family", "polar", "--bell", "psi-minus", "--analytic"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["branches"].size(), 2u);
    for (const auto &b : j["branches"]) {
        ASSERT_NEAR(b["fidelity"].get<double>(), 1.0, kTrigTol);
    }
}

TEST(cli_rsp, polar_mismatch_is_usage_error) {
    auto r = run_cli({"rsp", "--theta", "1.0", "--phi", "1.0", "--family", "polar", "--trials", "10"});
    ASSERT_EQ(r.code, 1);
    ASSERT_NE(r.err.find("polar"), std::string::npos);
}

TEST(cli_rsp, usage_errors) {
    ASSERT_EQ(run_cli({"rsp", "--theta", "90deg"}).code, 1);
    ASSERT_EQ(run_cli({"rsp", "--family", "tropical"}).code, 1);
    ASSERT_EQ(run_cli({"rsp", "--trials", "0"}).code, 1);
    ASSERT_EQ(run_cli({"rsp", "--bogus"}).code, 1);
    ASSERT_EQ(run_cli({}).code, 1);
    ASSERT_EQ(run_cli({"--help"}).code, 0);
}

TEST(cli_rsp, csv_format) {
    auto r = run_cli({"rsp", "--theta", "1", "--phi", "1", "--trials", "100", "--format", "csv"});
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 2u);
    ASSERT_EQ(rows[0][0], "theta");
    ASSERT_EQ(rows[0].back(), "verdict");
    ASSERT_EQ(rows[1].size(), rows[0].size());
}

TEST(cli_rsp, analytic_ignores_seed) {
    auto a = run_cli({"rsp", "--theta", "1", "--phi", "1", "--analytic", "--seed", "1"});
    auto b = run_cli({"rsp", "--theta", "1", "--phi", "1", "--analytic", "--seed", "999"});
    ASSERT_EQ(a.out, b.out);
}

TEST(cli_rsp, workers_do_not_change_output) {
    auto a = run_cli({"rsp", "--theta", "1", "--phi", "2", "--trials", "50000", "--seed", "3", "--workers", "1"});
    auto b = run_cli({"rsp", "--theta", "1", "--phi", "2", "--trials", "50000", "--seed", "3", "--workers", "4"});
    ASSERT_EQ(a.out, b.out);
}

TEST(cli_rsp, out_writes_file) {
    auto path = std::filesystem::temp_directory_path() / "rspsim_cli_test_out.json";
    std::filesystem::remove(path);
    auto r = run_cli({"rsp", "--theta", "1", "--phi", "1", "--analytic", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    ASSERT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    ASSERT_EQ(nlohmann::json::parse(s.str())["command"], "rsp");
    std::filesystem::remove(path);
}

TEST(cli_measure, eigenstate) {
    auto r = run_cli({"measure-sim", "--theta", "0", "--phi", "0", "--bx", "0", "--by", "0", "--bz", "1", "--trials",
                      "500"});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(nlohmann::json::parse(r.out)["result"]["p_plus"].get<double>(), 1.0);
}

TEST(cli_measure, sixty_degrees) {
    auto r = run_cli({"measure-sim", "--theta", "1.0471975511965976", "--phi", "0", "--bz", "1", "--trials",
                      "100000", "--seed", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    double p = nlohmann::json::parse(r.out)["result"]["p_plus"].get<double>();
    ASSERT_NEAR(p, 0.75, 0.0041);
}

TEST(cli_measure, non_unit_direction_rejected) {
    auto r = run_cli({"measure-sim", "--theta", "0", "--phi", "0", "--bx", "0", "--by", "0", "--bz", "2"});
    ASSERT_EQ(r.code, 1);
}

TEST(cli_teleport, two_cbits) {
    auto r = run_cli({"teleport", "--theta", "1.0471975511965976", "--phi", "0.6283185307179586", "--trials", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["result"]["cbits_per_run"], 2);
    ASSERT_NEAR(j["result"]["mean_fidelity"].get<double>(), 1.0, kTrigTol);
}

TEST(cli_bell_check, contract) {
    auto r = run_cli({"bell-check"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["samples"], 1000);
    ASSERT_LT(j["max_deviation"].get<double>(), 1e-12);
    ASSERT_EQ(run_cli({"bell-check", "--samples", "1", "--seed", "0"}).code, 0);
    ASSERT_EQ(run_cli({"bell-check", "--inject-sign-fault"}).code, 2);
}

TEST(cli_sweep, equatorial_all_exact) {
    auto r = run_cli({"sweep", "--mode", "rsp", "--family", "equatorial", "--grid-theta", "1", "--grid-phi", "36",
                      "--trials", "200"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 37u);
    for (std::size_t k = 1; k < rows.size(); k++) {
        ASSERT_EQ(std::stod(rows[k][6]), 1.0);
    }
}

TEST(cli_sweep, arbitrary_cluster_near_half) {
    auto r = run_cli({"sweep", "--mode", "rsp", "--family", "arbitrary", "--grid-theta", "10", "--grid-phi", "10",
                      "--trials", "1000", "--seed", "4"});
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 101u);
    int inside = 0;
    for (std::size_t k = 1; k < rows.size(); k++) {
        double rate = std::stod(rows[k][6]);
        ASSERT_NEAR(rate, 0.5, 0.1);
        inside += std::abs(rate - 0.5) <= oracle::three_sigma(0.5, 1000);
    }
    ASSERT_GE(inside, 95);
}

TEST(cli_quote_check, prints_table) {
    auto r = run_cli({"--quote-check"});
    ASSERT_EQ(r.code, 0);
    ASSERT_NE(r.out.find("sigma_x sigma_y"), std::string::npos);
    ASSERT_NE(r.out.find("derived"), std::string::npos);
    ASSERT_EQ(r.out.find("MISMATCH"), std::string::npos);
}

TEST(snap_to_family, rounds_printed_angles) {
    double theta = 1.5707963;
    double phi = 0.7853982;
    cli::snap_to_family(theta, phi, StateFamily::Equatorial);
    ASSERT_EQ(theta, std::numbers::pi / 2);
    ASSERT_EQ(phi, 0.7853982);
    theta = 1.0;
    phi = 3.1415926;
    cli::snap_to_family(theta, phi, StateFamily::Polar);
    ASSERT_EQ(phi, std::numbers::pi);
}
