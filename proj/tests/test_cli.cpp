/*
   Copyright 2026 The stakelc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include <stakelc/cli.hpp>

namespace stakelc {
namespace {

namespace fs = std::filesystem;

const fs::path kSource{STAKELC_SOURCE_DIR};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "stakelc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, std::string> key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string k;
    std::string v;
    while (in >> k >> v) kv[k] = v;
    return kv;
}

std::vector<std::string> csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

TEST(Cli, PriceMatchesWorkedExample) {
    const auto r = cli({"price", "--value", "100", "--duration", "1500"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(key_values(r.out).at("premium_eth"), "0.004566");
}

TEST(Cli, PriceOfZeroValueIsGasOnly) {
    const auto r = cli({"price", "--value", "0", "--duration", "1500"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto kv = key_values(r.out);
    EXPECT_EQ(kv.at("premium_eth"), "0.000000");
    EXPECT_EQ(kv.at("total_usd"), kv.at("gas_usd"));
}

TEST(Cli, MissingOrBadFlagsExitTwo) {
    EXPECT_EQ(cli({"price", "--value", "10"}).code, 2);
    EXPECT_EQ(cli({"price", "--value", "ten", "--duration", "5"}).code, 2);
    EXPECT_EQ(cli({"price", "--value", "1", "--duration", "5", "--utilization", "0"}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"sweep", "--strategies", "bogus"}).code, 2);
}

TEST(Cli, RunWritesArtifacts) {
    const auto dir = fs::temp_directory_path() / "stakelc_cli_run";
    fs::remove_all(dir);
    const auto r = cli({"run", (kSource / "scenarios" / "honest.scenario").string(), "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream metrics(dir / "metrics.json");
    const auto j = nlohmann::json::parse(metrics);
    EXPECT_TRUE(j["violations"].empty());
    std::ifstream events(dir / "events.jsonl");
    std::string line;
    std::size_t n = 0;
    while (std::getline(events, line)) {
        EXPECT_NO_THROW((void)nlohmann::json::parse(line));
        ++n;
    }
    EXPECT_GT(n, 0u);
    fs::remove_all(dir);
}

TEST(Cli, MalformedScenarioExitsTwo) {
    const auto r = cli({"run", (kSource / "tests" / "data" / "malformed.scenario").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
    EXPECT_EQ(cli({"run", "/nonexistent/none.scenario"}).code, 2);
}

TEST(Cli, ViolationExitsOne) {
    const auto r = cli({"sweep", "--strategies", "wrong_hash", "--scopes", "any", "--deltas", "1",
                        "--challenge-periods", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("invariant violated: eco_safety"), std::string::npos) << r.err;
}

TEST(Cli, CompliantSweepExitsZero) {
    const auto r = cli({"sweep", "--strategies", "all", "--deltas", "1,2"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, SingleFigurePointAgreesWithPrice) {
    const auto fig = cli({"fig1", "--durations", "1500", "--values", "10"});
    ASSERT_EQ(fig.code, 0) << fig.err;
    std::istringstream lines(fig.out);
    std::string header;
    std::string row;
    std::getline(lines, header);
    std::getline(lines, row);
    const auto cols = csv_row(header);
    const auto cells = csv_row(row);
    ASSERT_EQ(cols.size(), cells.size());
    const auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == name) return std::stod(cells[i]);
        }
        ADD_FAILURE() << "missing column " << name;
        return 0.0;
    };
    const auto price = key_values(cli({"price", "--value", "10", "--duration", "1500"}).out);
    EXPECT_NEAR(col("total_usd"), std::stod(price.at("total_usd")), 0.005 + 1e-9);
    EXPECT_NEAR(col("gas_usd"), std::stod(price.at("gas_usd")), 0.005 + 1e-9);
}

TEST(Cli, Table3HasFourRows) {
    const auto r = cli({"table3"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(csv_row(rows[4])[4], "52.76");
}

}  // namespace
}  // namespace stakelc
