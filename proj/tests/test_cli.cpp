// Copyright 2026 The definetti Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "definetti/cli.hpp"

using namespace definetti;
using namespace definetti::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "definetti_test_cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("parse_state") {
    CHECK(parse_state("product").kind == StateSpec::Kind::kProduct);
    CHECK(parse_state("ghz").label() == "ghz");
    const StateSpec dicke = parse_state("dicke:4-4");
    CHECK(dicke.kind == StateSpec::Kind::kDicke);
    CHECK(dicke.occupation == OccupationVector{4, 4});
    CHECK(parse_state("dicke:6,2").label() == "dicke:6-2");
    const StateSpec rnd = parse_state("random-sym:17");
    CHECK(rnd.seed == 17u);
    CHECK(rnd.label() == "random-sym:17");
    CHECK_THROWS_AS(parse_state("werner"), UsageError);
    CHECK_THROWS_AS(parse_state("dicke:"), UsageError);
    CHECK_THROWS_AS(parse_state("dicke:a-b"), UsageError);
    CHECK_THROWS_AS(parse_state("random-sym:"), UsageError);
    CHECK_THROWS_AS(parse_state("random-sym:-3"), UsageError);
}

TEST_CASE("state specs build symmetric states of the right size") {
    CHECK(parse_state("dicke:2-1").build(3, 2).dim() == 8);
    CHECK_THROWS_AS(parse_state("dicke:2-1").build(4, 2), UsageError);
    CHECK_THROWS_AS(parse_state("dicke:2-1-1").build(4, 2), UsageError);
    const PureState a = parse_state("random-sym:5").build(4, 2);
    const PureState b = parse_state("random-sym:5").build(4, 2);
    CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
}

TEST_CASE("parse_rule") {
    const RuleSpec exact = parse_rule("exact:8");
    CHECK(exact.exact);
    CHECK(exact.degree == 8);
    const RuleSpec mc = parse_rule("mc:1000:42");
    CHECK(!mc.exact);
    CHECK(mc.samples == 1000);
    CHECK(mc.seed == 42u);
    CHECK(parse_rule("mc:10").seed == 0u);
    CHECK(parse_rule("mc:1000:42").build(3).describe() == "mc:1000:42");
    CHECK_THROWS_AS(parse_rule("exact:"), UsageError);
    CHECK_THROWS_AS(parse_rule("exact:-1"), UsageError);
    CHECK_THROWS_AS(parse_rule("mc:0"), UsageError);
    CHECK_THROWS_AS(parse_rule("gauss:3"), UsageError);
    CHECK_THROWS_AS(parse_rule("exact:4").build(3), UsageError);
}

TEST_CASE("parse_int_list") {
    CHECK(parse_int_list("3") == std::vector<int>{3});
    CHECK(parse_int_list("1,2,5") == std::vector<int>{1, 2, 5});
    CHECK(parse_int_list("0..3") == std::vector<int>{0, 1, 2, 3});
    CHECK(parse_int_list("0..1,4") == std::vector<int>{0, 1, 4});
    CHECK_THROWS_AS(parse_int_list(""), UsageError);
    CHECK_THROWS_AS(parse_int_list("3..1"), UsageError);
    CHECK_THROWS_AS(parse_int_list("x"), UsageError);
}

TEST_CASE("run config defaults and validation") {
    RunConfig config;
    config.n = 3;
    CHECK(config.radii() == std::vector<int>{0, 1, 2, 3});
    CHECK(config.rule_for(2).exact);
    CHECK(config.rule_for(2).degree == 5);
    config.d = 3;
    CHECK(!config.rule_for(2).exact);

    RunConfig big;
    big.n = 12;
    big.k_list = {12};
    CHECK_THROWS_AS(big.validate(), UsageError);
    big.allow_large = true;
    CHECK_NOTHROW(big.validate());

    RunConfig bad_r;
    bad_r.n = 2;
    bad_r.r_list = {3};
    CHECK_THROWS_AS(bad_r.validate(), UsageError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(45.0) == "45");
    CHECK(format_number(2.449489742783178) == "2.44948974278");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("csv header") {
    CHECK(csv_header() == "d,n,k,r,state,lhs,lhs_err,chain_bound,explicit_bound,g_max,fallback_nodes,nodes,seed,status");
}

TEST_CASE("verify the Bell pair from the command line") {
    const Result res = run_cli({"verify", "--d", "2", "--n", "1", "--k", "1", "--r", "1", "--state", "ghz"});
    CHECK(res.code == kExitPass);
    const auto rows = lines(res.out);
    REQUIRE(rows.size() == 2u);
    CHECK(rows[0] == csv_header());
    CHECK(rows[1].rfind("2,1,1,1,ghz,", 0) == 0);
    CHECK(rows[1].find(",2.44948974278,") != std::string::npos);
    CHECK(rows[1].find(",8.79689613113,") != std::string::npos);
    CHECK(rows[1].substr(rows[1].size() - 5) == ",PASS");
}

TEST_CASE("sweep rows are sorted by k then r") {
    const Result res = run_cli({"sweep", "--n", "2", "--k", "2,1", "--state", "product"});
    CHECK(res.code == kExitPass);
    const auto rows = lines(res.out);
    REQUIRE(rows.size() == 1u + 2u * 3u);
    const char* prefixes[] = {"2,2,1,0,", "2,2,1,1,", "2,2,1,2,", "2,2,2,0,", "2,2,2,1,", "2,2,2,2,"};
    for (int i = 0; i < 6; ++i) CHECK(rows[i + 1].rfind(prefixes[i], 0) == 0);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::string> args{"sweep", "--d", "3", "--n", "1", "--k", "1", "--state", "random-sym:4",
                                        "--rule", "mc:2000:9"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    CHECK(a.out == b.out);
    CHECK(a.out.find(",2000,9,") != std::string::npos);
}

TEST_CASE("json output") {
    const Result res = run_cli({"verify", "--n", "1", "--k", "1", "--state", "ghz", "--format", "json"});
    CHECK(res.code == kExitPass);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["header"] == csv_header());
    REQUIRE(doc["rows"].size() == 2u);
    CHECK(doc["rows"][1]["status"] == "PASS");
    CHECK(doc["rows"][1]["support_violations"] == 0);
}

TEST_CASE("output files") {
    const auto csv = scratch("out.csv");
    const auto json = scratch("out.json");
    const Result res = run_cli({"verify", "--n", "1", "--k", "1", "--state", "ghz", "--output", csv.string(), "--json",
                                json.string()});
    CHECK(res.code == kExitPass);
    CHECK(res.out.empty());
    std::ifstream csv_in(csv);
    std::string first;
    std::getline(csv_in, first);
    CHECK(first == csv_header());
    std::ifstream json_in(json);
    CHECK(nlohmann::json::parse(json_in)["rows"].size() == 2u);
}

TEST_CASE("config file values are overridden by later flags") {
    const auto path = scratch("bell.conf");
    {
        std::ofstream f(path);
        f << "# Bell pair\n"
          << "d = 2\n"
          << "n = 1\n"
          << "k = 1\n"
          << "state = product\n"
          << "r = 0\n";
    }
    const Result from_file = run_cli({"verify", "--config", path.string()});
    CHECK(from_file.code == kExitPass);
    CHECK(lines(from_file.out).at(1).rfind("2,1,1,0,product,", 0) == 0);

    const Result overridden = run_cli({"verify", "--config", path.string(), "--state", "ghz", "--r", "1"});
    CHECK(overridden.code == kExitPass);
    CHECK(lines(overridden.out).at(1).rfind("2,1,1,1,ghz,", 0) == 0);

    const auto broken = scratch("broken.conf");
    {
        std::ofstream f(broken);
        f << "just words\n";
    }
    CHECK(run_cli({"verify", "--config", broken.string()}).code == kExitUsage);
    CHECK(run_cli({"verify", "--config", scratch("missing.conf").string()}).code == kExitUsage);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == kExitUsage);
    CHECK(run_cli({"frobnicate"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--n", "abc"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--state", "werner"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--n", "2", "--r", "5"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--k", "1,2"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--n", "11", "--k", "10"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--rule", "exact:1", "--n", "2", "--k", "2"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--n", "2", "--k", "2", "--state", "dicke:3-3"}).code == kExitUsage);
    CHECK(run_cli({"verify", "--format", "xml"}).code == kExitUsage);
    // Five Monte Carlo samples cannot resolve the integral.
    CHECK(run_cli({"verify", "--d", "3", "--n", "2", "--k", "1", "--r", "1", "--state", "ghz", "--rule", "mc:5:1"})
              .code == kExitInconclusive);
    CHECK(run_cli({"--help"}).code == kExitPass);
}

TEST_CASE("exit code aggregation") {
    VerificationReport pass, bad, unsure;
    pass.status = Status::kPass;
    bad.status = Status::kViolation;
    unsure.status = Status::kInconclusive;
    CHECK(exit_code_for({pass, pass}) == kExitPass);
    CHECK(exit_code_for({pass, unsure}) == kExitInconclusive);
    CHECK(exit_code_for({unsure, bad, pass}) == kExitViolation);
}

TEST_CASE("check-props subcommand") {
    const Result res = run_cli({"check-props", "--sym-max-n", "3", "--gentle-trials", "20",
                                "--chernoff-max-n", "10", "--sandwich-max", "10"});
    CHECK(res.code == kExitPass);
    CHECK(res.out.find("FAIL") == std::string::npos);
    CHECK(res.out.find("ok") != std::string::npos);
}

TEST_CASE("product state at n = k = 4 with a finer rule") {
    const Result res = run_cli({"verify", "--d", "2", "--n", "4", "--k", "4", "--r", "0,1,2,3,4", "--state", "product",
                                "--rule", "exact:10"});
    CHECK(res.code == kExitPass);
    const auto rows = lines(res.out);
    REQUIRE(rows.size() == 6u);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].substr(rows[i].size() - 5) == ",PASS");
    // lhs = 8/9 at r = 0.
    CHECK(rows[1].rfind("2,4,4,0,product,0.888888888889,", 0) == 0);
}

TEST_CASE("explicit bound column decreases strictly in r") {
    const Result res = run_cli({"sweep", "--n", "4", "--k", "4", "--state", "ghz", "--format", "json"});
    CHECK(res.code == kExitPass);
    const auto doc = nlohmann::json::parse(res.out);
    REQUIRE(doc["rows"].size() == 5u);
    for (std::size_t i = 1; i < 5; ++i) {
        CHECK(doc["rows"][i]["explicit_bound"].get<double>() < doc["rows"][i - 1]["explicit_bound"].get<double>());
    }
}
