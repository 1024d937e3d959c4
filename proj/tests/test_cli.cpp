// Copyright 2026 The fdmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = fdmimo::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("fdmimo_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"simulate-cdf", "--drops", "many"}).code == 2);
    CHECK(run({"simulate-cdf", "--drops", "0", "--out", scratch("zero").string()}).code == 2);
}

TEST_CASE("invalid pathloss exponent cites the constraint") {
    const auto r = run({"simulate-cdf", "--set", "pathloss_exponent=2", "--out", scratch("eta").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("pathloss_exponent") != std::string::npos);
    CHECK(r.err.find("eta > 2") != std::string::npos);
}

TEST_CASE("config file errors name the key") {
    const auto dir = scratch("badcfg");
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"num_antenas": 10})";
    const auto r = run({"print-config", "--config", (dir / "c.json").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("num_antenas") != std::string::npos);
}

TEST_CASE("simulate-cdf writes a csv and a manifest") {
    const auto dir = scratch("cdf");
    const auto r = run({"simulate-cdf", "--drops", "1", "--out", dir.string(), "--export-drop", "--dump-budgets"});
    REQUIRE(r.code == 0);
    CHECK(lines(slurp(dir / "cdf.csv")) == 2);
    const auto m = json::parse(slurp(dir / "simulate-cdf.manifest.json"));
    CHECK(m["command"] == "simulate-cdf");
    CHECK(m["seed"] == 1);
    CHECK(m["version"] == fdmimo::cli::kVersion);
    CHECK(m.contains("timestamp"));
    CHECK(m["params"]["num_antennas"] == 100);
    const auto outputs = m["outputs"].get<std::vector<std::string>>();
    CHECK(outputs == std::vector<std::string>{"cdf.csv", "drop.csv", "budgets.csv", "breakdown.csv"});
    for (const auto& o : outputs) CHECK(fs::exists(dir / o));
}

TEST_CASE("manifest replay is bit-identical across thread counts") {
    const auto a = scratch("replay_a");
    const auto b = scratch("replay_b");
    REQUIRE(run({"simulate-cdf", "--drops", "30", "--seed", "77", "--antennas", "64", "--threads", "1", "--out",
                 a.string()})
                .code == 0);
    REQUIRE(run({"simulate-cdf", "--manifest", (a / "simulate-cdf.manifest.json").string(), "--threads", "4", "--out",
                 b.string()})
                .code == 0);
    CHECK(slurp(a / "cdf.csv") == slurp(b / "cdf.csv"));
    const auto mb = json::parse(slurp(b / "simulate-cdf.manifest.json"));
    CHECK(mb["seed"] == 77);
    CHECK(mb["params"]["num_antennas"] == 64);

    CHECK(run({"sweep-bits", "--manifest", (a / "simulate-cdf.manifest.json").string(), "--out", b.string()}).code ==
          2);
}

TEST_CASE("sweep-bits deduplicates with a warning") {
    const auto dir = scratch("sweep");
    const auto r = run({"sweep-bits", "--drops", "4", "--bits-list", "1,3,3,full,1", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    const auto csv = slurp(dir / "sweep.csv");
    CHECK(lines(csv) == 4);
    CHECK(json::parse(slurp(dir / "sweep-bits.manifest.json"))["options"]["bits"] == "1,3,full");
    CHECK(run({"sweep-bits", "--bits-list", "1,x", "--out", dir.string()}).code == 2);
    CHECK(run({"sweep-bits", "--bits-list", "0", "--out", dir.string()}).code == 2);
}

TEST_CASE("hd-baseline writes both duplex modes") {
    const auto dir = scratch("hd");
    REQUIRE(run({"hd-baseline", "--drops", "3", "--out", dir.string()}).code == 0);
    CHECK(lines(slurp(dir / "hd_cdf.csv")) == 4);
    const auto s = slurp(dir / "se_summary.csv");
    CHECK(s.find("full_duplex,") != std::string::npos);
    CHECK(s.find("half_duplex,") != std::string::npos);
}

TEST_CASE("asymptotics table") {
    const auto dir = scratch("asym");
    const auto r = run({"asymptotics", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("lemma4_power_scaling") != std::string::npos);
    CHECK(r.out.find("report-only") != std::string::npos);
    CHECK(lines(slurp(dir / "asymptotics.csv")) == 7);
}

TEST_CASE("quick validation passes and marks report-only probes") {
    const auto dir = scratch("validate");
    const auto r = run({"validate", "--quick", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto j = json::parse(slurp(dir / "validate.json"));
    CHECK(j["passed"] == true);
    bool lemma4 = false;
    for (const auto& c : j["checks"]) {
        if (c["check"] == "lemma4_power_scaling") {
            lemma4 = true;
            CHECK(c["status"] == "report-only");
        }
    }
    CHECK(lemma4);
    CHECK(fs::exists(dir / "validate-oracle.manifest.json"));
}

TEST_CASE("print-config layering") {
    auto r = run({"print-config", "--set", "num_antennas=64"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["num_antennas"] == 64);

    ::setenv("FDMIMO_NUM_ANTENNAS", "32", 1);
    r = run({"print-config"});
    CHECK(json::parse(r.out)["num_antennas"] == 32);
    r = run({"print-config", "--set", "num_antennas=48"});
    CHECK(json::parse(r.out)["num_antennas"] == 48);
    ::unsetenv("FDMIMO_NUM_ANTENNAS");
}
