// Copyright 2026 The pushgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <filesystem>
#include <numbers>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pushgate/cli.hpp"
#include "pushgate/config.hpp"
#include "pushgate/gate_synthesis.hpp"

using namespace pushgate;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "pushgate");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("pushgate_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("usage and exit codes")
{
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"verify", "medium"}).code == kExitUsage);
    CHECK(cli({"design", "--preset", "fig9"}).code == kExitUsage);
    CHECK(cli({"verify", "fast", "--tolerance", "c1"}).code == kExitUsage);
    CHECK(cli({"verify", "fast", "--tolerance", "c1=-2"}).code == kExitUsage);
    CHECK(cli({"simulate", "--config", "/nonexistent.json"}).code == kExitUsage);
}

TEST_CASE("malformed configuration lists offending keys")
{
    const fs::path d = scratch("badcfg");
    spit(d / "bad.json", R"({"trap": {"epsilon": 0.5, "a_over_d": 1e-3, "eps": 1}, "pulse": {"xi": "big"}})");
    const Run r = cli({"simulate", "--config", (d / "bad.json").string()});
    CHECK(r.code == kExitUsage);
    CHECK(has(r.err, "trap.eps: unknown key"));
    CHECK(has(r.err, "pulse.xi: expected number"));
    CHECK(r.err.starts_with("error: config:"));
    spit(d / "broken.json", "{\"trap\": [");
    CHECK(cli({"design", "--config", (d / "broken.json").string()}).code == kExitUsage);
}

TEST_CASE("verify fast")
{
    const fs::path d = scratch("verify");
    const Run a = cli({"verify", "fast", "--out", d.string()});
    CHECK(a.code == kExitOk);
    CHECK(has(a.out, "verify fast: 4/4 passed (seed 42)"));
    CHECK(fs::exists(d / "verify_report.json"));
    const Run b = cli({"verify", "fast"});
    const auto summary = [](const std::string& s) { return s.substr(0, s.find("wrote")); };
    CHECK(summary(a.out) == summary(b.out));
    const Run c = cli({"verify", "fast", "--tolerance", "c3=1e-20"});
    CHECK(c.code == kExitFailure);
    CHECK(has(c.out, "FAIL c3"));
    CHECK(has(c.out, "3/4 passed"));
}

TEST_CASE("design")
{
    const fs::path d = scratch("design");
    spit(d / "a.json", R"({"trap": {"epsilon": 2, "a_over_d": 1e-3}, "pulse": {"xi": 0.5, "target_phase": 3.141592653589793}})");
    const Run a = cli({"design", "--config", (d / "a.json").string(), "--out", d.string()});
    REQUIRE(a.code == kExitOk);
    CHECK(has(a.out, "tau_L"));
    const json j = json::parse(slurp(d / "design.json"));
    CHECK(j["simulated"]["vartheta"].get<double>() == doctest::Approx(std::numbers::pi).epsilon(1e-6));
    CHECK(j["analytic"]["vartheta"].get<double>() == doctest::Approx(std::numbers::pi).epsilon(1e-9));
    CHECK(j["budget"]["available"] == false);

    spit(d / "b.json", R"({"trap": {"epsilon": 0.5, "a_over_d": 1e-3}, "pulse": {"omega_tau": 10, "target_phase": 1.0}})");
    const Run b = cli({"design", "--config", (d / "b.json").string(), "--out", d.string()});
    REQUIRE(b.code == kExitOk);
    CHECK(!has(b.out, "tau_L"));
    CHECK(json::parse(slurp(d / "design.json"))["simulated"]["vartheta"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-8));

    spit(d / "c.json", R"({"trap": {"epsilon": 0.5, "a_over_d": 1e-3}, "pulse": {"xi": 0.3, "target_phase": 0}})");
    CHECK(cli({"design", "--config", (d / "c.json").string(), "--out", d.string()}).code == kExitFailure);
    spit(d / "e.json", R"({"trap": {"epsilon": 0.5, "a_over_d": 1e-3}, "pulse": {"xi": 0.3, "omega_tau": 10, "target_phase": 1}})");
    CHECK(cli({"design", "--config", (d / "e.json").string(), "--out", d.string()}).code == kExitUsage);
    spit(d / "f.json", R"({"trap": {"epsilon": 0.5, "a_over_d": 1e-3}, "pulse": {"omega_tau": 4, "target_phase": 1}})");
    const Run f = cli({"design", "--config", (d / "f.json").string(), "--out", d.string()});
    CHECK(f.code == kExitOk);
    CHECK(has(f.err, "warning: omega tau"));
    CHECK(cli({"design", "--strict", "--config", (d / "f.json").string(), "--out", d.string()}).code ==
          kExitFailure);
    spit(d / "g.json", R"({"trap": {"epsilon": 0.5, "a_over_d": 1e-3}, "pulse": {"omega_tau": 2, "target_phase": 1}})");
    const Run g = cli({"design", "--config", (d / "g.json").string(), "--out", d.string()});
    CHECK(g.code == kExitFailure);
    CHECK(has(g.err, "no force reaches the target"));
}

TEST_CASE("simulate matches the library")
{
    const fs::path d = scratch("simulate");
    const Run r = cli({"simulate", "--preset", "two_ion_smalleps", "--out", d.string()});
    REQUIRE(r.code == kExitOk);
    const json rep = json::parse(slurp(d / "gate_report.json"));
    const RunConfig rc = preset_config("two_ion_smalleps");
    const SystemModel sys = make_system(calcium40(), rc.trap->resolve(calcium40()));
    const PhaseTable t = simulate_phase_table(sys, {make_pulse(*rc.pulse, sys)});
    CHECK(rep["vartheta_push"].get<double>() == overall_phase_2q(t));
    CHECK(rep["vartheta_push"].get<double>() / rep["general_law"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(fs::exists(d / "phase_tables.json"));
    CHECK(rep["config"]["preset"] == "two_ion_smalleps");
}

TEST_CASE("simulate toffoli")
{
    const fs::path d = scratch("toffoli");
    const Run r = cli({"simulate", "--preset", "toffoli", "--out", d.string()});
    CHECK(r.code == kExitOk);
    CHECK(has(r.out, "CCZ check: pass"));
    const json rep = json::parse(slurp(d / "gate_report.json"));
    CHECK(rep["ccz"]["passed"] == true);
    CHECK(rep["pairwise"].size() == 3);
}

TEST_CASE("simulate with a thermal ensemble")
{
    const fs::path d = scratch("ensemble");
    const Run r = cli({"simulate", "--preset", "linear_trap", "--samples", "20", "--seed", "7", "--out", d.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(has(r.out, "infidelity budget: P_spatial"));
    const std::string csv = slurp(d / "samples.csv");
    CHECK(csv.starts_with("# config: "));
    const json f = json::parse(slurp(d / "fidelity.json"));
    CHECK(f["config"]["ensemble"]["seed"] == 7);
    CHECK(f["config"]["ensemble"]["samples"] == 20);
    const std::string first = csv;
    REQUIRE(cli({"simulate", "--preset", "linear_trap", "--samples", "20", "--seed", "7", "--out", d.string()}).code ==
            kExitOk);
    CHECK(slurp(d / "samples.csv") == first);
}

TEST_CASE("sweep and the config echo")
{
    const fs::path d = scratch("sweep");
    const Run r = cli({"sweep", "--preset", "fig3", "--out", d.string()});
    REQUIRE(r.code == kExitOk);
    const fs::path f = d / "fig3_w4_P10_Tdopp.csv";
    REQUIRE(fs::exists(f));
    const std::string csv = slurp(f);
    int rows = 0;
    std::string echo;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (line.starts_with("# config: ")) echo = line.substr(10);
        else if (!line.starts_with("#") && !line.starts_with("omega,")) ++rows;
    }
    CHECK(rows == 61);
    REQUIRE(!echo.empty());
    spit(d / "echo.json", echo);
    fs::remove(f);
    REQUIRE(cli({"sweep", "--config", (d / "echo.json").string()}).code == kExitOk);
    CHECK(slurp(f) == csv);

    const fs::path e = scratch("sweep_range");
    CHECK(cli({"sweep", "--preset", "fig3", "--range", "1e6:1e7:0", "--out", e.string()}).code == kExitUsage);
    CHECK(cli({"sweep", "--preset", "fig3", "--range", "1e6:1e7", "--out", e.string()}).code == kExitUsage);
    REQUIRE(cli({"sweep", "--preset", "fig3", "--range", "6.283e6:6.283e6:1", "--out", e.string()}).code == kExitOk);
    const std::string one = slurp(e / "fig3_w2_P100_Tln2.csv");
    int data = 0;
    std::istringstream in2(one);
    for (std::string line; std::getline(in2, line);)
        if (!line.starts_with("#") && !line.starts_with("omega,")) ++data;
    CHECK(data == 1);
    CHECK(cli({"sweep", "--preset", "fig3", "--axis", "xi", "--out", e.string()}).code == kExitUsage);
    CHECK(cli({"sweep", "--preset", "two_ion_smalleps"}).code == kExitUsage);
}

TEST_CASE("figures-data")
{
    const fs::path d = scratch("figures");
    REQUIRE(cli({"figures-data", "--out", d.string()}).code == kExitOk);
    const json m = json::parse(slurp(d / "manifest.json"));
    REQUIRE(m["files"].size() == 8);
    for (const auto& f : m["files"]) CHECK(fs::exists(d / f["path"].get<std::string>()));
    CHECK(m["schema"] == "pushgate-sweep v1");
    CHECK(cli({"figures-data", "--preset", "toffoli"}).code == kExitUsage);
}
