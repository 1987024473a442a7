/*
   Copyright 2026 tracedyn developers

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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tracedyn.h"

namespace fs = std::filesystem;

namespace {

std::string scenario_path(const std::string& name) {
    return std::string(TD_SCENARIO_DIR) + "/" + name;
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("td_capi_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(TD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

struct Ctx {
    td_context* c = nullptr;
    Ctx() { REQUIRE(td_context_create(&c) == TD_OK); }
    ~Ctx() { td_context_destroy(c); }
};

}  // namespace

TEST_CASE("version string") {
    CHECK(std::string(td_version()) == "0.1.0");
}

TEST_CASE("context configuration errors are reported") {
    Ctx ctx;
    CHECK(td_context_set_threads(ctx.c, 0) == TD_ERR_CONFIG);
    CHECK(std::string(td_context_last_error(ctx.c)).find("threads") !=
          std::string::npos);
    CHECK(td_context_set_threads(ctx.c, 2) == TD_OK);
    CHECK(std::string(td_context_last_error(ctx.c)).empty());
}

TEST_CASE("scenario loading: io and config failures") {
    Ctx ctx;
    td_scenario* sc = nullptr;
    CHECK(td_scenario_load_file(ctx.c, "/nope/missing.json", &sc) == TD_ERR_IO);
    CHECK(sc == nullptr);
    CHECK(td_scenario_load_string(ctx.c, "{not json", &sc) == TD_ERR_IO);
    CHECK(td_scenario_load_string(ctx.c, "{\"no_kind\": 1}", &sc) ==
          TD_ERR_CONFIG);

    CHECK(td_scenario_load_file(ctx.c, scenario_path("harmonic_evolve.json").c_str(),
                                &sc) == TD_OK);
    REQUIRE(sc != nullptr);
    CHECK(std::string(td_scenario_kind(sc)) == "evolve");
    td_scenario_destroy(sc);
}

TEST_CASE("run a scenario through the shared library") {
    Ctx ctx;
    fs::path dir = fresh_dir("run");
    REQUIRE(td_context_set_out_dir(ctx.c, dir.string().c_str()) == TD_OK);

    td_scenario* sc = nullptr;
    REQUIRE(td_scenario_load_file(
                ctx.c, scenario_path("harmonic_evolve.json").c_str(), &sc) ==
            TD_OK);
    td_report* rep = nullptr;
    CHECK(td_run_scenario(ctx.c, sc, &rep) == TD_OK);
    REQUIRE(rep != nullptr);
    CHECK(td_report_passed(rep) == 1);
    CHECK(std::string(td_report_json(rep)).find("max_rel_traceH_drift") !=
          std::string::npos);
    td_report_destroy(rep);
    td_scenario_destroy(sc);
    CHECK(fs::exists(dir / "harmonic_trajectory.csv"));
}

TEST_CASE("config failures map to TD_ERR_CONFIG with diagnostics") {
    Ctx ctx;
    td_scenario* sc = nullptr;
    REQUIRE(td_scenario_load_string(
                ctx.c,
                "{\"kind\":\"evolve\",\"seed\":1,\"model\":{\"dim\":2}}",
                &sc) == TD_OK);
    td_report* rep = nullptr;
    CHECK(td_run_scenario(ctx.c, sc, &rep) == TD_ERR_CONFIG);
    CHECK(rep == nullptr);
    CHECK(std::string(td_context_last_error(ctx.c)).find("symbols") !=
          std::string::npos);
    td_scenario_destroy(sc);
}

TEST_CASE("check suites through the C API") {
    Ctx ctx;
    td_report* rep = nullptr;
    CHECK(td_run_check(ctx.c, "algebra", &rep) == TD_OK);
    REQUIRE(rep != nullptr);
    CHECK(td_report_passed(rep) == 1);
    CHECK(std::string(td_report_text(rep)).find("[PASS]") != std::string::npos);
    td_report_destroy(rep);

    CHECK(td_run_check(ctx.c, "no_such_suite", &rep) == TD_ERR_CONFIG);
}

TEST_CASE("CLI: exit codes for run/check/config errors") {
    fs::path dir = fresh_dir("cli");
    CHECK(run_cli("version") == 0);
    CHECK(run_cli("--out-dir " + dir.string() + " run " +
                  scenario_path("harmonic_evolve.json")) == 0);
    CHECK(fs::exists(dir / "harmonic_trajectory.csv"));

    // malformed scenario (missing model content) -> config error exit 2
    fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{\"kind\":\"evolve\",\"seed\":1}";
    CHECK(run_cli("run " + bad.string()) == 2);
    // unreadable file -> 2
    CHECK(run_cli("run /missing/file.json") == 2);
    // numerical refusal -> 3
    fs::path refuse = dir / "refuse.json";
    std::ofstream(refuse)
        << R"({"kind":"gravastar","seed":1,
             "eos":{"p_jump":1.0,"epsilon":0.01,"p_surface":1e-8},
             "p_center":1000.0})";
    CHECK(run_cli("run " + refuse.string()) == 3);
    // check suite passes -> 0
    CHECK(run_cli("check algebra") == 0);
    // unknown suite -> 2
    CHECK(run_cli("check nope") == 2);
}

TEST_CASE("CLI determinism: identical bytes for identical seed") {
    fs::path d1 = fresh_dir("det1");
    fs::path d2 = fresh_dir("det2");
    REQUIRE(run_cli("--out-dir " + d1.string() + " run " +
                    scenario_path("ieff_extract.json")) == 0);
    REQUIRE(run_cli("--out-dir " + d2.string() + " --threads 2 run " +
                    scenario_path("ieff_extract.json")) == 0);
    CHECK(slurp(d1 / "ieff_results.json") == slurp(d2 / "ieff_results.json"));

    // --seed-override changes the outputs
    fs::path d3 = fresh_dir("det3");
    REQUIRE(run_cli("--out-dir " + d3.string() + " --seed-override 77 run " +
                    scenario_path("ieff_extract.json")) == 0);
    CHECK(slurp(d1 / "ieff_results.json") != slurp(d3 / "ieff_results.json"));
}
