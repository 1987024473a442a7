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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "scenario.hpp"

using namespace td;
namespace fs = std::filesystem;

namespace {

std::string scenario_path(const std::string& name) {
    return std::string(TD_SCENARIO_DIR) + "/" + name;
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("td_test_" + tag);
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

nlohmann::json load_json(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f);
    nlohmann::json j;
    f >> j;
    return j;
}

}  // namespace

TEST_CASE("bundled harmonic scenario: monotone time column, tiny drift") {
    fs::path dir = fresh_dir("harmonic");
    RunContext ctx;
    ctx.out_dir = dir.string();
    RunOutcome out = run_scenario_file(scenario_path("harmonic_evolve.json"), ctx);
    CHECK(out.passed);
    CHECK(out.summary["max_rel_traceH_drift"].get<double>() <= 1e-8);

    std::string csv = slurp(dir / "harmonic_trajectory.csv");
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("t,TrH_re,TrH_im,ReTrC2,C_drift", 0) == 0);
    double prev = -1.0;
    int rows = 0;
    while (std::getline(is, line)) {
        double t = std::stod(line.substr(0, line.find(',')));
        CHECK(t > prev);
        prev = t;
        ++rows;
    }
    CHECK(rows > 100);
}

TEST_CASE("malformed scenarios: config errors, no partial outputs") {
    fs::path dir = fresh_dir("badcfg");
    RunContext ctx;
    ctx.out_dir = dir.string();

    nlohmann::json sc = load_json(scenario_path("harmonic_evolve.json"));
    sc["model"].erase("dim");
    CHECK_THROWS_AS(run_scenario_json(sc, ctx), Error);
    try {
        run_scenario_json(sc, ctx);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        CHECK(std::string(e.what()).find("dim") != std::string::npos);
    }
    CHECK_FALSE(fs::exists(dir / "harmonic_trajectory.csv"));

    // unknown keys are rejected at any level
    sc = load_json(scenario_path("harmonic_evolve.json"));
    sc["surprise"] = 1;
    CHECK_THROWS_AS(run_scenario_json(sc, ctx), Error);
    sc = load_json(scenario_path("harmonic_evolve.json"));
    sc["dynamics"]["Dt"] = 0.1;
    CHECK_THROWS_AS(run_scenario_json(sc, ctx), Error);

    // seeds are mandatory
    sc = load_json(scenario_path("harmonic_evolve.json"));
    sc.erase("seed");
    CHECK_THROWS_AS(run_scenario_json(sc, ctx), Error);

    // unknown kind
    sc = {{"kind", "meditate"}, {"seed", 1}};
    CHECK_THROWS_AS(run_scenario_json(sc, ctx), Error);

    // unreadable file is an io error
    try {
        run_scenario_file("/nonexistent/sc.json", ctx);
        FAIL("expected an io error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("determinism: identical scenario + seed gives bit-identical files") {
    fs::path d1 = fresh_dir("det1");
    fs::path d2 = fresh_dir("det2");
    RunContext c1, c2;
    c1.out_dir = d1.string();
    c2.out_dir = d2.string();
    c1.threads = 1;
    c2.threads = 2;  // thread count must not affect results

    run_scenario_file(scenario_path("ieff_extract.json"), c1);
    run_scenario_file(scenario_path("ieff_extract.json"), c2);
    CHECK(slurp(d1 / "ieff_results.json") == slurp(d2 / "ieff_results.json"));
    CHECK(slurp(d1 / "ieff_trh_trace.csv") == slurp(d2 / "ieff_trh_trace.csv"));
}

TEST_CASE("seed override changes stochastic outputs") {
    fs::path d1 = fresh_dir("seed1");
    fs::path d2 = fresh_dir("seed2");
    RunContext c1, c2;
    c1.out_dir = d1.string();
    c2.out_dir = d2.string();
    c2.seed_override = 999;
    run_scenario_file(scenario_path("harmonic_evolve.json"), c1);
    run_scenario_file(scenario_path("harmonic_evolve.json"), c2);
    CHECK(slurp(d1 / "harmonic_trajectory.csv") !=
          slurp(d2 / "harmonic_trajectory.csv"));
}

TEST_CASE("ieff scenario produces the expected decomposition structure") {
    fs::path dir = fresh_dir("ieff");
    RunContext ctx;
    ctx.out_dir = dir.string();
    ctx.threads = 2;
    RunOutcome out = run_scenario_file(scenario_path("ieff_extract.json"), ctx);
    const auto& ieff = out.summary.at("ieff");
    CHECK(ieff.at("defect").get<int>() == 0);
    CHECK(ieff.at("plus_multiplicity").get<int>() == 1);
    CHECK(ieff.at("minus_multiplicity").get<int>() == 1);
    CHECK(ieff.at("ieff_sq_dev").get<double>() < 1e-6);
    CHECK(ieff.at("trace_abs").get<double>() < 1e-6);
    CHECK(out.summary.at("acceptance_rate").get<double>() > 0.1);
    CHECK(out.summary.at("acceptance_rate").get<double>() < 0.9);
}

TEST_CASE("gravastar scenario with weyl block and profile output") {
    fs::path dir = fresh_dir("grava");
    RunContext ctx;
    ctx.out_dir = dir.string();
    RunOutcome out =
        run_scenario_file(scenario_path("gravastar_reference.json"), ctx);
    CHECK(out.summary.at("horizonless").get<bool>());
    CHECK(out.summary.at("min_compactness").get<double>() > 0.0);
    CHECK(out.summary.at("exterior_max_rel_dev").get<double>() <= 1e-6);
    CHECK(out.summary.at("weyl").at("invariant_max_dev").get<double>() <= 1e-12);
    CHECK(out.summary.at("weyl").at("control_max_dev").get<double>() > 1e-3);

    std::string csv = slurp(dir / "gravastar_profile.csv");
    CHECK(csv.rfind("r,m,nu,p,rho,compactness", 0) == 0);
}

TEST_CASE("gravastar sweep isolates failing rows") {
    fs::path dir = fresh_dir("sweep");
    RunContext ctx;
    ctx.out_dir = dir.string();
    ctx.threads = 2;
    RunOutcome out =
        run_scenario_file(scenario_path("gravastar_sweep.json"), ctx);
    CHECK(out.summary.at("sweep").at("rows").get<int>() == 6);
    CHECK(out.summary.at("sweep").at("failures").get<int>() == 1);

    std::string csv = slurp(dir / "gravastar_sweep.csv");
    CHECK(csv.find("error") != std::string::npos);
    CHECK(csv.find("ok") != std::string::npos);
}

TEST_CASE("every bundled scenario runs end-to-end") {
    const char* names[] = {"harmonic_evolve.json", "coupled_quartic_evolve.json",
                           "ieff_extract.json", "ensemble_n3.json",
                           "gravastar_reference.json", "gravastar_sweep.json"};
    for (const char* name : names) {
        CAPTURE(name);
        fs::path dir = fresh_dir(std::string("smoke_") + name);
        RunContext ctx;
        ctx.out_dir = dir.string();
        ctx.threads = 2;
        RunOutcome out = run_scenario_file(scenario_path(name), ctx);
        CHECK(out.passed);
        CHECK(!out.files_written.empty());
    }
}

TEST_CASE("check scenario kind runs a suite") {
    fs::path dir = fresh_dir("checksc");
    RunContext ctx;
    ctx.out_dir = dir.string();
    nlohmann::json sc = {{"kind", "check"},
                         {"seed", 1},
                         {"suite", "algebra"},
                         {"outputs", {{"report_json", "algebra.json"}}}};
    RunOutcome out = run_scenario_json(sc, ctx);
    CHECK(out.passed);
    nlohmann::json rep = load_json((dir / "algebra.json").string());
    CHECK(rep.at("pass").get<bool>());

    nlohmann::json bad = {{"kind", "check"}, {"seed", 1}, {"suite", "nope"}};
    CHECK_THROWS_AS(run_scenario_json(bad, ctx), Error);
}

TEST_CASE("explicit initial state and snapshots") {
    fs::path dir = fresh_dir("explicit");
    RunContext ctx;
    ctx.out_dir = dir.string();
    nlohmann::json sc = {
        {"kind", "evolve"},
        {"seed", 3},
        {"model",
         {{"dim", 2},
          {"symbols",
           {{{"name", "q1"}, {"kind", "q"}, {"dof", 1}},
            {{"name", "p1"}, {"kind", "p"}, {"dof", 1}}}},
          {"hamiltonian", "0.5*Tr(p1*p1) + 0.5*Tr(q1*q1)"}}},
        {"initial",
         {{"type", "explicit"},
          {"q", {{{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}}}}},
          {"p", {{{{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}}}}}}},
        {"dynamics",
         {{"T", 1.0}, {"dt", 0.01}, {"integrator", "leapfrog"}, {"stride", 10},
          {"snapshots", true}}},
        {"outputs",
         {{"trajectory_csv", "t.csv"}, {"snapshots_json", "snaps.json"}}}};
    RunOutcome out = run_scenario_json(sc, ctx);
    CHECK(out.passed);
    nlohmann::json snaps = load_json((dir / "snaps.json").string());
    CHECK(snaps.is_array());
    CHECK(snaps.size() > 5);
    CHECK(snaps[0].contains("q"));
}

TEST_CASE("lagrangian-form model in a scenario") {
    fs::path dir = fresh_dir("lagr");
    RunContext ctx;
    ctx.out_dir = dir.string();
    nlohmann::json sc = {
        {"kind", "evolve"},
        {"seed", 4},
        {"model",
         {{"dim", 3},
          {"symbols",
           {{{"name", "q1"}, {"kind", "q"}, {"dof", 1}},
            {{"name", "q1dot"}, {"kind", "qdot"}, {"dof", 1}}}},
          {"lagrangian", "0.5*Tr(q1dot*q1dot) - 0.5*Tr(q1*q1)"}}},
        {"initial", {{"type", "random_hermitian"}, {"normalize", true}}},
        {"dynamics", {{"T", 2.0}, {"dt", 0.001}, {"stride", 10}}},
        {"outputs", {{"report_json", "rep.json"}}}};
    RunOutcome out = run_scenario_json(sc, ctx);
    CHECK(out.summary.at("max_rel_traceH_drift").get<double>() <= 1e-8);
    CHECK(out.summary.at("unitary_invariant_hamiltonian").get<bool>());
}
