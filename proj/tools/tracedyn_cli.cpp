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

// Command-line front end. Talks to the core exclusively through the C API
// in tracedyn.h.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "tracedyn.h"

namespace {

// exit codes: 0 ok, 2 config/io, 3 numerical, 4 invariant violation, 1 other
int exit_code(td_status s) {
    switch (s) {
        case TD_OK: return 0;
        case TD_ERR_CONFIG:
        case TD_ERR_IO: return 2;
        case TD_ERR_NUMERICAL: return 3;
        case TD_ERR_INVARIANT: return 4;
        default: return 1;
    }
}

struct ContextHandle {
    td_context* ctx = nullptr;
    ContextHandle() { td_context_create(&ctx); }
    ~ContextHandle() { td_context_destroy(ctx); }
};

int fail(td_context* ctx, td_status s) {
    std::fprintf(stderr, "error: %s\n", td_context_last_error(ctx));
    return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tracedyn: trace-dynamics workbench (operator Hamiltonian "
                 "flows, canonical-ensemble sampling, gravastar TOV solver)"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    int threads = 1;
    std::uint64_t seed_override = 0;
    bool have_seed_override = false;
    app.add_option("--out-dir", out_dir, "directory for declared outputs");
    app.add_option("--threads", threads, "worker threads for chains/sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed-override", seed_override,
                   "replace the scenario seed")
        ->each([&](const std::string&) { have_seed_override = true; });

    std::string scenario_path;
    auto* run = app.add_subcommand("run", "execute a scenario JSON file");
    run->add_option("scenario", scenario_path, "scenario file")->required();

    std::string suite;
    auto* check = app.add_subcommand(
        "check",
        "run an invariant suite (algebra, derivative, conservation, "
        "liouville, ensemble, gravastar)");
    check->add_option("suite", suite, "suite name")->required();

    auto* version = app.add_subcommand("version", "print the library version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    ContextHandle handle;
    td_context* ctx = handle.ctx;
    if (!ctx) {
        std::fprintf(stderr, "error: cannot create context\n");
        return 1;
    }
    td_status s = td_context_set_out_dir(ctx, out_dir.c_str());
    if (s != TD_OK) return fail(ctx, s);
    s = td_context_set_threads(ctx, threads);
    if (s != TD_OK) return fail(ctx, s);
    if (have_seed_override) {
        s = td_context_set_seed_override(ctx, seed_override);
        if (s != TD_OK) return fail(ctx, s);
    }

    if (version->parsed()) {
        std::printf("tracedyn %s\n", td_version());
        return 0;
    }

    if (run->parsed()) {
        td_scenario* sc = nullptr;
        s = td_scenario_load_file(ctx, scenario_path.c_str(), &sc);
        if (s != TD_OK) return fail(ctx, s);
        td_report* rep = nullptr;
        s = td_run_scenario(ctx, sc, &rep);
        td_scenario_destroy(sc);
        if (s != TD_OK) return fail(ctx, s);
        std::printf("%s", td_report_text(rep));
        int rc = td_report_passed(rep) ? 0 : 4;
        td_report_destroy(rep);
        return rc;
    }

    if (check->parsed()) {
        td_report* rep = nullptr;
        s = td_run_check(ctx, suite.c_str(), &rep);
        if (s != TD_OK) return fail(ctx, s);
        std::printf("%s", td_report_text(rep));
        int rc = td_report_passed(rep) ? 0 : 4;
        td_report_destroy(rep);
        return rc;
    }

    return 2;
}
