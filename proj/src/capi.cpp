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
#include "tracedyn.h"

#include <fstream>
#include <string>

#include "checks.hpp"
#include "errors.hpp"
#include "scenario.hpp"

namespace {

td_status status_of(td::ErrorKind k) {
    switch (k) {
        case td::ErrorKind::Config: return TD_ERR_CONFIG;
        case td::ErrorKind::Io: return TD_ERR_IO;
        case td::ErrorKind::Numerical: return TD_ERR_NUMERICAL;
        case td::ErrorKind::Invariant: return TD_ERR_INVARIANT;
        case td::ErrorKind::Internal: return TD_ERR_INTERNAL;
    }
    return TD_ERR_INTERNAL;
}

}  // namespace

struct td_context {
    td::RunContext run;
    std::string last_error;
};

struct td_scenario {
    nlohmann::json doc;
    std::string kind;
};

struct td_report {
    bool passed = true;
    std::string json_text;
    std::string text;
};

namespace {

template <typename Fn>
td_status guarded(td_context* ctx, Fn&& fn) {
    if (!ctx) return TD_ERR_CONFIG;
    ctx->last_error.clear();
    try {
        return fn();
    } catch (const td::Error& e) {
        ctx->last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return TD_ERR_INTERNAL;
    } catch (...) {
        ctx->last_error = "unknown error";
        return TD_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* td_version(void) { return "0.1.0"; }

td_status td_context_create(td_context** out) {
    if (!out) return TD_ERR_CONFIG;
    *out = new (std::nothrow) td_context();
    return *out ? TD_OK : TD_ERR_INTERNAL;
}

void td_context_destroy(td_context* ctx) { delete ctx; }

const char* td_context_last_error(const td_context* ctx) {
    return ctx ? ctx->last_error.c_str() : "";
}

td_status td_context_set_out_dir(td_context* ctx, const char* path) {
    return guarded(ctx, [&]() {
        if (!path) td::throw_config("out_dir must not be NULL");
        ctx->run.out_dir = path;
        return TD_OK;
    });
}

td_status td_context_set_threads(td_context* ctx, int threads) {
    return guarded(ctx, [&]() {
        if (threads < 1) td::throw_config("threads must be >= 1");
        ctx->run.threads = threads;
        return TD_OK;
    });
}

td_status td_context_set_seed_override(td_context* ctx, uint64_t seed) {
    return guarded(ctx, [&]() {
        ctx->run.seed_override = seed;
        return TD_OK;
    });
}

td_status td_context_clear_seed_override(td_context* ctx) {
    return guarded(ctx, [&]() {
        ctx->run.seed_override.reset();
        return TD_OK;
    });
}

td_status td_scenario_load_file(td_context* ctx, const char* path,
                                td_scenario** out) {
    return guarded(ctx, [&]() {
        if (!path || !out) td::throw_config("NULL argument");
        *out = nullptr;
        std::ifstream f(path);
        if (!f) td::throw_io("cannot read scenario file '" +
                             std::string(path) + "'");
        nlohmann::json doc;
        try {
            f >> doc;
        } catch (const nlohmann::json::exception& e) {
            td::throw_io("malformed JSON in '" + std::string(path) +
                         "': " + e.what());
        }
        if (!doc.is_object() || !doc.contains("kind") ||
            !doc["kind"].is_string())
            td::throw_config("scenario needs a string 'kind'");
        auto* sc = new td_scenario();
        sc->doc = std::move(doc);
        sc->kind = sc->doc["kind"].get<std::string>();
        *out = sc;
        return TD_OK;
    });
}

td_status td_scenario_load_string(td_context* ctx, const char* json_text,
                                  td_scenario** out) {
    return guarded(ctx, [&]() {
        if (!json_text || !out) td::throw_config("NULL argument");
        *out = nullptr;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::exception& e) {
            td::throw_io(std::string("malformed scenario JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("kind") ||
            !doc["kind"].is_string())
            td::throw_config("scenario needs a string 'kind'");
        auto* sc = new td_scenario();
        sc->doc = std::move(doc);
        sc->kind = sc->doc["kind"].get<std::string>();
        *out = sc;
        return TD_OK;
    });
}

const char* td_scenario_kind(const td_scenario* sc) {
    return sc ? sc->kind.c_str() : "";
}

void td_scenario_destroy(td_scenario* sc) { delete sc; }

td_status td_run_scenario(td_context* ctx, const td_scenario* sc,
                          td_report** out) {
    return guarded(ctx, [&]() {
        if (!sc || !out) td::throw_config("NULL argument");
        *out = nullptr;
        td::RunOutcome outcome = td::run_scenario_json(sc->doc, ctx->run);
        auto* rep = new td_report();
        rep->passed = outcome.passed;
        rep->json_text = outcome.summary.dump(2);
        rep->text = outcome.to_text();
        *out = rep;
        return TD_OK;
    });
}

td_status td_run_check(td_context* ctx, const char* suite, td_report** out) {
    return guarded(ctx, [&]() {
        if (!suite || !out) td::throw_config("NULL argument");
        *out = nullptr;
        td::SuiteReport rep = td::run_suite(suite, ctx->run.threads);
        auto* r = new td_report();
        r->passed = rep.all_pass();
        r->json_text = rep.to_json().dump(2);
        r->text = rep.to_text();
        *out = r;
        return TD_OK;
    });
}

int td_report_passed(const td_report* rep) { return rep && rep->passed ? 1 : 0; }

const char* td_report_json(const td_report* rep) {
    return rep ? rep->json_text.c_str() : "";
}

const char* td_report_text(const td_report* rep) {
    return rep ? rep->text.c_str() : "";
}

void td_report_destroy(td_report* rep) { delete rep; }

}  // extern "C"
