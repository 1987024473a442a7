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
#include "scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "checks.hpp"
#include "ensemble.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "jsonio.hpp"
#include "tov.hpp"

namespace td {

namespace {

using nlohmann::json;

// buffered output files: nothing touches the filesystem until the whole
// run has succeeded
struct OutputBuffer {
    std::vector<std::pair<std::string, std::string>> files;

    void add(const std::string& rel, std::string content) {
        files.emplace_back(rel, std::move(content));
    }

    void flush(const std::string& out_dir, RunOutcome& outcome) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        for (auto& [rel, content] : files) {
            fs::path p = fs::path(out_dir) / rel;
            if (p.has_parent_path()) fs::create_directories(p.parent_path());
            std::ofstream f(p, std::ios::binary);
            if (!f) throw_io("cannot write '" + p.string() + "'");
            f << content;
            outcome.files_written.push_back(p.string());
        }
    }
};

double require_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw_config("missing key '" + std::string(key) + "' in " + where);
    if (!j[key].is_number())
        throw_config("'" + std::string(key) + "' must be a number in " + where);
    return j[key].get<double>();
}

std::string require_string(const json& j, const char* key,
                           const std::string& where) {
    if (!j.contains(key))
        throw_config("missing key '" + std::string(key) + "' in " + where);
    if (!j[key].is_string())
        throw_config("'" + std::string(key) + "' must be a string in " + where);
    return j[key].get<std::string>();
}

std::uint64_t require_seed(const json& j) {
    if (!j.contains("seed"))
        throw_config("scenarios must declare an explicit 'seed' "
                     "(no wall-clock entropy)");
    const json& s = j["seed"];
    if (s.is_number_unsigned()) return s.get<std::uint64_t>();
    if (s.is_number_integer() && s.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(s.get<std::int64_t>());
    throw_config("'seed' must be a nonnegative integer");
}

const json& require_object(const json& j, const char* key,
                           const std::string& where) {
    if (!j.contains(key))
        throw_config("missing key '" + std::string(key) + "' in " + where);
    if (!j[key].is_object())
        throw_config("'" + std::string(key) + "' must be an object in " + where);
    return j[key];
}

// ---------------------------------------------------------------------------
// model block

SymbolKind kind_from_string(const std::string& s) {
    if (s == "q") return SymbolKind::Coordinate;
    if (s == "p") return SymbolKind::Momentum;
    if (s == "qdot") return SymbolKind::Velocity;
    if (s == "constant") return SymbolKind::Constant;
    throw_config("symbol kind must be one of q, p, qdot, constant (got '" +
                 s + "')");
}

Grading grading_from_string(const std::string& s) {
    if (s == "even") return Grading::Even;
    if (s == "odd") return Grading::Odd;
    throw_config("grading must be 'even' or 'odd' (got '" + s + "')");
}

ModelSpec model_from_json(const json& jm, std::uint64_t seed) {
    check_keys(jm, {"dim", "symbols", "hamiltonian", "lagrangian", "constants"},
               "model");
    if (!jm.contains("dim"))
        throw_config("missing key 'dim' in model (matrix size N)");
    if (!jm["dim"].is_number_integer() || jm["dim"].get<int>() < 1)
        throw_config("'dim' must be a positive integer");
    int dim = jm["dim"].get<int>();

    if (!jm.contains("symbols") || !jm["symbols"].is_array() ||
        jm["symbols"].empty())
        throw_config("model needs a nonempty 'symbols' array");
    auto table = std::make_shared<SymbolTable>();
    for (const auto& js : jm["symbols"]) {
        check_keys(js, {"name", "kind", "dof", "grading"}, "symbols[]");
        std::string name = require_string(js, "name", "symbols[]");
        SymbolKind kind = kind_from_string(require_string(js, "kind", "symbols[]"));
        int dof = 0;
        if (kind != SymbolKind::Constant) {
            if (!js.contains("dof") || !js["dof"].is_number_integer())
                throw_config("symbol '" + name + "' needs an integer 'dof'");
            dof = js["dof"].get<int>();
        }
        Grading grading = Grading::Even;
        if (js.contains("grading"))
            grading = grading_from_string(js["grading"].get<std::string>());
        table->declare(name, kind, dof, grading);
    }
    SymbolTablePtr tp = table;

    Binding constants(tp);
    if (jm.contains("constants")) {
        if (!jm["constants"].is_object())
            throw_config("'constants' must be an object");
        for (const auto& [name, spec] : jm["constants"].items()) {
            check_keys(spec, {"matrix", "random_hermitian"},
                       "constants." + name);
            int id = tp->id_of(name);
            if (id < 0 || tp->info(id).kind != SymbolKind::Constant)
                throw_config("'" + name + "' is not a declared constant symbol");
            if (spec.contains("matrix")) {
                ComplexMatrix m = matrix_from_json(spec["matrix"]);
                if (m.rows() != dim)
                    throw_config("constant '" + name + "' has wrong dimension");
                constants.set(id, OperatorMatrix::from_complex(std::move(m)));
            } else if (spec.contains("random_hermitian")) {
                check_keys(spec["random_hermitian"], {"scale"},
                           "constants." + name + ".random_hermitian");
                double scale = spec["random_hermitian"].value("scale", 1.0);
                constants.set(
                    id, OperatorMatrix::random_hermitian(
                            dim, Rng::stream(seed, 0xC0457 + static_cast<std::uint64_t>(id))
                                     .next_u64(),
                            scale));
            } else {
                throw_config("constant '" + name +
                             "' needs 'matrix' or 'random_hermitian'");
            }
        }
    }

    bool has_h = jm.contains("hamiltonian");
    bool has_l = jm.contains("lagrangian");
    if (has_h == has_l)
        throw_config("model needs exactly one of 'hamiltonian' or 'lagrangian'");
    if (has_h) {
        TracePolynomial h =
            parse_trace_polynomial(jm["hamiltonian"].get<std::string>(), tp);
        return build_hamiltonian_model(tp, h, dim, constants);
    }
    TracePolynomial l =
        parse_trace_polynomial(jm["lagrangian"].get<std::string>(), tp);
    return legendre_transform(tp, l, dim, constants);
}

PhaseSpaceState initial_from_json(const json& js, const ModelSpec& model,
                                  std::uint64_t seed) {
    check_keys(js, {"type", "scale", "normalize", "q", "p"}, "initial");
    std::string type = require_string(js, "type", "initial");
    if (type == "random_hermitian") {
        double scale = js.value("scale", 1.0);
        bool normalize = js.value("normalize", false);
        return fixtures::random_state(model, Rng::stream(seed, 1).next_u64(),
                                      scale, normalize);
    }
    if (type == "explicit") {
        if (!js.contains("q") || !js.contains("p"))
            throw_config("explicit initial state needs 'q' and 'p' arrays");
        PhaseSpaceState s;
        for (const auto& m : js["q"])
            s.q.push_back(OperatorMatrix::from_complex(matrix_from_json(m)));
        for (const auto& m : js["p"])
            s.p.push_back(OperatorMatrix::from_complex(matrix_from_json(m)));
        if (static_cast<int>(s.q.size()) != model.dof_count() ||
            static_cast<int>(s.p.size()) != model.dof_count())
            throw_config("explicit initial state has wrong dof count");
        return s;
    }
    throw_config("initial.type must be 'random_hermitian' or 'explicit'");
}

// ---------------------------------------------------------------------------
// evolve

RunOutcome run_evolve(const json& sc, const RunContext& ctx,
                      std::uint64_t seed) {
    check_keys(sc, {"kind", "seed", "model", "initial", "dynamics", "outputs"},
               "scenario");
    ModelSpec model = model_from_json(require_object(sc, "model", "scenario"), seed);
    if (!sc.contains("initial")) throw_config("evolve scenario needs 'initial'");
    PhaseSpaceState s0 = initial_from_json(sc["initial"], model, seed);

    if (!sc.contains("dynamics")) throw_config("evolve scenario needs 'dynamics'");
    const json& jd = sc["dynamics"];
    check_keys(jd, {"T", "dt", "integrator", "stride", "snapshots"}, "dynamics");
    EvolveOptions opts;
    opts.T = require_number(jd, "T", "dynamics");
    opts.dt = require_number(jd, "dt", "dynamics");
    std::string integ = jd.value("integrator", std::string("rk4"));
    if (integ == "rk4")
        opts.integrator = Integrator::Rk4;
    else if (integ == "leapfrog")
        opts.integrator = Integrator::Leapfrog;
    else
        throw_config("integrator must be 'rk4' or 'leapfrog'");
    opts.stride = jd.value("stride", 1);
    bool snapshots = jd.value("snapshots", false);
    opts.keep_states = snapshots;

    EvolveResult res = evolve(s0, model, opts);

    OutputBuffer out;
    const json& jo = sc.value("outputs", json::object());
    check_keys(jo, {"trajectory_csv", "report_json", "snapshots_json"},
               "outputs");

    if (jo.contains("trajectory_csv")) {
        std::ostringstream csv;
        csv << "t,TrH_re,TrH_im,ReTrC2,C_drift";
        for (int r = 0; r < model.dof_count(); ++r) csv << ",dof" << r << "_drift";
        csv << "\n";
        for (const auto& s : res.samples) {
            csv << fmt_double(s.t) << "," << fmt_double(s.traceH.real()) << ","
                << fmt_double(s.traceH.imag()) << "," << fmt_double(s.re_trC2)
                << "," << fmt_double(s.c_drift);
            for (double d : s.dof_drift) csv << "," << fmt_double(d);
            csv << "\n";
        }
        out.add(jo["trajectory_csv"].get<std::string>(), csv.str());
    }

    json report = {
        {"kind", "evolve"},
        {"seed", seed},
        {"steps", res.report.steps},
        {"max_rel_traceH_drift", res.report.max_rel_traceH_drift},
        {"max_tildeC_drift", res.report.max_tildeC_drift},
        {"max_dof_drift", res.report.max_dof_drift},
        {"max_hermiticity_dev", res.report.max_hermiticity_dev},
        {"unitary_invariant_hamiltonian", model.unitary_invariant},
        {"separable", model.separable},
    };
    if (jo.contains("report_json"))
        out.add(jo["report_json"].get<std::string>(), report.dump(2) + "\n");

    if (snapshots && jo.contains("snapshots_json")) {
        json snaps = json::array();
        for (const auto& st : res.states) {
            json snap = {{"t", st.t}};
            json qs = json::array(), ps = json::array();
            for (const auto& m : st.q)
                qs.push_back(matrix_to_json(m.complex_data()));
            for (const auto& m : st.p)
                ps.push_back(matrix_to_json(m.complex_data()));
            snap["q"] = qs;
            snap["p"] = ps;
            snaps.push_back(std::move(snap));
        }
        out.add(jo["snapshots_json"].get<std::string>(), snaps.dump(2) + "\n");
    }

    RunOutcome outcome;
    outcome.summary = report;
    out.flush(ctx.out_dir, outcome);
    return outcome;
}

// ---------------------------------------------------------------------------
// ensemble

RunOutcome run_ensemble(const json& sc, const RunContext& ctx,
                        std::uint64_t seed) {
    check_keys(sc, {"kind", "seed", "model", "ensemble", "extract_ieff",
                    "outputs"},
               "scenario");
    ModelSpec model = model_from_json(require_object(sc, "model", "scenario"), seed);
    if (!sc.contains("ensemble")) throw_config("ensemble scenario needs 'ensemble'");
    const json& je = sc["ensemble"];
    check_keys(je, {"tau", "lambda", "lambda_matrix", "chains",
                    "steps_per_chain", "burn_in", "proposal_scale"},
               "ensemble");

    EnsembleParams params;
    params.tau = require_number(je, "tau", "ensemble");
    if (je.contains("lambda") == je.contains("lambda_matrix"))
        throw_config("ensemble needs exactly one of 'lambda' (scalar, default "
                     "balanced diagonal) or 'lambda_matrix'");
    if (je.contains("lambda"))
        params.lambda_tilde =
            default_lambda_tilde(model.dim, je["lambda"].get<double>());
    else
        params.lambda_tilde = matrix_from_json(je["lambda_matrix"]);
    params.chains = je.value("chains", 4);
    params.steps_per_chain = je.value("steps_per_chain", 20000L);
    params.burn_in = je.value("burn_in", params.steps_per_chain / 5);
    params.proposal_scale = je.value("proposal_scale", 0.25);
    params.seed = seed;
    params.threads = ctx.threads;
    params.keep_trh_trace = true;

    EnsembleResult res = metropolis_chain(model, params);

    json summary = {
        {"kind", "ensemble"},
        {"seed", seed},
        {"tau", params.tau},
        {"chains", params.chains},
        {"total_samples", res.total_samples},
        {"mean_TrH", res.mean_trH},
        {"stderr_TrH", res.stderr_trH},
        {"acceptance_rate", res.acceptance_rate},
        {"ess_TrH", res.ess_trH},
        {"avgC", matrix_to_json(res.avgC)},
        {"warnings", res.warnings},
    };
    {
        json sre = json::array(), sim = json::array();
        for (int i = 0; i < model.dim; ++i) {
            json r1 = json::array(), r2 = json::array();
            for (int j = 0; j < model.dim; ++j) {
                r1.push_back(res.stderr_re(i, j));
                r2.push_back(res.stderr_im(i, j));
            }
            sre.push_back(r1);
            sim.push_back(r2);
        }
        summary["stderr_re"] = sre;
        summary["stderr_im"] = sim;
    }

    if (sc.value("extract_ieff", false)) {
        double asym_tol = 0.0;
        for (int i = 0; i < model.dim; ++i)
            for (int j = 0; j < model.dim; ++j)
                asym_tol = std::max(asym_tol, 5.0 * (res.stderr_abs(i, j) +
                                                     res.stderr_abs(j, i)));
        IeffDecomposition dec = extract_ieff(res.avgC, asym_tol);
        std::vector<double> evs(dec.d_eigenvalues.data(),
                                dec.d_eigenvalues.data() + dec.d_eigenvalues.size());
        summary["ieff"] = {
            {"i_eff", matrix_to_json(dec.i_eff)},
            {"D", matrix_to_json(dec.D)},
            {"D_eigenvalues", evs},
            {"defect", dec.defect},
            {"d_spread", dec.d_spread},
            {"hbar_estimate", dec.hbar_estimate},
            {"residual", dec.residual},
            {"plus_multiplicity", dec.plus_count},
            {"minus_multiplicity", dec.minus_count},
            {"ieff_sq_dev", dec.ieff_sq_dev},
            {"anti_adjoint_dev", dec.anti_adjoint_dev},
            {"commute_dev", dec.commute_dev},
            {"trace_abs", dec.trace_abs},
        };
    }

    OutputBuffer out;
    const json& jo = sc.value("outputs", json::object());
    check_keys(jo, {"results_json", "trace_csv"}, "outputs");
    if (jo.contains("results_json"))
        out.add(jo["results_json"].get<std::string>(), summary.dump(2) + "\n");
    if (jo.contains("trace_csv")) {
        std::ostringstream csv;
        csv << "chain,index,TrH\n";
        long per = static_cast<long>(res.trh_trace.size()) /
                   std::max(1, params.chains);
        for (std::size_t k = 0; k < res.trh_trace.size(); ++k)
            csv << (per ? static_cast<long>(k) / per : 0) << ","
                << (per ? static_cast<long>(k) % per : static_cast<long>(k))
                << "," << fmt_double(res.trh_trace[k]) << "\n";
        out.add(jo["trace_csv"].get<std::string>(), csv.str());
    }

    RunOutcome outcome;
    outcome.summary = summary;
    out.flush(ctx.out_dir, outcome);
    return outcome;
}

// ---------------------------------------------------------------------------
// gravastar

RunOutcome run_gravastar(const json& sc, const RunContext& ctx,
                         std::uint64_t seed) {
    check_keys(sc, {"kind", "seed", "eos", "p_center", "options", "weyl",
                    "sweep", "outputs"},
               "scenario");
    if (!sc.contains("eos")) throw_config("gravastar scenario needs 'eos'");
    const json& jeos = sc["eos"];
    check_keys(jeos, {"p_jump", "epsilon", "p_surface", "jump_enabled"}, "eos");
    EOSSpec eos;
    eos.p_jump = require_number(jeos, "p_jump", "eos");
    eos.epsilon = require_number(jeos, "epsilon", "eos");
    eos.p_surface = require_number(jeos, "p_surface", "eos");
    eos.jump_enabled = jeos.value("jump_enabled", true);
    eos.validate();

    TOVOptions opts;
    opts.p_center = require_number(sc, "p_center", "scenario");
    if (sc.contains("options")) {
        const json& jop = sc["options"];
        check_keys(jop, {"rel_tol", "exterior_extent", "record_stride",
                         "r0_factor"},
                   "options");
        opts.rel_tol = jop.value("rel_tol", opts.rel_tol);
        opts.exterior_extent = jop.value("exterior_extent", opts.exterior_extent);
        opts.record_stride = jop.value("record_stride", opts.record_stride);
        opts.r0_factor = jop.value("r0_factor", opts.r0_factor);
    }

    TOVSolution sol = integrate_star(eos, opts);

    const double r_unit = 1.0 / std::sqrt(eos.p_jump);
    json summary = {
        {"kind", "gravastar"},
        {"seed", seed},
        {"p_center", opts.p_center},
        {"eos", {{"p_jump", eos.p_jump},
                 {"epsilon", eos.epsilon},
                 {"p_surface", eos.p_surface},
                 {"jump_enabled", eos.jump_enabled}}},
        {"R_surface", sol.R_surface},
        {"M_total", sol.M_total},
        {"R_surface_over_pjump_scale", sol.R_surface / r_unit},
        {"M_total_over_pjump_scale", sol.M_total / r_unit},
        {"r_jump", sol.r_jump},
        {"jumped", sol.jumped},
        {"min_compactness", sol.min_compactness},
        {"min_compactness_r", sol.min_compactness_r},
        {"nu_center", sol.nu_center},
        {"horizonless", sol.horizonless},
        {"pressure_continuity_gap", sol.pressure_continuity_gap},
        {"density_jump", sol.density_jump},
        {"exterior_max_rel_dev", sol.exterior_max_rel_dev},
        {"samples", sol.r.size()},
    };

    OutputBuffer out;
    const json& jo = sc.value("outputs", json::object());
    check_keys(jo, {"profile_csv", "summary_json", "sweep_csv"}, "outputs");

    if (jo.contains("profile_csv")) {
        std::ostringstream csv;
        csv << "r,m,nu,p,rho,compactness\n";
        for (std::size_t i = 0; i < sol.r.size(); ++i)
            csv << fmt_double(sol.r[i]) << "," << fmt_double(sol.m[i]) << ","
                << fmt_double(sol.nu[i]) << "," << fmt_double(sol.p[i]) << ","
                << fmt_double(sol.rho[i]) << ","
                << fmt_double(1.0 - 2.0 * sol.m[i] / sol.r[i]) << "\n";
        out.add(jo["profile_csv"].get<std::string>(), csv.str());
    }

    if (sc.contains("weyl")) {
        const json& jw = sc["weyl"];
        check_keys(jw, {"samples"}, "weyl");
        int nsamp = jw.value("samples", 10000);
        auto samples = sample_metric(sol, nsamp, Rng::stream(seed, 2).next_u64());
        Rng rng = Rng::stream(seed, 3);
        std::vector<double> lam;
        lam.reserve(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            lam.push_back(rng.uniform(0.5, 2.0));
        summary["weyl"] = {
            {"samples", nsamp},
            {"invariant_max_dev", weyl_invariance_check(samples, lam)},
            {"control_max_dev", weyl_control_check(samples, lam)},
        };
    }

    if (sc.contains("sweep")) {
        const json& js = sc["sweep"];
        check_keys(js, {"p_center", "epsilon"}, "sweep");
        if (!js.contains("p_center") || !js["p_center"].is_array())
            throw_config("sweep needs a 'p_center' array");
        std::vector<double> p_centers;
        for (const auto& v : js["p_center"]) p_centers.push_back(v.get<double>());
        std::vector<EOSSpec> eos_list;
        if (js.contains("epsilon")) {
            for (const auto& v : js["epsilon"]) {
                EOSSpec e = eos;
                e.epsilon = v.get<double>();
                eos_list.push_back(e);
            }
        } else {
            eos_list.push_back(eos);
        }
        auto rows = sweep(p_centers, eos_list, opts, ctx.threads);
        std::ostringstream csv;
        csv << "p_center,epsilon,status,M,R,min_compactness,r_jump,error\n";
        int failures = 0;
        for (const auto& row : rows) {
            csv << fmt_double(row.p_center) << "," << fmt_double(row.epsilon)
                << "," << (row.ok ? "ok" : "error") << ",";
            if (row.ok)
                csv << fmt_double(row.M) << "," << fmt_double(row.R) << ","
                    << fmt_double(row.min_compactness) << ","
                    << fmt_double(row.r_jump) << ",";
            else
                csv << ",,,,";
            std::string err = row.error;
            for (auto& c : err)
                if (c == ',' || c == '\n') c = ';';
            csv << err << "\n";
            if (!row.ok) ++failures;
        }
        if (jo.contains("sweep_csv"))
            out.add(jo["sweep_csv"].get<std::string>(), csv.str());
        summary["sweep"] = {{"rows", rows.size()}, {"failures", failures}};
    }

    if (jo.contains("summary_json"))
        out.add(jo["summary_json"].get<std::string>(), summary.dump(2) + "\n");

    RunOutcome outcome;
    outcome.summary = summary;
    out.flush(ctx.out_dir, outcome);
    return outcome;
}

// ---------------------------------------------------------------------------
// check

RunOutcome run_check(const json& sc, const RunContext& ctx,
                     std::uint64_t /*seed*/) {
    check_keys(sc, {"kind", "seed", "suite", "outputs"}, "scenario");
    std::string suite = require_string(sc, "suite", "scenario");
    SuiteReport rep = run_suite(suite, ctx.threads);

    RunOutcome outcome;
    outcome.passed = rep.all_pass();
    outcome.summary = rep.to_json();

    OutputBuffer out;
    const json& jo = sc.value("outputs", json::object());
    check_keys(jo, {"report_json"}, "outputs");
    if (jo.contains("report_json"))
        out.add(jo["report_json"].get<std::string>(), rep.to_json().dump(2) + "\n");
    out.flush(ctx.out_dir, outcome);
    if (!outcome.passed)
        throw_invariant("check suite '" + suite + "' failed:\n" + rep.to_text());
    return outcome;
}

}  // namespace

std::string RunOutcome::to_text() const {
    std::ostringstream os;
    os << summary.dump(2) << "\n";
    for (const auto& f : files_written) os << "wrote " << f << "\n";
    return os.str();
}

RunOutcome run_scenario_json(const nlohmann::json& sc, const RunContext& ctx) {
    if (!sc.is_object()) throw_config("scenario must be a JSON object");
    if (!sc.contains("kind") || !sc["kind"].is_string())
        throw_config("scenario needs a string 'kind'");
    std::string kind = sc["kind"].get<std::string>();
    std::uint64_t seed = require_seed(sc);
    if (ctx.seed_override) seed = *ctx.seed_override;

    try {
        if (kind == "evolve") return run_evolve(sc, ctx, seed);
        if (kind == "ensemble") return run_ensemble(sc, ctx, seed);
        if (kind == "gravastar") return run_gravastar(sc, ctx, seed);
        if (kind == "check") return run_check(sc, ctx, seed);
    } catch (const nlohmann::json::exception& e) {
        throw_config(std::string("scenario field has the wrong type: ") +
                     e.what());
    }
    throw_config("unknown scenario kind '" + kind +
                 "' (expected evolve, ensemble, gravastar or check)");
}

RunOutcome run_scenario_file(const std::string& path, const RunContext& ctx) {
    std::ifstream f(path);
    if (!f) throw_io("cannot read scenario file '" + path + "'");
    nlohmann::json sc;
    try {
        f >> sc;
    } catch (const nlohmann::json::exception& e) {
        throw_io("malformed JSON in '" + path + "': " + e.what());
    }
    return run_scenario_json(sc, ctx);
}

}  // namespace td
