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
#include "dynamics.hpp"

#include <cmath>

#include "errors.hpp"

namespace td {

namespace {

void require_bosonic(const TracePolynomial& poly) {
    for (int id : poly.used_symbols())
        if (poly.symbols()->info(id).grading == Grading::Odd)
            throw_config("dynamics integration is bosonic-only; symbol '" +
                         poly.symbols()->info(id).name + "' is odd");
}

void check_constants(const TracePolynomial& poly, const Binding& constants,
                     int dim) {
    for (int id : poly.used_symbols()) {
        const SymbolInfo& s = poly.symbols()->info(id);
        if (s.kind != SymbolKind::Constant) continue;
        const OperatorMatrix& m = constants.get(id);  // throws when unbound
        if (m.dim() != dim)
            throw_config("constant '" + s.name + "' has dimension " +
                         std::to_string(m.dim()) + ", model needs " +
                         std::to_string(dim));
    }
}

std::vector<OperatorMatrix> axpy(const std::vector<OperatorMatrix>& x,
                                 double a,
                                 const std::vector<OperatorMatrix>& d) {
    std::vector<OperatorMatrix> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.push_back(x[i] + d[i] * Complex(a));
    return out;
}

void check_finite(const PhaseSpaceState& s, const char* where) {
    for (const auto& m : s.q)
        if (!m.is_finite())
            throw_numerical(std::string("NaN/Inf in q at t=") +
                            std::to_string(s.t) + " (" + where + ")");
    for (const auto& m : s.p)
        if (!m.is_finite())
            throw_numerical(std::string("NaN/Inf in p at t=") +
                            std::to_string(s.t) + " (" + where + ")");
}

}  // namespace

Binding ModelSpec::bind_state(const PhaseSpaceState& state) const {
    if (static_cast<int>(state.q.size()) != dof_count() ||
        static_cast<int>(state.p.size()) != dof_count())
        throw_config("state dof count does not match model");
    Binding b(symbols);
    for (int i = 0; i < dof_count(); ++i) {
        b.set(q_ids[static_cast<std::size_t>(i)], state.q[static_cast<std::size_t>(i)]);
        b.set(p_ids[static_cast<std::size_t>(i)], state.p[static_cast<std::size_t>(i)]);
    }
    for (int id = 0; id < symbols->size(); ++id)
        if (symbols->info(id).kind == SymbolKind::Constant && constants.has(id))
            b.set(id, constants.get(id));
    return b;
}

ModelSpec build_hamiltonian_model(SymbolTablePtr table,
                                  const TracePolynomial& hamiltonian, int dim,
                                  const Binding& constants) {
    if (dim < 1) throw_config("model dimension must be >= 1");
    table->require_momentum_pairing();
    require_bosonic(hamiltonian);
    for (int id : hamiltonian.used_symbols())
        if (table->info(id).kind == SymbolKind::Velocity)
            throw_config("Hamiltonian must not contain velocity symbols");
    check_constants(hamiltonian, constants, dim);

    ModelSpec m(table);
    m.hamiltonian = hamiltonian;
    m.dim = dim;
    m.constants = constants;
    m.dof_list = table->dofs();
    for (int r : m.dof_list) {
        m.q_ids.push_back(table->find(SymbolKind::Coordinate, r));
        m.p_ids.push_back(table->find(SymbolKind::Momentum, r));
    }
    for (std::size_t i = 0; i < m.dof_list.size(); ++i) {
        m.dH_dq.push_back(cyclic_derivative(hamiltonian, m.q_ids[i]));
        m.dH_dp.push_back(cyclic_derivative(hamiltonian, m.p_ids[i]));
    }

    m.separable = true;
    for (const auto& w : hamiltonian.words()) {
        bool has_p = false, has_q = false;
        for (int id : w.letters) {
            SymbolKind k = table->info(id).kind;
            has_p |= (k == SymbolKind::Momentum);
            has_q |= (k == SymbolKind::Coordinate);
        }
        if (has_p && has_q) m.separable = false;
    }

    m.unitary_invariant =
        check_unitary_invariance(hamiltonian, constants, 4, 0xC0FFEEull, dim);
    return m;
}

ModelSpec legendre_transform(SymbolTablePtr table,
                             const TracePolynomial& lagrangian, int dim,
                             const Binding& constants) {
    require_bosonic(lagrangian);
    for (int id : lagrangian.used_symbols())
        if (table->info(id).kind == SymbolKind::Momentum)
            throw_config("Lagrangian must not contain momentum symbols");

    // Extend the table with momentum partners where missing.
    auto extended = std::make_shared<SymbolTable>(*table);
    std::vector<int> dofs = table->dofs();
    for (int r : dofs) {
        if (extended->find(SymbolKind::Momentum, r) >= 0) continue;
        std::string name = "p" + std::to_string(r);
        if (extended->id_of(name) >= 0)
            name = "p_dof" + std::to_string(r);
        if (extended->id_of(name) >= 0)
            throw_config("cannot auto-name momentum symbol for dof " +
                         std::to_string(r));
        extended->declare(name, SymbolKind::Momentum, r,
                          extended->info(extended->find(SymbolKind::Coordinate, r))
                              .grading);
    }
    SymbolTablePtr ext = extended;
    TracePolynomial lag = TracePolynomial::from_words(
        ext, std::vector<TraceWord>(lagrangian.words().begin(),
                                    lagrangian.words().end()));

    const int R = static_cast<int>(dofs.size());
    std::vector<int> qdot_ids(static_cast<std::size_t>(R), -1);
    std::vector<int> p_ids, q_ids;
    for (int i = 0; i < R; ++i) {
        qdot_ids[static_cast<std::size_t>(i)] =
            ext->find(SymbolKind::Velocity, dofs[static_cast<std::size_t>(i)]);
        p_ids.push_back(ext->find(SymbolKind::Momentum, dofs[static_cast<std::size_t>(i)]));
        q_ids.push_back(ext->find(SymbolKind::Coordinate, dofs[static_cast<std::size_t>(i)]));
    }

    // p_r = dL/dqdot_r must be a constant linear form in the velocities.
    ComplexMatrix kinetic = ComplexMatrix::Zero(R, R);
    for (int i = 0; i < R; ++i) {
        if (qdot_ids[static_cast<std::size_t>(i)] < 0)
            throw_numerical("kinetic form is not invertible: no velocity "
                            "symbol for dof " +
                            std::to_string(dofs[static_cast<std::size_t>(i)]));
        OperatorPolynomial pr =
            cyclic_derivative(lag, qdot_ids[static_cast<std::size_t>(i)]);
        for (const auto& term : pr.terms) {
            if (term.letters.size() != 1 ||
                ext->info(term.letters[0]).kind != SymbolKind::Velocity)
                throw_numerical(
                    "Lagrangian is not quadratic in the velocities with a "
                    "constant kinetic form (dL/d" +
                    ext->info(qdot_ids[static_cast<std::size_t>(i)]).name +
                    " has a non-velocity term)");
            for (int j = 0; j < R; ++j)
                if (term.letters[0] == qdot_ids[static_cast<std::size_t>(j)])
                    kinetic(i, j) += term.coeff;
        }
    }
    Eigen::FullPivLU<ComplexMatrix> lu(kinetic);
    lu.setThreshold(1e-12);
    if (lu.rank() < R)
        throw_numerical("kinetic form is not invertible (rank " +
                        std::to_string(lu.rank()) + " of " + std::to_string(R) +
                        "); no constraint analysis is attempted");
    ComplexMatrix kinetic_inv = lu.inverse();

    // H = sum_r Tr(p_r qdot_r) - L, with qdot_s -> sum_t (K^-1)_st p_t.
    std::vector<TraceWord> pq_words;
    for (int i = 0; i < R; ++i)
        pq_words.push_back(TraceWord{
            Complex(1.0),
            {p_ids[static_cast<std::size_t>(i)], qdot_ids[static_cast<std::size_t>(i)]}});
    TracePolynomial hamiltonian =
        TracePolynomial::from_words(ext, std::move(pq_words)) - lag;
    for (int s = 0; s < R; ++s) {
        std::vector<std::pair<Complex, int>> repl;
        for (int t = 0; t < R; ++t)
            repl.emplace_back(kinetic_inv(s, t), p_ids[static_cast<std::size_t>(t)]);
        hamiltonian = substitute(hamiltonian, qdot_ids[static_cast<std::size_t>(s)], repl);
    }

    Binding ext_constants(ext);
    for (int id = 0; id < table->size(); ++id)
        if (table->info(id).kind == SymbolKind::Constant && constants.has(id))
            ext_constants.set(table->info(id).name, constants.get(id));

    ModelSpec m = build_hamiltonian_model(ext, hamiltonian, dim, ext_constants);
    m.lagrangian = lag;
    m.qdot_ids = qdot_ids;
    m.kinetic = kinetic;
    m.kinetic_inv = kinetic_inv;
    for (int i = 0; i < R; ++i)
        m.dL_dq.push_back(cyclic_derivative(lag, q_ids[static_cast<std::size_t>(i)]));
    return m;
}

Derivatives hamilton_rhs(const PhaseSpaceState& state, const ModelSpec& model) {
    Binding b = model.bind_state(state);
    Derivatives d;
    for (int i = 0; i < model.dof_count(); ++i) {
        d.qdot.push_back(
            evaluate_operator(model.dH_dp[static_cast<std::size_t>(i)], b, model.dim));
        d.pdot.push_back(
            -evaluate_operator(model.dH_dq[static_cast<std::size_t>(i)], b, model.dim));
    }
    return d;
}

PhaseSpaceState step_rk4(const PhaseSpaceState& state, const ModelSpec& model,
                         double dt) {
    auto stage = [&](const Derivatives& d, double a) {
        PhaseSpaceState s;
        s.q = axpy(state.q, a * dt, d.qdot);
        s.p = axpy(state.p, a * dt, d.pdot);
        s.t = state.t + a * dt;
        return s;
    };
    Derivatives k1 = hamilton_rhs(state, model);
    Derivatives k2 = hamilton_rhs(stage(k1, 0.5), model);
    Derivatives k3 = hamilton_rhs(stage(k2, 0.5), model);
    Derivatives k4 = hamilton_rhs(stage(k3, 1.0), model);

    PhaseSpaceState out;
    out.t = state.t + dt;
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < state.q.size(); ++i) {
        out.q.push_back(state.q[i] + (k1.qdot[i] + k2.qdot[i] * Complex(2.0) +
                                      k3.qdot[i] * Complex(2.0) + k4.qdot[i]) *
                                         Complex(w));
        out.p.push_back(state.p[i] + (k1.pdot[i] + k2.pdot[i] * Complex(2.0) +
                                      k3.pdot[i] * Complex(2.0) + k4.pdot[i]) *
                                         Complex(w));
    }
    return out;
}

PhaseSpaceState step_leapfrog(const PhaseSpaceState& state,
                              const ModelSpec& model, double dt) {
    if (!model.separable)
        throw_config("leapfrog requires a separable Hamiltonian H = T(p) + V(q)");
    PhaseSpaceState half = state;
    {
        Binding b = model.bind_state(state);
        for (int i = 0; i < model.dof_count(); ++i)
            half.p[static_cast<std::size_t>(i)] =
                state.p[static_cast<std::size_t>(i)] -
                evaluate_operator(model.dH_dq[static_cast<std::size_t>(i)], b,
                                  model.dim) *
                    Complex(0.5 * dt);
    }
    PhaseSpaceState out = half;
    {
        Binding b = model.bind_state(half);
        for (int i = 0; i < model.dof_count(); ++i)
            out.q[static_cast<std::size_t>(i)] =
                half.q[static_cast<std::size_t>(i)] +
                evaluate_operator(model.dH_dp[static_cast<std::size_t>(i)], b,
                                  model.dim) *
                    Complex(dt);
    }
    {
        Binding b = model.bind_state(out);
        for (int i = 0; i < model.dof_count(); ++i)
            out.p[static_cast<std::size_t>(i)] =
                out.p[static_cast<std::size_t>(i)] -
                evaluate_operator(model.dH_dq[static_cast<std::size_t>(i)], b,
                                  model.dim) *
                    Complex(0.5 * dt);
    }
    out.t = state.t + dt;
    return out;
}

OperatorMatrix compute_tildeC(const PhaseSpaceState& state,
                              const SymbolTable& table) {
    std::vector<int> dofs = table.dofs();
    if (state.q.size() != dofs.size() || state.p.size() != dofs.size())
        throw_config("state dof count does not match symbol table");
    OperatorMatrix acc;
    for (std::size_t i = 0; i < dofs.size(); ++i) {
        OperatorMatrix c = pair_charge(state, table, static_cast<int>(i));
        acc = (i == 0) ? c : acc + c;
    }
    return acc;
}

OperatorMatrix pair_charge(const PhaseSpaceState& state,
                           const SymbolTable& table, int dof_position) {
    std::vector<int> dofs = table.dofs();
    int r = dofs.at(static_cast<std::size_t>(dof_position));
    Grading g = table.info(table.find(SymbolKind::Coordinate, r)).grading;
    const OperatorMatrix& q = state.q[static_cast<std::size_t>(dof_position)];
    const OperatorMatrix& p = state.p[static_cast<std::size_t>(dof_position)];
    if (g == Grading::Even) return commutator(q, p);
    return -anticommutator(q, p);
}

EvolveResult evolve(const PhaseSpaceState& initial, const ModelSpec& model,
                    const EvolveOptions& opts) {
    if (opts.T <= 0 || opts.dt <= 0) throw_config("evolve needs T > 0, dt > 0");
    if (opts.stride < 1) throw_config("stride must be >= 1");
    const int nsteps = static_cast<int>(std::llround(opts.T / opts.dt));
    if (nsteps < 1) throw_config("T/dt rounds to zero steps");

    EvolveResult res;
    PhaseSpaceState s = initial;
    check_finite(s, "initial state");

    const int R = model.dof_count();
    Binding b0 = model.bind_state(s);
    Complex trH0 = evaluate_scalar(model.hamiltonian, b0);
    OperatorMatrix c0 = compute_tildeC(s, *model.symbols);
    std::vector<OperatorMatrix> pair0;
    for (int i = 0; i < R; ++i) pair0.push_back(pair_charge(s, *model.symbols, i));

    res.report.max_dof_drift.assign(static_cast<std::size_t>(R), 0.0);

    auto record = [&](const PhaseSpaceState& st) {
        Binding b = model.bind_state(st);
        TrajectorySample sample;
        sample.t = st.t;
        sample.traceH = evaluate_scalar(model.hamiltonian, b);
        OperatorMatrix c = compute_tildeC(st, *model.symbols);
        sample.re_trC2 = (c * c).trace_scalar().real();
        sample.c_drift = (c - c0).frobenius_norm();
        for (int i = 0; i < R; ++i)
            sample.dof_drift.push_back(
                (pair_charge(st, *model.symbols, i) - pair0[static_cast<std::size_t>(i)])
                    .frobenius_norm());

        double denom = std::abs(trH0);
        double rel = std::abs(sample.traceH - trH0) /
                     (denom > 0 ? denom : 1.0);
        res.report.max_rel_traceH_drift =
            std::max(res.report.max_rel_traceH_drift, rel);
        res.report.max_tildeC_drift =
            std::max(res.report.max_tildeC_drift, sample.c_drift);
        for (int i = 0; i < R; ++i)
            res.report.max_dof_drift[static_cast<std::size_t>(i)] = std::max(
                res.report.max_dof_drift[static_cast<std::size_t>(i)],
                sample.dof_drift[static_cast<std::size_t>(i)]);
        for (int i = 0; i < R; ++i) {
            double h = (st.q[static_cast<std::size_t>(i)] -
                        st.q[static_cast<std::size_t>(i)].adjoint())
                           .frobenius_norm();
            double hp = (st.p[static_cast<std::size_t>(i)] -
                         st.p[static_cast<std::size_t>(i)].adjoint())
                            .frobenius_norm();
            res.report.max_hermiticity_dev =
                std::max({res.report.max_hermiticity_dev, h, hp});
        }
        res.samples.push_back(std::move(sample));
        if (opts.keep_states) res.states.push_back(st);
    };

    record(s);
    for (int step = 1; step <= nsteps; ++step) {
        s = (opts.integrator == Integrator::Rk4)
                ? step_rk4(s, model, opts.dt)
                : step_leapfrog(s, model, opts.dt);
        check_finite(s, "integration step");
        if (step % opts.stride == 0 || step == nsteps) record(s);
    }
    res.report.steps = nsteps;
    res.final_state = std::move(s);
    return res;
}

std::vector<PhaseSpaceState> evolve_lagrangian(
    const std::vector<OperatorMatrix>& q0,
    const std::vector<OperatorMatrix>& v0, const ModelSpec& model, double T,
    double dt, int stride) {
    if (!model.lagrangian)
        throw_config("model has no Lagrangian side (built directly from H)");
    const int R = model.dof_count();
    if (static_cast<int>(q0.size()) != R || static_cast<int>(v0.size()) != R)
        throw_config("initial data dof count mismatch");

    auto bind_qv = [&](const std::vector<OperatorMatrix>& q,
                       const std::vector<OperatorMatrix>& v) {
        Binding b(model.symbols);
        for (int i = 0; i < R; ++i) {
            b.set(model.q_ids[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(i)]);
            b.set(model.qdot_ids[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
        }
        for (int id = 0; id < model.symbols->size(); ++id)
            if (model.symbols->info(id).kind == SymbolKind::Constant &&
                model.constants.has(id))
                b.set(id, model.constants.get(id));
        return b;
    };

    // v'_r = sum_s (K^-1)_rs dL/dq_s
    auto accel = [&](const std::vector<OperatorMatrix>& q,
                     const std::vector<OperatorMatrix>& v) {
        Binding b = bind_qv(q, v);
        std::vector<OperatorMatrix> f;
        for (int s = 0; s < R; ++s)
            f.push_back(evaluate_operator(model.dL_dq[static_cast<std::size_t>(s)],
                                          b, model.dim));
        std::vector<OperatorMatrix> a;
        for (int r = 0; r < R; ++r) {
            OperatorMatrix acc = OperatorMatrix::zero(model.dim);
            for (int s = 0; s < R; ++s)
                acc = acc + f[static_cast<std::size_t>(s)] * model.kinetic_inv(r, s);
            a.push_back(std::move(acc));
        }
        return a;
    };

    auto momenta = [&](const std::vector<OperatorMatrix>& v) {
        std::vector<OperatorMatrix> p;
        for (int r = 0; r < R; ++r) {
            OperatorMatrix acc = OperatorMatrix::zero(model.dim);
            for (int s = 0; s < R; ++s)
                acc = acc + v[static_cast<std::size_t>(s)] * model.kinetic(r, s);
            p.push_back(std::move(acc));
        }
        return p;
    };

    const int nsteps = static_cast<int>(std::llround(T / dt));
    std::vector<OperatorMatrix> q = q0, v = v0;
    std::vector<PhaseSpaceState> out;
    auto push = [&](double t) {
        PhaseSpaceState s;
        s.q = q;
        s.p = momenta(v);
        s.t = t;
        out.push_back(std::move(s));
    };
    push(0.0);
    for (int step = 1; step <= nsteps; ++step) {
        // RK4 on the second-order system
        auto k1q = v;                 auto k1v = accel(q, v);
        auto q2 = axpy(q, dt / 2, k1q); auto v2 = axpy(v, dt / 2, k1v);
        auto k2q = v2;                auto k2v = accel(q2, v2);
        auto q3 = axpy(q, dt / 2, k2q); auto v3 = axpy(v, dt / 2, k2v);
        auto k3q = v3;                auto k3v = accel(q3, v3);
        auto q4 = axpy(q, dt, k3q);     auto v4 = axpy(v, dt, k3v);
        auto k4q = v4;                auto k4v = accel(q4, v4);
        for (int i = 0; i < R; ++i) {
            q[static_cast<std::size_t>(i)] =
                q[static_cast<std::size_t>(i)] +
                (k1q[static_cast<std::size_t>(i)] + k2q[static_cast<std::size_t>(i)] * Complex(2.0) +
                 k3q[static_cast<std::size_t>(i)] * Complex(2.0) + k4q[static_cast<std::size_t>(i)]) *
                    Complex(dt / 6.0);
            v[static_cast<std::size_t>(i)] =
                v[static_cast<std::size_t>(i)] +
                (k1v[static_cast<std::size_t>(i)] + k2v[static_cast<std::size_t>(i)] * Complex(2.0) +
                 k3v[static_cast<std::size_t>(i)] * Complex(2.0) + k4v[static_cast<std::size_t>(i)]) *
                    Complex(dt / 6.0);
        }
        if (step % stride == 0 || step == nsteps)
            push(step * dt);
    }
    return out;
}

}  // namespace td
