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
#include "fixtures.hpp"

#include "rng.hpp"

namespace td::fixtures {

namespace {

SymbolTablePtr qp_table(int dofs) {
    auto t = std::make_shared<SymbolTable>();
    for (int r = 1; r <= dofs; ++r) {
        t->declare("q" + std::to_string(r), SymbolKind::Coordinate, r);
        t->declare("p" + std::to_string(r), SymbolKind::Momentum, r);
    }
    return t;
}

// "+ c*Tr(...)" with the sign folded into the separator, grammar-clean for
// negative couplings
std::string term(double c, const std::string& word) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", std::abs(c));
    return std::string(c < 0 ? " - " : " + ") + buf + "*Tr(" + word + ")";
}

}  // namespace

ModelSpec harmonic(int dim, double omega) {
    SymbolTablePtr t = qp_table(1);
    TracePolynomial h = parse_trace_polynomial(
        "0.5*Tr(p1*p1)" + term(0.5 * omega * omega, "q1*q1"), t);
    return build_hamiltonian_model(t, h, dim, Binding(t));
}

ModelSpec harmonic_2dof(int dim, double omega) {
    SymbolTablePtr t = qp_table(2);
    double w2 = 0.5 * omega * omega;
    TracePolynomial h = parse_trace_polynomial(
        "0.5*Tr(p1*p1) + 0.5*Tr(p2*p2)" + term(w2, "q1*q1") +
        term(w2, "q2*q2"), t);
    return build_hamiltonian_model(t, h, dim, Binding(t));
}

ModelSpec quartic(int dim, double g) {
    SymbolTablePtr t = qp_table(1);
    TracePolynomial h = parse_trace_polynomial(
        "0.5*Tr(p1*p1)" + term(g, "q1*q1*q1*q1"), t);
    return build_hamiltonian_model(t, h, dim, Binding(t));
}

ModelSpec coupled_quartic(int dim, double g) {
    SymbolTablePtr t = qp_table(2);
    TracePolynomial h = parse_trace_polynomial(
        "0.5*Tr(p1*p1) + 0.5*Tr(p2*p2)" + term(g, "q1*q2*q1*q2"), t);
    return build_hamiltonian_model(t, h, dim, Binding(t));
}

ModelSpec external_coupling(int dim, std::uint64_t k_seed) {
    auto t = std::make_shared<SymbolTable>();
    t->declare("q1", SymbolKind::Coordinate, 1);
    t->declare("p1", SymbolKind::Momentum, 1);
    t->declare("K", SymbolKind::Constant, 0);
    SymbolTablePtr tp = t;
    Binding constants(tp);
    constants.set("K", OperatorMatrix::random_hermitian(dim, k_seed));
    TracePolynomial h = parse_trace_polynomial("Tr(q1*K*p1)", tp);
    return build_hamiltonian_model(tp, h, dim, constants);
}

ModelSpec quartic_from_lagrangian(int dim, double g) {
    auto t = std::make_shared<SymbolTable>();
    t->declare("q1", SymbolKind::Coordinate, 1);
    t->declare("q1dot", SymbolKind::Velocity, 1);
    SymbolTablePtr tp = t;
    TracePolynomial lag = parse_trace_polynomial(
        "0.5*Tr(q1dot*q1dot)" + term(-g, "q1*q1*q1*q1"), tp);
    return legendre_transform(tp, lag, dim, Binding(tp));
}

ModelSpec coupled_kinetic_lagrangian(int dim, double g) {
    auto t = std::make_shared<SymbolTable>();
    t->declare("q1", SymbolKind::Coordinate, 1);
    t->declare("q1dot", SymbolKind::Velocity, 1);
    t->declare("q2", SymbolKind::Coordinate, 2);
    t->declare("q2dot", SymbolKind::Velocity, 2);
    SymbolTablePtr tp = t;
    TracePolynomial lag = parse_trace_polynomial(
        "0.5*Tr(q1dot*q1dot) + 0.5*Tr(q2dot*q2dot) + "
        "0.25*Tr(q1dot*q2dot) - 0.5*Tr(q1*q1) - 0.5*Tr(q2*q2)" +
            term(-g, "q1*q1*q1*q1"),
        tp);
    return legendre_transform(tp, lag, dim, Binding(tp));
}

PhaseSpaceState random_state(const ModelSpec& model, std::uint64_t seed,
                             double scale, bool normalize) {
    Rng rng(seed);
    PhaseSpaceState s;
    for (int i = 0; i < model.dof_count(); ++i) {
        OperatorMatrix q =
            OperatorMatrix::random_hermitian(model.dim, rng.next_u64(), scale);
        OperatorMatrix p =
            OperatorMatrix::random_hermitian(model.dim, rng.next_u64(), scale);
        if (normalize) {
            q = q * Complex(1.0 / q.frobenius_norm());
            p = p * Complex(1.0 / p.frobenius_norm());
        }
        s.q.push_back(std::move(q));
        s.p.push_back(std::move(p));
    }
    return s;
}

std::vector<TracePolynomial> derivative_fixtures() {
    std::vector<TracePolynomial> out;
    {
        SymbolTablePtr t = qp_table(1);
        out.push_back(parse_trace_polynomial(
            "0.5*Tr(p1*p1) + 0.5*Tr(q1*q1)", t));
    }
    {
        SymbolTablePtr t = qp_table(1);
        out.push_back(parse_trace_polynomial(
            "0.5*Tr(p1*p1) + 0.3*Tr(q1*q1*q1*q1)", t));
    }
    {
        SymbolTablePtr t = qp_table(2);
        out.push_back(parse_trace_polynomial(
            "0.5*Tr(p1*p1) + 0.5*Tr(p2*p2) + 0.1*Tr(q1*q2*q1*q2)", t));
    }
    {
        SymbolTablePtr t = qp_table(2);
        out.push_back(parse_trace_polynomial(
            "0.25*Tr(q1*q1*q2*q1*q2*q2)", t));
    }
    {
        SymbolTablePtr t = qp_table(1);
        out.push_back(parse_trace_polynomial("0.5*Tr(q1*p1*q1*p1)", t));
    }
    return out;
}

EOSSpec reference_eos() {
    EOSSpec eos;
    eos.p_jump = 1.0;
    eos.epsilon = 0.1;
    eos.p_surface = 1e-8;
    return eos;
}

TOVOptions reference_tov_options() {
    TOVOptions opts;
    opts.p_center = 2.0;
    opts.rel_tol = 1e-10;
    opts.exterior_extent = 10.0;
    opts.record_stride = 1;
    return opts;
}

}  // namespace td::fixtures
