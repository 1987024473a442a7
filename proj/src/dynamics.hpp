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
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trace_poly.hpp"

namespace td {

/// Full configuration {q_r},{p_r} at a time; lists are indexed by dof
/// position (the sorted dof order of the symbol table).
struct PhaseSpaceState {
    std::vector<OperatorMatrix> q;
    std::vector<OperatorMatrix> p;
    double t = 0.0;
};

/// Compiled model: Hamiltonian, per-dof gradients, constants, and flags.
/// Dynamics integration runs on the complex fast path; odd-graded symbols
/// are rejected at build time.
class ModelSpec {
public:
    SymbolTablePtr symbols;
    TracePolynomial hamiltonian;
    int dim = 0;
    Binding constants;

    std::vector<int> dof_list;    // sorted dof indices
    std::vector<int> q_ids;       // symbol id per dof position
    std::vector<int> p_ids;
    std::vector<OperatorPolynomial> dH_dq;
    std::vector<OperatorPolynomial> dH_dp;
    bool separable = false;
    bool unitary_invariant = false;

    // Present when the model came through a Legendre transform.
    std::optional<TracePolynomial> lagrangian;
    std::vector<int> qdot_ids;
    ComplexMatrix kinetic;      // p = kinetic * qdot
    ComplexMatrix kinetic_inv;
    std::vector<OperatorPolynomial> dL_dq;

    int dof_count() const noexcept { return static_cast<int>(dof_list.size()); }

    /// Binding of q/p (+constants) for the given state.
    Binding bind_state(const PhaseSpaceState& state) const;

    explicit ModelSpec(SymbolTablePtr table)
        : symbols(table), hamiltonian(table), constants(table) {}
};

/// Compiles a Hamiltonian-form model; gradients are generated here.
ModelSpec build_hamiltonian_model(SymbolTablePtr table,
                                  const TracePolynomial& hamiltonian, int dim,
                                  const Binding& constants);

/// Legendre transform of a Lagrangian quadratic in the velocities with an
/// invertible constant kinetic form (diagnosed; anything else is refused).
/// Momentum symbols are appended to a copy of the symbol table when absent.
ModelSpec legendre_transform(SymbolTablePtr table,
                             const TracePolynomial& lagrangian, int dim,
                             const Binding& constants);

struct Derivatives {
    std::vector<OperatorMatrix> qdot;
    std::vector<OperatorMatrix> pdot;
};

/// qdot_r = dH/dp_r, pdot_r = -dH/dq_r.
Derivatives hamilton_rhs(const PhaseSpaceState& state, const ModelSpec& model);

PhaseSpaceState step_rk4(const PhaseSpaceState& state, const ModelSpec& model,
                         double dt);

/// Kick-drift-kick; requires a separable Hamiltonian (detected from the
/// polynomial at model build).
PhaseSpaceState step_leapfrog(const PhaseSpaceState& state,
                              const ModelSpec& model, double dt);

enum class Integrator { Rk4, Leapfrog };

struct EvolveOptions {
    double T = 1.0;
    double dt = 1e-3;
    Integrator integrator = Integrator::Rk4;
    int stride = 1;           // record every `stride` steps
    bool keep_states = false; // also keep full states at the stride
};

struct TrajectorySample {
    double t = 0.0;
    Complex traceH;
    double re_trC2 = 0.0;   // Re Tr(C~^2)
    double c_drift = 0.0;   // ||C~(t) - C~(0)||_F
    std::vector<double> dof_drift;  // per-dof pair-charge drift
};

struct ConservationReport {
    double max_rel_traceH_drift = 0.0;
    double max_tildeC_drift = 0.0;
    std::vector<double> max_dof_drift;
    double max_hermiticity_dev = 0.0;
    int steps = 0;
};

struct EvolveResult {
    std::vector<TrajectorySample> samples;
    std::vector<PhaseSpaceState> states;  // only with keep_states
    ConservationReport report;
    PhaseSpaceState final_state;
};

/// Integrates Hamilton's equations, recording conserved-structure drifts.
/// NaN/Inf in the state aborts with a diagnostic.
EvolveResult evolve(const PhaseSpaceState& initial, const ModelSpec& model,
                    const EvolveOptions& opts);

/// Noether charge of global unitary invariance:
/// sum over bosonic dofs of [q_r, p_r] minus sum over fermionic dofs of
/// {q_r, p_r}. Works for graded states; `table` fixes the dof gradings.
OperatorMatrix compute_tildeC(const PhaseSpaceState& state,
                              const SymbolTable& table);

/// The r-th dof's own pair charge ([q,p] bosonic, -{q,p} fermionic).
OperatorMatrix pair_charge(const PhaseSpaceState& state,
                           const SymbolTable& table, int dof_position);

/// Euler-Lagrange path: integrates (q, v) with v' = K^-1 dL/dq, for models
/// built by legendre_transform. Returns states with p = K v filled in, so
/// trajectories are directly comparable with the Hamiltonian flow.
std::vector<PhaseSpaceState> evolve_lagrangian(
    const std::vector<OperatorMatrix>& q0,
    const std::vector<OperatorMatrix>& v0, const ModelSpec& model, double T,
    double dt, int stride = 1);

}  // namespace td
