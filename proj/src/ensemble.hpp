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

#include <vector>

#include "dynamics.hpp"

namespace td {

/// Real coordinate chart of the flat phase-space measure: per dof, the
/// diagonal and the upper-triangle re/im parts of the Hermitian q and p.
int phase_space_dim(int dim, int dofs);
std::vector<double> flatten_state(const PhaseSpaceState& state);
PhaseSpaceState unflatten_state(const std::vector<double>& x, int dim,
                                int dofs);

/// Balanced anti-Hermitian source: lambda * i * diag(1,..,1,[0],-1,..,-1)
/// (middle zero only for odd N).
ComplexMatrix default_lambda_tilde(int dim, double lambda);

struct EnsembleParams {
    double tau = 1.0;
    ComplexMatrix lambda_tilde;  // anti-Hermitian, same dim as the model
    int chains = 4;
    long steps_per_chain = 20000;  // kept samples per chain (post burn-in)
    long burn_in = 2000;
    double proposal_scale = 0.25;
    std::uint64_t seed = 1;
    int threads = 1;
    bool keep_trh_trace = false;
};

struct EnsembleResult {
    double mean_trH = 0.0;
    double stderr_trH = 0.0;
    ComplexMatrix avgC;
    Eigen::MatrixXd stderr_re;  // elementwise batch-means stderr of Re avgC
    Eigen::MatrixXd stderr_im;
    double acceptance_rate = 0.0;
    std::vector<double> chain_acceptance;
    double ess_trH = 0.0;
    long total_samples = 0;
    std::vector<double> trh_trace;  // chain-major when requested
    std::vector<std::string> warnings;

    /// Combined elementwise stderr sqrt(re^2 + im^2).
    double stderr_abs(int row, int col) const;
};

/// Metropolis-Hastings over the flat measure with stationary density
/// proportional to exp(-tau TrH - Tr(lambda_tilde C~)). Gaussian proposals
/// on all real coordinates at once; chains run on independent seeded
/// streams and merge in chain order, so results do not depend on the
/// thread count. Refuses models whose exponent is unbounded below.
EnsembleResult metropolis_chain(const ModelSpec& model,
                                const EnsembleParams& params);

struct IeffDecomposition {
    ComplexMatrix i_eff;  // zero on the defect subspace
    ComplexMatrix D;      // positive-semidefinite Hermitian
    double residual = 0.0;
    int defect = 0;               // eigendirections under the cutoff
    Eigen::VectorXd d_eigenvalues;
    double d_spread = 0.0;        // (max-min)/mean over kept eigenvalues
    double hbar_estimate = 0.0;
    int plus_count = 0;   // +i multiplicity
    int minus_count = 0;  // -i multiplicity
    // measured structure deviations
    double ieff_sq_dev = 0.0;     // ||i_eff^2 + P_kept||_F
    double anti_adjoint_dev = 0.0;
    double commute_dev = 0.0;     // ||[i_eff, D]||_F
    double trace_abs = 0.0;       // |Tr i_eff|
};

/// Polar split <C~> = i_eff * D via the Hermitian eigendecomposition of
/// -i <C~>. The input is anti-Hermitian-symmetrized first; asymmetry above
/// `asym_tol` (elementwise) is an error. Eigendirections below
/// 1e-8 * ||D||_2 are reported as defect, never inverted.
IeffDecomposition extract_ieff(const ComplexMatrix& avgC, double asym_tol);

struct JacobianReport {
    int dim = 0;          // flattened phase-space dimension
    double det = 1.0;
    double deviation = 0.0;  // |det - 1|
};

/// |det J - 1| of one leapfrog step, finite-difference Jacobian on the
/// flattened chart. Desk-scale guard: N <= 3.
JacobianReport leapfrog_jacobian(const ModelSpec& model,
                                 const PhaseSpaceState& at, double dt,
                                 double h = 0x1p-10);

/// Same, for one RK4 step (not symplectic; deviation is O(dt^6) per
/// conjugate mode on linear flows).
JacobianReport rk4_jacobian(const ModelSpec& model, const PhaseSpaceState& at,
                            double dt, double h = 0x1p-10);

/// Euler step of the canonical transformation with generator G:
/// q += dt dG/dp, p -= dt dG/dq.
JacobianReport generator_step_jacobian(const ModelSpec& model,
                                       const TracePolynomial& generator,
                                       const PhaseSpaceState& at, double dt,
                                       double h = 0x1p-10);

}  // namespace td
