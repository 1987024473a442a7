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

#include <cstdint>
#include <string>
#include <vector>

namespace td {

/// Equation of state with a density jump at p_jump (pressure continuous):
/// interior (p >= p_jump): rho = -p + epsilon; exterior: rho = 3p.
/// Geometric units G = c = 1 throughout.
struct EOSSpec {
    double p_jump = 1.0;
    double epsilon = 0.1;
    double p_surface = 1e-8;
    bool jump_enabled = true;  // disabled: rho = 3p at every pressure

    void validate() const;
    double rho(double p, bool interior) const;
    bool interior_at(double p) const { return jump_enabled && p >= p_jump; }
};

struct TovDerivatives {
    double dm_dr = 0.0;
    double dnu_dr = 0.0;
    double dp_dr = 0.0;
};

/// Standard TOV right-hand sides; the EOS branch is selected by the
/// p >= p_jump test. 2m >= r raises a horizon-formation error.
TovDerivatives tov_rhs(double r, double m, double nu, double p,
                       const EOSSpec& eos);

struct TOVOptions {
    double p_center = 2.0;
    double rel_tol = 1e-10;
    double r0_factor = 1e-6;       // series start at r0_factor * p_jump^(-1/2)
    double exterior_extent = 10.0; // integrate vacuum out to extent * R
    long max_steps = 4000000;
    int record_stride = 1;         // keep every n-th accepted step
};

struct TOVSolution {
    // profiles (star region followed by the vacuum extension)
    std::vector<double> r, m, nu, p, rho;
    std::size_t surface_index = 0;  // first vacuum sample

    double R_surface = 0.0;
    double M_total = 0.0;
    double r_jump = 0.0;   // 0 when the jump was never reached
    bool jumped = false;

    double min_compactness = 0.0;  // min over the grid of 1 - 2m/r
    double min_compactness_r = 0.0;
    double nu_center = 0.0;        // minimum of the normalized nu
    double pressure_continuity_gap = 0.0;  // |p(land) - p_jump|
    double density_jump = 0.0;             // rho_out - rho_in at the jump
    double exterior_max_rel_dev = 0.0;     // vs closed-form Schwarzschild

    /// true when every sample has finite nu (g00 = e^{2 nu} > 0) and
    /// positive compactness
    bool horizonless = false;
};

/// Integrates from a small-r series start to p = p_surface with adaptive
/// embedded RK, locating the EOS switch and the surface by bisection, then
/// normalizes nu to the Schwarzschild surface value and extends through the
/// vacuum for the exterior comparison.
///
/// Interior runs with p + rho = epsilon traverse (p_center - p_jump)/epsilon
/// e-folds of nu and radius; configurations whose traverse cannot be
/// represented in double precision are refused up front with a diagnostic.
TOVSolution integrate_star(const EOSSpec& eos, const TOVOptions& opts);

struct MetricSample {
    double r = 0.0;
    double g00 = 0.0;      // e^{2 nu} > 0
    double sqrt_g4 = 0.0;  // 4-volume density e^{nu} (1-2m/r)^{-1/2} r^2 sin(theta)
};

/// Random samples of the solved metric, restricted to radii where g00^-2
/// stays representable.
std::vector<MetricSample> sample_metric(const TOVSolution& sol, int count,
                                        std::uint64_t seed);

/// Max relative deviation of the density sqrt(g4) * g00^-2 under the
/// pointwise substitution g -> lambda^2 g. Analytically zero.
double weyl_invariance_check(const std::vector<MetricSample>& samples,
                             const std::vector<double>& lambda);

/// Same scaling applied to an Einstein-Hilbert-like density
/// sqrt(g4) * (curvature proxy); NOT Weyl invariant, deviation ~ |lambda^2-1|.
double weyl_control_check(const std::vector<MetricSample>& samples,
                          const std::vector<double>& lambda);

struct SweepRow {
    double p_center = 0.0;
    double epsilon = 0.0;
    bool ok = false;
    std::string error;
    double M = 0.0, R = 0.0, min_compactness = 0.0, r_jump = 0.0;
};

/// Cross product of center pressures and EOS variants; failures are
/// recorded per row and do not stop the sweep.
std::vector<SweepRow> sweep(const std::vector<double>& p_centers,
                            const std::vector<EOSSpec>& eos_list,
                            const TOVOptions& base, int threads = 1);

}  // namespace td
