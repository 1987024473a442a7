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

#include "dynamics.hpp"
#include "tov.hpp"

namespace td::fixtures {

/// H = 1/2 Tr(p1^2) + omega^2/2 Tr(q1^2)
ModelSpec harmonic(int dim, double omega = 1.0);

/// Two uncoupled harmonic dofs (16 real phase-space dimensions at N = 2).
ModelSpec harmonic_2dof(int dim, double omega = 1.0);

/// H = 1/2 Tr(p1^2) + g Tr(q1^4)
ModelSpec quartic(int dim, double g);

/// H = 1/2 Tr(p1^2) + 1/2 Tr(p2^2) + g Tr(q1 q2 q1 q2)
ModelSpec coupled_quartic(int dim, double g);

/// H = Tr(q1 K p1) with a fixed external Hermitian K: not unitary invariant.
ModelSpec external_coupling(int dim, std::uint64_t k_seed);

/// L = 1/2 Tr(q1dot^2) - g Tr(q1^4)
ModelSpec quartic_from_lagrangian(int dim, double g);

/// Two dofs with a cross kinetic term (non-diagonal kinetic form):
/// L = 1/2 Tr(q1dot^2) + 1/2 Tr(q2dot^2) + 1/4 Tr(q1dot*q2dot)
///     - 1/2 Tr(q1^2) - 1/2 Tr(q2^2) - g Tr(q1^4)
ModelSpec coupled_kinetic_lagrangian(int dim, double g);

/// Random Hermitian phase-space state, Frobenius-normalized per matrix.
PhaseSpaceState random_state(const ModelSpec& model, std::uint64_t seed,
                             double scale = 1.0, bool normalize = false);

/// The five derivative-check polynomials (harmonic, quartic, coupled,
/// degree-6 word, mixed qp word) with their symbol tables.
std::vector<TracePolynomial> derivative_fixtures();

/// Reference gravastar parameters that stay inside double range:
/// p_jump = 1, epsilon = 0.1, p_surface = 1e-8, p_center = 2.
EOSSpec reference_eos();
TOVOptions reference_tov_options();

}  // namespace td::fixtures
