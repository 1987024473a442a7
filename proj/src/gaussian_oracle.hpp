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

#include <Eigen/Dense>
#include <complex>

namespace td {

/// Exact canonical-ensemble moments for the single-dof harmonic family
///   H = 1/2 Tr p^2 + omega^2/2 Tr q^2
/// with weight exp(-tau TrH - Tr(lambda_tilde C~)), C~ = [q, p].
///
/// Deliberately self-contained: it builds the exponent's quadratic form on
/// its own real chart from raw complex arrays (no matrix/polynomial types
/// shared with the sampler), inverts it for the covariance, and contracts
/// the bilinear observables against it. Serves as the independent route the
/// Metropolis results are compared with.
struct GaussianMoments {
    double mean_trH = 0.0;
    Eigen::MatrixXcd avgC;
};

GaussianMoments gaussian_harmonic_moments(int dim, double tau, double omega,
                                          const Eigen::MatrixXcd& lambda_tilde);

}  // namespace td
