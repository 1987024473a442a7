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
#include "gaussian_oracle.hpp"

#include <functional>
#include <vector>

#include "errors.hpp"

namespace td {

namespace {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Own chart: q diag (n), q upper (re,im pairs), then p likewise.
int chart_dim(int n) { return 2 * n * n; }

CMat build(const std::vector<double>& x, int n, bool momentum) {
    CMat m(n, n);
    int base = momentum ? n * n : 0;
    int k = base;
    for (int i = 0; i < n; ++i) m(i, i) = Cx(x[static_cast<std::size_t>(k++)], 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double re = x[static_cast<std::size_t>(k++)];
            double im = x[static_cast<std::size_t>(k++)];
            m(i, j) = Cx(re, im);
            m(j, i) = Cx(re, -im);
        }
    return m;
}

double tr_h(const std::vector<double>& x, int n, double tau, double omega) {
    CMat q = build(x, n, false);
    CMat p = build(x, n, true);
    double trp2 = (p * p).trace().real();
    double trq2 = (q * q).trace().real();
    (void)tau;
    return 0.5 * trp2 + 0.5 * omega * omega * trq2;
}

Cx ctilde_entry(const std::vector<double>& x, int n, int row, int col) {
    CMat q = build(x, n, false);
    CMat p = build(x, n, true);
    Cx v(0.0);
    for (int k = 0; k < n; ++k)
        v += q(row, k) * p(k, col) - p(row, k) * q(k, col);
    return v;
}

// Exact Hessian of a purely quadratic f with f(0) = 0 and no linear part.
Eigen::MatrixXd hessian(const std::function<double(const std::vector<double>&)>& f,
                        int d) {
    Eigen::MatrixXd h(d, d);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    std::vector<double> fi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        x[static_cast<std::size_t>(i)] = 1.0;
        fi[static_cast<std::size_t>(i)] = f(x);
        x[static_cast<std::size_t>(i)] = 0.0;
        h(i, i) = 2.0 * fi[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            x[static_cast<std::size_t>(i)] = 1.0;
            x[static_cast<std::size_t>(j)] = 1.0;
            double fij = f(x);
            x[static_cast<std::size_t>(i)] = 0.0;
            x[static_cast<std::size_t>(j)] = 0.0;
            h(i, j) = h(j, i) =
                fij - fi[static_cast<std::size_t>(i)] - fi[static_cast<std::size_t>(j)];
        }
    return h;
}

}  // namespace

GaussianMoments gaussian_harmonic_moments(int dim, double tau, double omega,
                                          const Eigen::MatrixXcd& lambda_tilde) {
    const int d = chart_dim(dim);
    auto exponent = [&](const std::vector<double>& x) {
        double e = tau * tr_h(x, dim, tau, omega);
        Cx src(0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                src += lambda_tilde(i, j) * ctilde_entry(x, dim, j, i);
        if (std::abs(src.imag()) > 1e-9 * (1.0 + std::abs(src.real())))
            throw_numerical("oracle exponent is not real");
        return e + src.real();
    };

    Eigen::MatrixXd a = hessian(exponent, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.eigenvalues().minCoeff() <= 0)
        throw_numerical("oracle: exponent quadratic form is not positive "
                        "definite");
    Eigen::MatrixXd cov = a.inverse();

    GaussianMoments out;
    Eigen::MatrixXd bh =
        hessian([&](const std::vector<double>& x) {
            return tr_h(x, dim, tau, omega);
        }, d);
    out.mean_trH = 0.5 * (bh * cov).trace();

    out.avgC = CMat::Zero(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            Eigen::MatrixXd hre = hessian(
                [&](const std::vector<double>& x) {
                    return ctilde_entry(x, dim, r, c).real();
                }, d);
            Eigen::MatrixXd him = hessian(
                [&](const std::vector<double>& x) {
                    return ctilde_entry(x, dim, r, c).imag();
                }, d);
            out.avgC(r, c) = Cx(0.5 * (hre * cov).trace(),
                                0.5 * (him * cov).trace());
        }
    return out;
}

}  // namespace td
