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
#include "tov.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "errors.hpp"
#include "rng.hpp"

namespace td {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMaxLogSpan = 600.0;  // e-fold guard for double range

struct Y {
    double m, nu, p;
};

Y rhs(double r, const Y& y, const EOSSpec& eos, bool interior) {
    if (r <= 0) throw_numerical("TOV right-hand side needs r > 0");
    if (r - 2.0 * y.m <= 0.0)
        throw_numerical("horizon formed: 2m >= r at r = " + std::to_string(r) +
                        ", m = " + std::to_string(y.m));
    double rho = eos.rho(y.p, interior);
    double denom = r * (r - 2.0 * y.m);
    double dnu = (y.m + 4.0 * kPi * r * r * r * y.p) / denom;
    return Y{4.0 * kPi * r * r * rho, dnu, -(rho + y.p) * dnu};
}

// Cash-Karp embedded RK45 pair.
const double kA[6][5] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {3.0 / 10, -9.0 / 10, 6.0 / 5},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
const double kC[6] = {0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
const double kB5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
const double kB4[6] = {2825.0 / 27648, 0,           18575.0 / 48384,
                       13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

struct StepResult {
    Y y;
    double err;  // scaled error estimate
};

StepResult rk45(double r, const Y& y, double h, const EOSSpec& eos,
                bool interior) {
    Y k[6];
    for (int i = 0; i < 6; ++i) {
        Y yy = y;
        for (int l = 0; l < i; ++l) {
            yy.m += h * kA[i][l] * k[l].m;
            yy.nu += h * kA[i][l] * k[l].nu;
            yy.p += h * kA[i][l] * k[l].p;
        }
        k[i] = rhs(r + kC[i] * h, yy, eos, interior);
    }
    Y y5 = y, y4 = y;
    for (int i = 0; i < 6; ++i) {
        y5.m += h * kB5[i] * k[i].m;
        y5.nu += h * kB5[i] * k[i].nu;
        y5.p += h * kB5[i] * k[i].p;
        y4.m += h * kB4[i] * k[i].m;
        y4.nu += h * kB4[i] * k[i].nu;
        y4.p += h * kB4[i] * k[i].p;
    }
    auto scaled = [](double a, double b, double floor_) {
        return std::abs(a - b) / (std::abs(a) + std::abs(b) + floor_);
    };
    double err = std::max({scaled(y5.m, y4.m, 1e-30),
                           scaled(y5.nu, y4.nu, 1e-8),
                           scaled(y5.p, y4.p, 1e-300)});
    return StepResult{y5, err};
}

}  // namespace

void EOSSpec::validate() const {
    if (!(p_jump > 0)) throw_config("p_jump must be positive");
    if (!(p_surface > 0) || !(p_surface < p_jump))
        throw_config("need 0 < p_surface < p_jump");
    if (!(epsilon > 0)) throw_config("epsilon must be positive");
    if (epsilon >= 0.25 * p_jump)
        throw_config("epsilon must be small against p_jump (got epsilon = " +
                     std::to_string(epsilon) + ", p_jump = " +
                     std::to_string(p_jump) + ")");
}

double EOSSpec::rho(double p, bool interior) const {
    return interior ? (-p + epsilon) : 3.0 * p;
}

TovDerivatives tov_rhs(double r, double m, double nu, double p,
                       const EOSSpec& eos) {
    (void)nu;
    Y d = rhs(r, Y{m, nu, p}, eos, eos.interior_at(p));
    return TovDerivatives{d.m, d.nu, d.p};
}

TOVSolution integrate_star(const EOSSpec& eos, const TOVOptions& opts) {
    eos.validate();
    if (!(opts.p_center > 0)) throw_config("p_center must be positive");
    if (!(opts.p_center > eos.p_surface))
        throw_config("p_center must exceed p_surface");
    if (!(opts.rel_tol > 0) || opts.rel_tol > 1e-4)
        throw_config("rel_tol must be in (0, 1e-4]");
    if (opts.exterior_extent < 1.0)
        throw_config("exterior_extent must be >= 1");

    const double r_scale = 1.0 / std::sqrt(eos.p_jump);
    const double r0 = opts.r0_factor * r_scale;

    // Feasibility of the traverse in double precision. The interior obeys
    // dp/dnu = -epsilon and dnu/dln r <= ~1, so the jump sits
    // (p_center - p_jump)/epsilon e-folds of radius out; the exterior adds
    // ln(p_jump/p_surface)/4 (rho+p = 4p there).
    double efolds = std::log(1.0 / r0) + std::log(opts.exterior_extent);
    if (eos.interior_at(opts.p_center))
        efolds += (opts.p_center - eos.p_jump) / eos.epsilon +
                  std::log(eos.p_jump / eos.p_surface) / 4.0;
    else
        efolds += std::log(opts.p_center / eos.p_surface) / 4.0;
    if (efolds > kMaxLogSpan)
        throw_numerical(
            "configuration not representable in double precision: the "
            "interior traverse needs about " + std::to_string(efolds) +
            " radial e-folds (dp/dnu = -epsilon forces "
            "(p_center - p_jump)/epsilon nu e-folds, here " +
            std::to_string((opts.p_center - eos.p_jump) / eos.epsilon) +
            "), but IEEE doubles span only ~709; reduce "
            "(p_center - p_jump)/epsilon");

    bool interior = eos.interior_at(opts.p_center);
    double rho_c = eos.rho(opts.p_center, interior);

    TOVSolution sol;
    double r = r0;
    // small-r series: m = (4 pi/3) rho_c r^3, p with its leading correction
    Y y{4.0 * kPi / 3.0 * rho_c * r0 * r0 * r0, 0.0,
        opts.p_center - 2.0 * kPi / 3.0 * (rho_c + opts.p_center) *
                            (rho_c + 3.0 * opts.p_center) * r0 * r0};
    double h = r0 * 1e-3;

    long nstep = 0;
    long recorded_since = 0;
    auto record = [&](double rr, const Y& yy, bool force) {
        if (!force && ++recorded_since < opts.record_stride) return;
        recorded_since = 0;
        sol.r.push_back(rr);
        sol.m.push_back(yy.m);
        sol.nu.push_back(yy.nu);
        sol.p.push_back(yy.p);
        sol.rho.push_back(eos.rho(yy.p, interior));
    };
    record(r, y, true);

    // land exactly on p = target by bisecting the step size
    auto bisect_to = [&](double target) {
        double lo = 0.0, hi = h;
        for (int it = 0; it < 200 && (hi - lo) > 1e-16 * h; ++it) {
            double mid = 0.5 * (lo + hi);
            StepResult s = rk45(r, y, mid, eos, interior);
            (s.y.p < target ? hi : lo) = mid;
        }
        StepResult s = rk45(r, y, lo, eos, interior);
        y = s.y;
        r += lo;
    };

    while (true) {
        if (++nstep > opts.max_steps)
            throw_numerical("step limit exceeded (r = " + std::to_string(r) +
                            ", p = " + std::to_string(y.p) + ")");
        if (!(std::isfinite(y.m) && std::isfinite(y.nu) && std::isfinite(y.p)))
            throw_numerical("state overflowed at r = " + std::to_string(r));
        if (h < r * 1e-15)
            throw_numerical("step underflow at r = " + std::to_string(r));

        double target = interior ? eos.p_jump : eos.p_surface;
        StepResult s = rk45(r, y, h, eos, interior);
        if (s.err > opts.rel_tol) {
            h *= std::max(0.2, 0.9 * std::pow(opts.rel_tol / s.err, 0.25));
            continue;
        }
        if (s.y.p < target) {
            bisect_to(target);
            if (interior) {
                sol.jumped = true;
                sol.r_jump = r;
                sol.pressure_continuity_gap = std::abs(y.p - eos.p_jump);
                double rho_in = eos.rho(y.p, true);
                record(r, y, true);
                interior = false;
                sol.density_jump = eos.rho(y.p, false) - rho_in;
                record(r, y, true);
                continue;
            }
            record(r, y, true);
            break;  // surface reached
        }
        r += h;
        y = s.y;
        record(r, y, false);
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(opts.rel_tol /
                                                         (s.err + 1e-300), 0.2)));
    }

    sol.R_surface = r;
    sol.M_total = y.m;
    sol.surface_index = sol.r.size();
    if (sol.R_surface - 2.0 * sol.M_total <= 0.0)
        throw_numerical("horizon at the surface: 2M >= R");

    // normalize nu so that e^{2 nu(R)} = 1 - 2M/R
    double shift = 0.5 * std::log(1.0 - 2.0 * sol.M_total / sol.R_surface) - y.nu;
    for (auto& nu : sol.nu) nu += shift;
    y.nu += shift;

    // vacuum extension for the exterior Schwarzschild comparison
    const double M = sol.M_total;
    const double r_stop = opts.exterior_extent * sol.R_surface;
    EOSSpec vac = eos;  // p = 0 -> rho = 0 on the exterior branch
    h = sol.R_surface * 1e-4;
    y.p = 0.0;
    while (r < r_stop) {
        double hh = std::min(h, r_stop - r);
        StepResult s = rk45(r, y, hh, vac, false);
        if (s.err > opts.rel_tol) {
            h *= std::max(0.2, 0.9 * std::pow(opts.rel_tol / s.err, 0.25));
            continue;
        }
        r += hh;
        y = s.y;
        sol.r.push_back(r);
        sol.m.push_back(y.m);
        sol.nu.push_back(y.nu);
        sol.p.push_back(0.0);
        sol.rho.push_back(0.0);
        double schw = 1.0 - 2.0 * M / r;
        double dev = std::abs(std::exp(2.0 * y.nu) - schw) / schw;
        sol.exterior_max_rel_dev = std::max(sol.exterior_max_rel_dev, dev);
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(opts.rel_tol /
                                                         (s.err + 1e-300), 0.2)));
    }

    sol.min_compactness = 1e300;
    sol.nu_center = sol.nu.empty() ? 0.0 : sol.nu.front();
    bool all_nu_finite = true;
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
        double c = 1.0 - 2.0 * sol.m[i] / sol.r[i];
        if (c < sol.min_compactness) {
            sol.min_compactness = c;
            sol.min_compactness_r = sol.r[i];
        }
        sol.nu_center = std::min(sol.nu_center, sol.nu[i]);
        all_nu_finite = all_nu_finite && std::isfinite(sol.nu[i]);
    }
    sol.horizonless = all_nu_finite && sol.min_compactness > 0.0;
    return sol;
}

// ---------------------------------------------------------------------------
// Weyl scaling

std::vector<MetricSample> sample_metric(const TOVSolution& sol, int count,
                                        std::uint64_t seed) {
    if (sol.r.empty()) throw_config("empty solution");
    Rng rng(seed);
    std::vector<MetricSample> out;
    out.reserve(static_cast<std::size_t>(count));
    const std::size_t n = sol.r.size();
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 100 * count)
            throw_numerical("could not draw representable metric samples");
        std::size_t i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
        if (i >= n) i = n - 1;
        double nu = sol.nu[i];
        // g00^-2 = e^{-4 nu} and sqrt(g4) must stay in double range
        if (std::abs(4.0 * nu) > 600.0) continue;
        double comp = 1.0 - 2.0 * sol.m[i] / sol.r[i];
        if (!(comp > 0.0)) throw_invariant("non-positive compactness sample");
        double theta = rng.uniform(0.1, kPi - 0.1);
        MetricSample ms;
        ms.r = sol.r[i];
        ms.g00 = std::exp(2.0 * nu);
        ms.sqrt_g4 = std::exp(nu) / std::sqrt(comp) * sol.r[i] * sol.r[i] *
                     std::sin(theta);
        if (!(ms.g00 > 0.0) || !std::isfinite(ms.sqrt_g4)) continue;
        out.push_back(ms);
    }
    return out;
}

double weyl_invariance_check(const std::vector<MetricSample>& samples,
                             const std::vector<double>& lambda) {
    if (samples.size() != lambda.size())
        throw_config("sample/lambda size mismatch");
    double max_dev = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const MetricSample& s = samples[i];
        if (!(s.g00 > 0.0)) throw_config("non-positive g00 sample");
        if (!(lambda[i] > 0.0)) throw_config("non-positive lambda sample");
        double l2 = lambda[i] * lambda[i];
        double before = s.sqrt_g4 / (s.g00 * s.g00);
        double scaled_sqrt_g4 = l2 * l2 * s.sqrt_g4;
        double scaled_g00 = l2 * s.g00;
        double after = scaled_sqrt_g4 / (scaled_g00 * scaled_g00);
        max_dev = std::max(max_dev, std::abs(after - before) / std::abs(before));
    }
    return max_dev;
}

double weyl_control_check(const std::vector<MetricSample>& samples,
                          const std::vector<double>& lambda) {
    if (samples.size() != lambda.size())
        throw_config("sample/lambda size mismatch");
    double max_dev = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const MetricSample& s = samples[i];
        if (!(lambda[i] > 0.0)) throw_config("non-positive lambda sample");
        double l2 = lambda[i] * lambda[i];
        double curvature_proxy = 1.0;  // transforms as lambda^-2 R
        double before = s.sqrt_g4 * curvature_proxy;
        double after = (l2 * l2 * s.sqrt_g4) * (curvature_proxy / l2);
        max_dev = std::max(max_dev, std::abs(after - before) / std::abs(before));
    }
    return max_dev;
}

// ---------------------------------------------------------------------------
// Sweep

std::vector<SweepRow> sweep(const std::vector<double>& p_centers,
                            const std::vector<EOSSpec>& eos_list,
                            const TOVOptions& base, int threads) {
    if (p_centers.empty() || eos_list.empty())
        throw_config("sweep needs nonempty grids");
    std::vector<SweepRow> rows(p_centers.size() * eos_list.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= rows.size()) return;
            std::size_t ip = k / eos_list.size();
            std::size_t ie = k % eos_list.size();
            SweepRow& row = rows[k];
            row.p_center = p_centers[ip];
            row.epsilon = eos_list[ie].epsilon;
            try {
                TOVOptions opts = base;
                opts.p_center = p_centers[ip];
                TOVSolution sol = integrate_star(eos_list[ie], opts);
                row.ok = true;
                row.M = sol.M_total;
                row.R = sol.R_surface;
                row.min_compactness = sol.min_compactness;
                row.r_jump = sol.r_jump;
            } catch (const Error& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    };
    int workers = std::max(1, std::min<int>(threads, static_cast<int>(rows.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return rows;
}

}  // namespace td
