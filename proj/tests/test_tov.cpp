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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "fixtures.hpp"
#include "rng.hpp"
#include "tov.hpp"

using namespace td;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("tov_rhs in vacuum reduces to the Schwarzschild derivative") {
    EOSSpec eos = fixtures::reference_eos();
    double r = 3.0, m = 0.4;
    TovDerivatives d = tov_rhs(r, m, 0.0, 0.0, eos);
    CHECK(d.dm_dr == 0.0);
    CHECK(d.dp_dr == 0.0);
    CHECK(d.dnu_dr == doctest::Approx(m / (r * (r - 2 * m))).epsilon(1e-14));
}

TEST_CASE("tov_rhs selects the interior branch: rho + p = epsilon") {
    EOSSpec eos;
    eos.p_jump = 1.0;
    eos.epsilon = 1e-3;
    eos.p_surface = 1e-8;
    double p = 2.0;  // 2 p_jump
    CHECK(eos.interior_at(p));
    CHECK(eos.rho(p, true) + p == doctest::Approx(eos.epsilon).epsilon(1e-12));

    // the near-cancellation shows up in dp/dr's first factor
    double r = 0.1, m = -1e-3;
    TovDerivatives d = tov_rhs(r, m, 0.0, p, eos);
    double dnu = (m + 4 * kPi * r * r * r * p) / (r * (r - 2 * m));
    CHECK(d.dp_dr == doctest::Approx(-eos.epsilon * dnu).epsilon(1e-12));
}

TEST_CASE("tov_rhs selects the exterior branch: rho = 3p") {
    EOSSpec eos = fixtures::reference_eos();
    double p = 0.5 * eos.p_jump;
    CHECK_FALSE(eos.interior_at(p));
    double r = 1.0, m = 0.1;
    TovDerivatives d = tov_rhs(r, m, 0.0, p, eos);
    CHECK(d.dm_dr == doctest::Approx(4 * kPi * r * r * 3.0 * p).epsilon(1e-14));
}

TEST_CASE("tov_rhs raises the horizon-formation error at 2m >= r") {
    EOSSpec eos = fixtures::reference_eos();
    CHECK_THROWS_AS(tov_rhs(1.0, 0.6, 0.0, 0.5, eos), Error);
    CHECK_THROWS_AS(tov_rhs(1.0, 0.5, 0.0, 0.5, eos), Error);
}

TEST_CASE("no jump reached: identical to the jump-disabled solver") {
    EOSSpec eos = fixtures::reference_eos();
    TOVOptions opts = fixtures::reference_tov_options();
    opts.p_center = 0.5;  // below p_jump: a plain relativistic star
    TOVSolution a = integrate_star(eos, opts);
    CHECK_FALSE(a.jumped);

    EOSSpec nojump = eos;
    nojump.jump_enabled = false;
    TOVSolution b = integrate_star(nojump, opts);
    CHECK(a.R_surface == b.R_surface);
    CHECK(a.M_total == b.M_total);
    REQUIRE(a.r.size() == b.r.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.r.size(); ++i)
        worst = std::max(worst, std::abs(a.p[i] - b.p[i]));
    CHECK(worst == 0.0);

    // and it is a perfectly ordinary star
    CHECK(a.M_total > 0.0);
    CHECK(a.min_compactness > 0.0);
    CHECK(a.min_compactness < 1.0);

    // m is non-decreasing wherever rho > 0 (with strictly falling pressure)
    for (std::size_t i = 1; i < a.surface_index; ++i) {
        if (a.rho[i] > 0.0 && a.rho[i - 1] > 0.0)
            CHECK(a.m[i] >= a.m[i - 1]);
        CHECK(a.p[i] < a.p[i - 1]);
    }
}

TEST_CASE("gravastar reference run: horizonless with Schwarzschild exterior") {
    EOSSpec eos = fixtures::reference_eos();
    TOVOptions opts = fixtures::reference_tov_options();
    TOVSolution sol = integrate_star(eos, opts);

    CHECK(sol.jumped);
    CHECK(sol.horizonless);
    CHECK(sol.min_compactness > 0.0);
    for (double nu : sol.nu) CHECK(std::isfinite(nu));  // g00 = e^{2nu} > 0
    CHECK(sol.exterior_max_rel_dev <= 1e-6);

    // pressure continuous at the jump; density jumps by 4 p_jump - epsilon
    CHECK(sol.pressure_continuity_gap <= 1e-10 * eos.p_jump);
    CHECK(std::abs(sol.density_jump - (4.0 * eos.p_jump - eos.epsilon)) <=
          1e-6 * eos.p_jump);

    // dp/dnu = -epsilon exactly inside and -4p in the shell, so the total
    // nu climb is (p_center - p_jump)/epsilon + ln(p_jump/p_surface)/4
    double expected_span = (opts.p_center - eos.p_jump) / eos.epsilon +
                           std::log(eos.p_jump / eos.p_surface) / 4.0;
    double span = sol.nu[sol.surface_index - 1] - sol.nu_center;
    CHECK(span == doctest::Approx(expected_span).epsilon(1e-6));

    // profile invariants
    for (std::size_t i = 1; i < sol.surface_index; ++i)
        CHECK(sol.p[i] <= sol.p[i - 1] * (1 + 1e-12));
}

TEST_CASE("M_total stable under tolerance halving") {
    EOSSpec eos = fixtures::reference_eos();
    TOVOptions opts = fixtures::reference_tov_options();
    TOVSolution a = integrate_star(eos, opts);
    TOVOptions tight = opts;
    tight.rel_tol = opts.rel_tol / 2;
    TOVSolution b = integrate_star(eos, tight);
    CHECK(std::abs(b.M_total - a.M_total) / std::abs(a.M_total) < 1e-8);
}

TEST_CASE("unrepresentable interior traverse is refused up front") {
    EOSSpec eos = fixtures::reference_eos();
    eos.epsilon = 0.01;
    TOVOptions opts = fixtures::reference_tov_options();
    opts.p_center = 1000.0;
    try {
        integrate_star(eos, opts);
        FAIL("expected a numerical refusal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Numerical);
        CHECK(std::string(e.what()).find("e-folds") != std::string::npos);
    }
}

TEST_CASE("EOS validation") {
    EOSSpec eos = fixtures::reference_eos();
    eos.p_surface = 2.0;  // above p_jump
    CHECK_THROWS_AS(eos.validate(), Error);
    eos = fixtures::reference_eos();
    eos.epsilon = 0.5;  // not small against p_jump
    CHECK_THROWS_AS(eos.validate(), Error);
    eos = fixtures::reference_eos();
    eos.epsilon = -0.1;
    CHECK_THROWS_AS(eos.validate(), Error);
}

TEST_CASE("Weyl scaling: exact identity, random scalings, and the control") {
    EOSSpec eos = fixtures::reference_eos();
    TOVOptions opts = fixtures::reference_tov_options();
    opts.record_stride = 4;
    TOVSolution sol = integrate_star(eos, opts);

    auto samples = sample_metric(sol, 10000, 2027);
    for (const auto& s : samples) CHECK(s.g00 > 0.0);

    std::vector<double> ones(samples.size(), 1.0);
    CHECK(weyl_invariance_check(samples, ones) == 0.0);

    Rng rng(404);
    std::vector<double> lam;
    for (std::size_t i = 0; i < samples.size(); ++i)
        lam.push_back(rng.uniform(0.5, 2.0));
    CHECK(weyl_invariance_check(samples, lam) <= 1e-12);
    CHECK(weyl_control_check(samples, lam) > 1e-3);

    std::vector<double> bad = lam;
    bad[0] = -1.0;
    CHECK_THROWS_AS(weyl_invariance_check(samples, bad), Error);
}

TEST_CASE("sweep: single point equals a single run; failures isolated") {
    EOSSpec eos = fixtures::reference_eos();
    TOVOptions opts = fixtures::reference_tov_options();

    auto rows = sweep({2.0}, {eos}, opts, 1);
    REQUIRE(rows.size() == 1);
    TOVSolution direct = integrate_star(eos, opts);
    CHECK(rows[0].ok);
    CHECK(rows[0].M == direct.M_total);
    CHECK(rows[0].R == direct.R_surface);

    // a grid with one unrepresentable point: that row is flagged, the
    // others carry results
    auto grid = sweep({0.5, 2.0, 300.0}, {eos}, opts, 2);
    REQUIRE(grid.size() == 3);
    CHECK(grid[0].ok);
    CHECK(grid[1].ok);
    CHECK_FALSE(grid[2].ok);
    CHECK(!grid[2].error.empty());
    CHECK(grid[1].M == direct.M_total);
}

TEST_CASE("sweep records min compactness for increasing p_center") {
    EOSSpec eos = fixtures::reference_eos();
    TOVOptions opts = fixtures::reference_tov_options();
    opts.record_stride = 4;
    auto rows = sweep({1.5, 2.0, 3.0}, {eos}, opts, 2);
    for (const auto& row : rows) {
        CHECK(row.ok);
        CHECK(row.min_compactness > 0.0);
        CHECK(row.r_jump > 0.0);
    }
    // the probe records values; the jump radius grows monotonically in
    // p_center (exp of the interior traverse)
    CHECK(rows[0].r_jump < rows[1].r_jump);
    CHECK(rows[1].r_jump < rows[2].r_jump);
}
