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

#include <bit>
#include <cmath>

#include "errors.hpp"
#include "grassmann.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using td::Complex;
using td::GrassmannElement;
using td::Parity;

namespace {

GrassmannElement theta(int i, int g) {
    return GrassmannElement::generator(i, g);
}

// random sparse element mirrored into the dense oracle representation
std::pair<GrassmannElement, oracle::Dense> random_pair(td::Rng& rng, int g,
                                                       int terms) {
    std::vector<std::pair<std::uint16_t, Complex>> ts;
    oracle::Dense dense(g);
    for (int k = 0; k < terms; ++k) {
        auto mask = static_cast<std::uint16_t>(rng.next_u64() & ((1u << g) - 1));
        Complex c(rng.normal(), rng.normal());
        ts.emplace_back(mask, c);
        dense.c[mask] += c;
    }
    return {GrassmannElement::from_terms(g, std::move(ts)), dense};
}

oracle::Dense to_dense(const GrassmannElement& e, int g) {
    oracle::Dense d(g);
    for (const auto& [mask, c] : e.terms()) d.c[mask] += c;
    return d;
}

double dense_distance(const GrassmannElement& e, const oracle::Dense& d) {
    oracle::Dense diff = to_dense(e, d.g);
    for (std::size_t i = 0; i < diff.c.size(); ++i) diff.c[i] -= d.c[i];
    return oracle::norm(diff);
}

}  // namespace

TEST_CASE("generator nilpotency") {
    auto t1 = theta(0, 2);
    CHECK((t1 * t1).is_zero());
}

TEST_CASE("generator anticommutation") {
    auto t1 = theta(0, 3);
    auto t2 = theta(1, 3);
    CHECK(((t1 * t2) + (t2 * t1)).is_zero());
}

TEST_CASE("(1 + t1 t2)^2 = 1 + 2 t1 t2, cross-checked against the dense oracle") {
    int g = 4;
    GrassmannElement one = GrassmannElement::scalar(1.0, g);
    GrassmannElement x = one + theta(0, g) * theta(1, g);
    GrassmannElement sq = x * x;

    GrassmannElement expected =
        one + theta(0, g) * theta(1, g) * Complex(2.0);
    CHECK(sq.approx_equal(expected, 1e-14));

    oracle::Dense dx = to_dense(x, g);
    CHECK(dense_distance(sq, oracle::mul(dx, dx)) == doctest::Approx(0.0));
}

TEST_CASE("adjoint examples") {
    int g = 2;
    GrassmannElement i_scalar = GrassmannElement::scalar(Complex(0, 1), g);
    CHECK(i_scalar.adjoint().approx_equal(
        GrassmannElement::scalar(Complex(0, -1), g), 1e-15));

    GrassmannElement t12 = theta(0, g) * theta(1, g);
    CHECK(t12.adjoint().approx_equal(-t12, 1e-15));

    GrassmannElement a = theta(0, g) * Complex(2.0, 3.0);
    CHECK(a.adjoint().approx_equal(theta(0, g) * Complex(2.0, -3.0), 1e-15));
}

TEST_CASE("parity tags") {
    int g = 4;
    GrassmannElement one = GrassmannElement::scalar(1.0, g);
    CHECK((one + theta(0, g) * theta(1, g)).parity() == Parity::Even);
    CHECK(theta(2, g).parity() == Parity::Odd);
    CHECK((one + theta(0, g)).parity() == Parity::Mixed);
    CHECK(GrassmannElement(g).parity() == Parity::Even);  // zero element
}

TEST_CASE("products against the dense basis-expansion oracle, G <= 6") {
    td::Rng rng(123);
    for (int trial = 0; trial < 300; ++trial) {
        int g = 1 + static_cast<int>(rng.next_u64() % 6);
        auto [a, da] = random_pair(rng, g, 4);
        auto [b, db] = random_pair(rng, g, 4);
        CHECK(dense_distance(a * b, oracle::mul(da, db)) < 1e-12);
    }
}

TEST_CASE("graded sign on generator-disjoint homogeneous monomials") {
    td::Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        int g = 6;
        auto mask_a = static_cast<std::uint16_t>(rng.next_u64() & 0x07);
        auto mask_b = static_cast<std::uint16_t>((rng.next_u64() & 0x07) << 3);
        GrassmannElement a =
            GrassmannElement::from_terms(g, {{mask_a, Complex(1.0)}});
        GrassmannElement b =
            GrassmannElement::from_terms(g, {{mask_b, Complex(1.0)}});
        int pa = std::popcount(static_cast<unsigned>(mask_a));
        int pb = std::popcount(static_cast<unsigned>(mask_b));
        double sign = (pa % 2 == 1 && pb % 2 == 1) ? -1.0 : 1.0;
        CHECK((a * b - b * a * Complex(sign)).norm() < 1e-15);
    }
}

TEST_CASE("adjoint anti-homomorphism over 1000 random elements") {
    td::Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        int g = 1 + static_cast<int>(rng.next_u64() % 6);
        auto [a, da] = random_pair(rng, g, 3);
        auto [b, db] = random_pair(rng, g, 3);
        worst = std::max(worst,
                         ((a * b).adjoint() - b.adjoint() * a.adjoint()).norm());
        // involution, and agreement with the dense-reversal oracle
        worst = std::max(worst, (a.adjoint().adjoint() - a).norm());
        worst = std::max(worst, dense_distance(a.adjoint(), oracle::adjoint(da)));
        (void)db;
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("truncation: any product of G+1 odd elements vanishes") {
    td::Rng rng(5);
    for (int g = 2; g <= 6; ++g) {
        for (int trial = 0; trial < 50; ++trial) {
            GrassmannElement prod = GrassmannElement::scalar(1.0, g);
            for (int k = 0; k <= g; ++k) {
                std::vector<std::pair<std::uint16_t, Complex>> ts;
                for (int t = 0; t < 3; ++t) {
                    std::uint16_t mask;
                    do {
                        mask = static_cast<std::uint16_t>(rng.next_u64() &
                                                          ((1u << g) - 1));
                    } while (std::popcount(static_cast<unsigned>(mask)) % 2 == 0);
                    ts.emplace_back(mask, Complex(rng.normal(), rng.normal()));
                }
                prod = prod * GrassmannElement::from_terms(g, std::move(ts));
            }
            CHECK(prod.is_zero());
        }
    }
}

TEST_CASE("mismatched generator counts are a configuration error") {
    GrassmannElement a = theta(0, 3);
    GrassmannElement b = theta(0, 5);
    CHECK_THROWS_AS((void)(a * b), td::Error);
    CHECK_THROWS_AS((void)(a + b), td::Error);
}

TEST_CASE("non-finite coefficients are rejected") {
    CHECK_THROWS_AS(GrassmannElement::from_terms(
                        2, {{0, Complex(std::nan(""), 0.0)}}),
                    td::Error);
}

TEST_CASE("generator count capped at 12") {
    CHECK_THROWS_AS(GrassmannElement(13), td::Error);
    CHECK_NOTHROW(GrassmannElement(12));
}
