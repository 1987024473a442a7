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

#include "errors.hpp"
#include "jsonio.hpp"
#include "operator_matrix.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using td::Complex;
using td::ComplexMatrix;
using td::GrassmannElement;
using td::Grading;
using td::OperatorMatrix;

namespace {

OperatorMatrix random_odd_matrix(td::Rng& rng, int dim, int g) {
    std::vector<GrassmannElement> entries;
    for (int k = 0; k < dim * dim; ++k) {
        std::vector<std::pair<std::uint16_t, Complex>> ts;
        for (int t = 0; t < 2; ++t) {
            std::uint16_t mask;
            do {
                mask = static_cast<std::uint16_t>(rng.next_u64() & ((1u << g) - 1));
            } while (std::popcount(static_cast<unsigned>(mask)) % 2 == 0);
            ts.emplace_back(mask, Complex(rng.normal(), rng.normal()));
        }
        entries.push_back(GrassmannElement::from_terms(g, std::move(ts)));
    }
    return OperatorMatrix::from_entries(dim, g, std::move(entries), Grading::Odd);
}

oracle::DenseMatrix to_dense(const OperatorMatrix& m, int g) {
    oracle::DenseMatrix out(m.dim(), g);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) {
            GrassmannElement e = m.entry(i, j);
            for (const auto& [mask, c] : e.terms()) out.at(i, j).c[mask] += c;
        }
    return out;
}

}  // namespace

TEST_CASE("identity is a multiplicative unit") {
    OperatorMatrix a = OperatorMatrix::random_hermitian(4, 9);
    OperatorMatrix i = OperatorMatrix::identity(4);
    CHECK((i * a - a).frobenius_norm() == doctest::Approx(0.0));
    CHECK((a * i - a).frobenius_norm() == doctest::Approx(0.0));
}

TEST_CASE("associativity on random 3x3 complex matrices") {
    td::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        OperatorMatrix a = OperatorMatrix::random_hermitian(3, rng.next_u64());
        OperatorMatrix b = OperatorMatrix::random_hermitian(3, rng.next_u64());
        OperatorMatrix c = OperatorMatrix::random_hermitian(3, rng.next_u64());
        CHECK(((a * b) * c - a * (b * c)).frobenius_norm() < 1e-12);
    }
}

TEST_CASE("grading composition: odd * odd is even") {
    td::Rng rng(10);
    OperatorMatrix f1 = random_odd_matrix(rng, 2, 4);
    OperatorMatrix f2 = random_odd_matrix(rng, 2, 4);
    CHECK((f1 * f2).grading() == Grading::Even);
    CHECK((f1 * OperatorMatrix::identity(2)).grading() == Grading::Odd);
}

TEST_CASE("trace of the identity and trace cyclicity") {
    CHECK(OperatorMatrix::identity(5).trace_scalar() == Complex(5.0));
    td::Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        OperatorMatrix a = OperatorMatrix::random_hermitian(4, rng.next_u64());
        OperatorMatrix b = OperatorMatrix::random_hermitian(4, rng.next_u64());
        CHECK(std::abs((a * b).trace_scalar() - (b * a).trace_scalar()) < 1e-12);
    }
}

TEST_CASE("odd-graded trace anticyclicity vs dense expansion, G=4 N=2") {
    td::Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        OperatorMatrix a = random_odd_matrix(rng, 2, 4);
        OperatorMatrix b = random_odd_matrix(rng, 2, 4);
        GrassmannElement sum = (a * b).trace() + (b * a).trace();
        CHECK(sum.norm() < 1e-12);

        // cross-check one product trace against the dense oracle
        oracle::Dense dt = oracle::trace(oracle::mul(to_dense(a, 4), to_dense(b, 4)));
        oracle::Dense impl(4);
        GrassmannElement tr_ab = (a * b).trace();
        for (const auto& [mask, c] : tr_ab.terms()) impl.c[mask] += c;
        for (std::size_t k = 0; k < impl.c.size(); ++k) impl.c[k] -= dt.c[k];
        CHECK(oracle::norm(impl) < 1e-12);
    }
}

TEST_CASE("commutator examples") {
    ComplexMatrix sx(2, 2), sy(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    OperatorMatrix x = OperatorMatrix::from_complex(sx);
    OperatorMatrix y = OperatorMatrix::from_complex(sy);

    CHECK(commutator(x, x).frobenius_norm() == doctest::Approx(0.0));

    // direct arithmetic oracle: [sx, sy] = 2i sz
    ComplexMatrix direct = sx * sy - sy * sx;
    CHECK((commutator(x, y).complex_data() - direct).norm() ==
          doctest::Approx(0.0));
    ComplexMatrix sz(2, 2);
    sz << Complex(0, 2), 0, 0, Complex(0, -2);
    CHECK((direct - sz).norm() == doctest::Approx(0.0));

    // adjoint([A,B]) = -[A,B] for Hermitian A, B
    td::Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        OperatorMatrix a = OperatorMatrix::random_hermitian(3, rng.next_u64());
        OperatorMatrix b = OperatorMatrix::random_hermitian(3, rng.next_u64());
        OperatorMatrix c = commutator(a, b);
        CHECK((c.adjoint() + c).frobenius_norm() < 1e-12);
    }
}

TEST_CASE("random_hermitian: determinism, hermiticity, second-moment scale") {
    OperatorMatrix a = OperatorMatrix::random_hermitian(4, 1234);
    OperatorMatrix b = OperatorMatrix::random_hermitian(4, 1234);
    CHECK((a - b).frobenius_norm() == 0.0);
    CHECK(a.is_hermitian(1e-14));

    // E[Tr M^2] = N^2 with these entry variances; Var(TrM^2) = 2 N^2,
    // so the mean over 10^4 draws carries sigma = sqrt(2)/100 / N... in
    // units of N^2: sigma_mean = sqrt(2 N^2 / 10^4) / N^2.
    const int n = 4;
    const int draws = 10000;
    double acc = 0.0;
    for (int k = 0; k < draws; ++k) {
        OperatorMatrix m = OperatorMatrix::random_hermitian(
            n, 777000 + static_cast<std::uint64_t>(k));
        acc += (m * m).trace_scalar().real() / (n * n);
    }
    double mean = acc / draws;
    double sigma_mean = std::sqrt(2.0 * n * n / static_cast<double>(draws)) /
                        (n * n);
    CHECK(std::abs(mean - 1.0) < 3.0 * sigma_mean);
}

TEST_CASE("graded cyclicity over random gradings, N <= 4, G <= 6") {
    td::Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng.next_u64() % 3);
        int g = 4;
        bool odd_a = rng.next_u64() & 1;
        bool odd_b = rng.next_u64() & 1;
        OperatorMatrix a = odd_a ? random_odd_matrix(rng, n, g)
                                 : OperatorMatrix::random_hermitian(n, rng.next_u64());
        OperatorMatrix b = odd_b ? random_odd_matrix(rng, n, g)
                                 : OperatorMatrix::random_hermitian(n, rng.next_u64());
        double sign = (odd_a && odd_b) ? -1.0 : 1.0;
        GrassmannElement lhs = (a * b).trace();
        GrassmannElement rhs = (b * a).trace() * Complex(sign);
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("adjoint anti-homomorphism on matrices") {
    td::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        OperatorMatrix a = OperatorMatrix::random_hermitian(3, rng.next_u64());
        OperatorMatrix b = OperatorMatrix::random_hermitian(3, rng.next_u64());
        CHECK(((a * b).adjoint() - b.adjoint() * a.adjoint()).frobenius_norm() <
              1e-12);
    }
}

TEST_CASE("trace of commutator vanishes (even); anticommutator (odd)") {
    td::Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        OperatorMatrix a = OperatorMatrix::random_hermitian(4, rng.next_u64());
        OperatorMatrix b = OperatorMatrix::random_hermitian(4, rng.next_u64());
        CHECK(std::abs(commutator(a, b).trace_scalar()) < 1e-12);
        OperatorMatrix fa = random_odd_matrix(rng, 3, 6);
        OperatorMatrix fb = random_odd_matrix(rng, 3, 6);
        CHECK(anticommutator(fa, fb).trace().norm() < 1e-12);
    }
}

TEST_CASE("grading declarations are validated at construction") {
    td::Rng rng(51);
    GrassmannElement odd_entry = GrassmannElement::generator(0, 2);
    CHECK_THROWS_AS(
        OperatorMatrix::from_entries(
            1, 2, {odd_entry}, Grading::Even),
        td::Error);
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, 1;
    CHECK_THROWS_AS(OperatorMatrix::from_complex(m, Grading::Odd), td::Error);
    CHECK_THROWS_AS(
        (void)(OperatorMatrix::random_hermitian(2, 1) *
               OperatorMatrix::random_hermitian(3, 1)),
        td::Error);
    (void)rng;
}

TEST_CASE("JSON dump format round-trips the complex fast path") {
    OperatorMatrix a = OperatorMatrix::random_hermitian(3, 99);
    nlohmann::json j = td::matrix_to_json(a.complex_data());
    // array-of-arrays of [re, im] pairs
    CHECK(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[0][0].size() == 2);
    ComplexMatrix back = td::matrix_from_json(j);
    CHECK((back - a.complex_data()).norm() == 0.0);
}
