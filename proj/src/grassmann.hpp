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

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace td {

using Complex = std::complex<double>;

enum class Parity { Even, Odd, Mixed };

/// Element of the exterior algebra on `generators()` real anticommuting
/// generators theta_1..theta_G (G <= 12) with complex coefficients.
///
/// A basis monomial is a subset of generators in increasing order, encoded
/// as a bitmask. Storage is a sparse sorted (mask, coefficient) list; the
/// pure-complex case is G = 0 with at most the empty-subset entry, so
/// bosonic code paths carry no exterior-algebra overhead.
///
/// Values are immutable after construction.
class GrassmannElement {
public:
    static constexpr int kMaxGenerators = 12;

    GrassmannElement() = default;  // zero element, G = 0

    /// Zero element of the algebra on `generators` generators.
    explicit GrassmannElement(int generators);

    /// Pure scalar (empty monomial) in the algebra on `generators`.
    static GrassmannElement scalar(Complex value, int generators = 0);

    /// Single generator theta_{index+1} (index is 0-based).
    static GrassmannElement generator(int index, int generators);

    /// From explicit (mask, coefficient) terms; validates masks and
    /// finiteness, merges duplicates, drops exact zeros.
    static GrassmannElement from_terms(
        int generators, std::vector<std::pair<std::uint16_t, Complex>> terms);

    int generators() const noexcept { return generators_; }
    const std::vector<std::pair<std::uint16_t, Complex>>& terms() const noexcept {
        return terms_;
    }

    bool is_zero() const noexcept { return terms_.empty(); }

    /// Coefficient of the empty monomial (the "body" of the element).
    Complex scalar_part() const noexcept;

    /// True when the element lives in the scalar subalgebra (only the empty
    /// monomial is populated), regardless of G.
    bool is_scalar() const noexcept;

    Parity parity() const noexcept;

    /// Involution: conjugates coefficients and reverses each monomial
    /// (theta_i^dag = theta_i, (ab)^dag = b^dag a^dag).
    GrassmannElement adjoint() const;

    GrassmannElement operator-() const;
    GrassmannElement operator+(const GrassmannElement& other) const;
    GrassmannElement operator-(const GrassmannElement& other) const;
    GrassmannElement operator*(const GrassmannElement& other) const;
    GrassmannElement operator*(Complex c) const;

    /// l2 norm over basis coefficients.
    double norm() const noexcept;

    bool approx_equal(const GrassmannElement& other, double tol = 1e-12) const;

    std::string to_string() const;

private:
    void prune_and_validate();

    int generators_ = 0;
    std::vector<std::pair<std::uint16_t, Complex>> terms_;  // sorted by mask
};

inline GrassmannElement operator*(Complex c, const GrassmannElement& g) {
    return g * c;
}

/// Koszul sign of multiplying sorted monomials a*b into sorted order;
/// the caller must ensure the masks are disjoint.
int koszul_sign(std::uint16_t mask_a, std::uint16_t mask_b);

/// Sign of reversing a sorted monomial of cardinality k: (-1)^(k(k-1)/2).
int reversal_sign(int cardinality);

}  // namespace td
