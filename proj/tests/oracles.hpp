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

// Test-side oracles, deliberately independent of the implementation paths
// they check: dense basis-expansion exterior-algebra arithmetic with signs
// from explicit generator-list sorting, and small closed forms.

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using Cx = std::complex<double>;

/// Dense element of the exterior algebra on g generators: 2^g coefficients
/// indexed by subset mask.
struct Dense {
    int g = 0;
    std::vector<Cx> c;  // size 1 << g

    explicit Dense(int generators)
        : g(generators), c(static_cast<std::size_t>(1) << generators) {}
};

/// Sign of sorting the concatenation of two sorted generator lists, counted
/// by explicit adjacent transpositions (bubble sort) — an independent route
/// to the Koszul sign. Returns 0 for a repeated generator.
inline int concat_sort_sign(unsigned mask_a, unsigned mask_b) {
    std::vector<int> letters;
    for (int i = 0; i < 16; ++i)
        if (mask_a & (1u << i)) letters.push_back(i);
    for (int i = 0; i < 16; ++i)
        if (mask_b & (1u << i)) letters.push_back(i);
    int sign = 1;
    for (std::size_t n = letters.size(); n > 1; --n)
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (letters[k] == letters[k + 1]) return 0;
            if (letters[k] > letters[k + 1]) {
                std::swap(letters[k], letters[k + 1]);
                sign = -sign;
            }
        }
    return sign;
}

inline Dense mul(const Dense& a, const Dense& b) {
    Dense out(a.g);
    const unsigned n = 1u << a.g;
    for (unsigned ma = 0; ma < n; ++ma) {
        if (a.c[ma] == Cx(0.0)) continue;
        for (unsigned mb = 0; mb < n; ++mb) {
            if (b.c[mb] == Cx(0.0)) continue;
            int s = concat_sort_sign(ma, mb);
            if (s == 0) continue;
            out.c[ma | mb] += static_cast<double>(s) * a.c[ma] * b.c[mb];
        }
    }
    return out;
}

inline Dense add(const Dense& a, const Dense& b) {
    Dense out = a;
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
    return out;
}

inline double norm(const Dense& a) {
    double s = 0.0;
    for (const Cx& v : a.c) s += std::norm(v);
    return std::sqrt(s);
}

/// Adjoint by explicit reversal: conjugate coefficients, reverse each
/// monomial letter list and re-sort counting transpositions.
inline Dense adjoint(const Dense& a) {
    Dense out(a.g);
    const unsigned n = 1u << a.g;
    for (unsigned m = 0; m < n; ++m) {
        if (a.c[m] == Cx(0.0)) continue;
        std::vector<int> letters;
        for (int i = 0; i < 16; ++i)
            if (m & (1u << i)) letters.push_back(i);
        // reversed list, bubble back to sorted order
        std::vector<int> rev(letters.rbegin(), letters.rend());
        int sign = 1;
        for (std::size_t nn = rev.size(); nn > 1; --nn)
            for (std::size_t k = 0; k + 1 < nn; ++k)
                if (rev[k] > rev[k + 1]) {
                    std::swap(rev[k], rev[k + 1]);
                    sign = -sign;
                }
        out.c[m] += static_cast<double>(sign) * std::conj(a.c[m]);
    }
    return out;
}

/// N x N matrices of dense elements: multiply and trace, for the graded
/// trace-cyclicity cross-checks.
struct DenseMatrix {
    int n = 0;
    std::vector<Dense> e;  // row-major

    DenseMatrix(int dim, int g) : n(dim), e(static_cast<std::size_t>(dim) * dim, Dense(g)) {}
    Dense& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
    const Dense& at(int i, int j) const {
        return e[static_cast<std::size_t>(i) * n + j];
    }
};

inline DenseMatrix mul(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.n, a.e.front().g);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            for (int k = 0; k < a.n; ++k)
                out.at(i, j) = add(out.at(i, j), mul(a.at(i, k), b.at(k, j)));
    return out;
}

inline Dense trace(const DenseMatrix& a) {
    Dense t(a.e.front().g);
    for (int i = 0; i < a.n; ++i) t = add(t, a.at(i, i));
    return t;
}

}  // namespace oracle
