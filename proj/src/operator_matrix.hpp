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
#include <cstdint>
#include <vector>

#include "grassmann.hpp"

namespace td {

using ComplexMatrix = Eigen::MatrixXcd;

enum class Grading { Even, Odd };

inline Grading compose(Grading a, Grading b) {
    return a == b ? Grading::Even : Grading::Odd;
}

/// Square matrix over the graded algebra; carries a declared grading tag.
/// Matrices with G = 0 store a dense complex matrix and all arithmetic stays
/// on that fast path; only fermionic content pays for graded entries.
/// Immutable value type.
class OperatorMatrix {
public:
    OperatorMatrix() = default;

    static OperatorMatrix zero(int dim, Grading grading = Grading::Even,
                               int generators = 0);
    static OperatorMatrix identity(int dim);
    static OperatorMatrix from_complex(ComplexMatrix m,
                                       Grading grading = Grading::Even);

    /// Entries in row-major order; validates each entry's parity against the
    /// declared grading (zero entries are allowed anywhere).
    static OperatorMatrix from_entries(int dim, int generators,
                                       std::vector<GrassmannElement> entries,
                                       Grading grading);

    /// Hermitian matrix with unit-scale Gaussian entries: diagonal N(0,1),
    /// off-diagonal (x+iy)/sqrt(2). Deterministic per seed.
    static OperatorMatrix random_hermitian(int dim, std::uint64_t seed,
                                           double scale = 1.0);

    int dim() const noexcept { return dim_; }
    int generators() const noexcept { return generators_; }
    Grading grading() const noexcept { return grading_; }
    bool complex_fast_path() const noexcept { return generators_ == 0; }

    const ComplexMatrix& complex_data() const;
    GrassmannElement entry(int row, int col) const;

    GrassmannElement trace() const;
    /// Trace when the result is a pure scalar (throws otherwise).
    Complex trace_scalar() const;

    OperatorMatrix adjoint() const;
    OperatorMatrix operator-() const;
    OperatorMatrix operator+(const OperatorMatrix& other) const;
    OperatorMatrix operator-(const OperatorMatrix& other) const;
    OperatorMatrix operator*(const OperatorMatrix& other) const;
    OperatorMatrix operator*(Complex c) const;

    double frobenius_norm() const;
    bool is_hermitian(double tol = 1e-12) const;
    bool is_finite() const;

private:
    void check_same_shape(const OperatorMatrix& other) const;
    OperatorMatrix promoted(int generators) const;

    int dim_ = 0;
    int generators_ = 0;
    Grading grading_ = Grading::Even;
    ComplexMatrix cdata_;                    // used when generators_ == 0
    std::vector<GrassmannElement> gdata_;    // row-major, generators_ > 0
};

inline OperatorMatrix operator*(Complex c, const OperatorMatrix& m) { return m * c; }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace td
