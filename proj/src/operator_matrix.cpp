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
#include "operator_matrix.hpp"

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace td {

namespace {

void check_dim(int dim) {
    if (dim < 1) throw_config("matrix dimension must be >= 1");
}

bool parity_fits(const GrassmannElement& e, Grading g) {
    Parity p = e.parity();
    if (e.is_zero()) return true;
    if (p == Parity::Mixed) return false;
    return (g == Grading::Even) == (p == Parity::Even);
}

}  // namespace

OperatorMatrix OperatorMatrix::zero(int dim, Grading grading, int generators) {
    check_dim(dim);
    OperatorMatrix m;
    m.dim_ = dim;
    m.grading_ = grading;
    m.generators_ = generators;
    if (generators == 0)
        m.cdata_ = ComplexMatrix::Zero(dim, dim);
    else
        m.gdata_.assign(static_cast<std::size_t>(dim) * dim,
                        GrassmannElement(generators));
    return m;
}

OperatorMatrix OperatorMatrix::identity(int dim) {
    check_dim(dim);
    OperatorMatrix m;
    m.dim_ = dim;
    m.cdata_ = ComplexMatrix::Identity(dim, dim);
    return m;
}

OperatorMatrix OperatorMatrix::from_complex(ComplexMatrix mat, Grading grading) {
    if (mat.rows() != mat.cols()) throw_config("operator matrices are square");
    check_dim(static_cast<int>(mat.rows()));
    if (grading == Grading::Odd && mat.cwiseAbs().maxCoeff() != 0.0)
        throw_config("an odd-graded matrix cannot have nonzero complex entries");
    OperatorMatrix m;
    m.dim_ = static_cast<int>(mat.rows());
    m.grading_ = grading;
    m.cdata_ = std::move(mat);
    if (!m.is_finite()) throw_numerical("non-finite matrix entry");
    return m;
}

OperatorMatrix OperatorMatrix::from_entries(int dim, int generators,
                                            std::vector<GrassmannElement> entries,
                                            Grading grading) {
    check_dim(dim);
    if (entries.size() != static_cast<std::size_t>(dim) * dim)
        throw_config("entry count does not match dim^2");
    if (generators == 0) {
        ComplexMatrix c(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const auto& e = entries[static_cast<std::size_t>(i) * dim + j];
                if (!e.is_scalar())
                    throw_config("G=0 matrix with non-scalar entry");
                c(i, j) = e.scalar_part();
            }
        return from_complex(std::move(c), grading);
    }
    OperatorMatrix m;
    m.dim_ = dim;
    m.generators_ = generators;
    m.grading_ = grading;
    for (auto& e : entries) {
        if (e.generators() != generators && !e.is_scalar())
            throw_config("entry generator count mismatch");
        if (!parity_fits(e, grading))
            throw_config("entry parity contradicts declared matrix grading");
    }
    m.gdata_ = std::move(entries);
    return m;
}

OperatorMatrix OperatorMatrix::random_hermitian(int dim, std::uint64_t seed,
                                                double scale) {
    check_dim(dim);
    Rng rng(seed);
    ComplexMatrix m(dim, dim);
    const double inv_sqrt2 = 0.7071067811865475244;
    for (int i = 0; i < dim; ++i) {
        m(i, i) = Complex(scale * rng.normal(), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            Complex z(rng.normal(), rng.normal());
            m(i, j) = scale * inv_sqrt2 * z;
            m(j, i) = std::conj(m(i, j));
        }
    }
    return from_complex(std::move(m));
}

const ComplexMatrix& OperatorMatrix::complex_data() const {
    if (generators_ != 0)
        throw_config("matrix carries graded entries; no complex fast path");
    return cdata_;
}

GrassmannElement OperatorMatrix::entry(int row, int col) const {
    if (row < 0 || row >= dim_ || col < 0 || col >= dim_)
        throw_config("matrix index out of range");
    if (generators_ == 0)
        return GrassmannElement::scalar(cdata_(row, col));
    return gdata_[static_cast<std::size_t>(row) * dim_ + col];
}

GrassmannElement OperatorMatrix::trace() const {
    if (generators_ == 0) return GrassmannElement::scalar(cdata_.trace());
    GrassmannElement t(generators_);
    for (int i = 0; i < dim_; ++i)
        t = t + gdata_[static_cast<std::size_t>(i) * dim_ + i];
    return t;
}

Complex OperatorMatrix::trace_scalar() const {
    GrassmannElement t = trace();
    if (!t.is_scalar())
        throw_config("trace has non-scalar graded content");
    return t.scalar_part();
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix out = *this;
    if (generators_ == 0) {
        out.cdata_ = cdata_.adjoint();
        return out;
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            out.gdata_[static_cast<std::size_t>(i) * dim_ + j] =
                gdata_[static_cast<std::size_t>(j) * dim_ + i].adjoint();
    return out;
}

OperatorMatrix OperatorMatrix::operator-() const {
    OperatorMatrix out = *this;
    if (generators_ == 0) {
        out.cdata_ = -cdata_;
    } else {
        for (auto& e : out.gdata_) e = -e;
    }
    return out;
}

void OperatorMatrix::check_same_shape(const OperatorMatrix& other) const {
    if (dim_ != other.dim_)
        throw_config("matrix shape mismatch: " + std::to_string(dim_) + " vs " +
                     std::to_string(other.dim_));
    if (generators_ != other.generators_ && generators_ != 0 &&
        other.generators_ != 0)
        throw_config("matrix generator count mismatch");
}

OperatorMatrix OperatorMatrix::promoted(int generators) const {
    if (generators_ == generators) return *this;
    OperatorMatrix out = zero(dim_, grading_, generators);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Complex c = cdata_(i, j);
            if (c != Complex(0.0))
                out.gdata_[static_cast<std::size_t>(i) * dim_ + j] =
                    GrassmannElement::scalar(c, generators);
        }
    return out;
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
    check_same_shape(other);
    if (generators_ != other.generators_) {
        int g = std::max(generators_, other.generators_);
        return promoted(g) + other.promoted(g);
    }
    OperatorMatrix out = *this;
    if (grading_ != other.grading_) {
        // Sums across gradings only make sense when one side is zero;
        // keep the grading of the nonzero side.
        if (frobenius_norm() == 0.0)
            out.grading_ = other.grading_;
        else if (other.frobenius_norm() != 0.0)
            throw_config("cannot add matrices of opposite grading");
    }
    if (generators_ == 0) {
        out.cdata_ = cdata_ + other.cdata_;
        if (!out.is_finite()) throw_numerical("non-finite matrix entry");
    } else {
        for (std::size_t k = 0; k < gdata_.size(); ++k)
            out.gdata_[k] = gdata_[k] + other.gdata_[k];
    }
    return out;
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
    return *this + (-other);
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& other) const {
    check_same_shape(other);
    if (generators_ != other.generators_) {
        int g = std::max(generators_, other.generators_);
        return promoted(g) * other.promoted(g);
    }
    OperatorMatrix out = zero(dim_, compose(grading_, other.grading_), generators_);
    if (generators_ == 0) {
        out.cdata_ = cdata_ * other.cdata_;
        if (!out.is_finite()) throw_numerical("non-finite matrix entry");
        return out;
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            GrassmannElement acc(generators_);
            for (int k = 0; k < dim_; ++k)
                acc = acc + gdata_[static_cast<std::size_t>(i) * dim_ + k] *
                                other.gdata_[static_cast<std::size_t>(k) * dim_ + j];
            out.gdata_[static_cast<std::size_t>(i) * dim_ + j] = acc;
        }
    return out;
}

OperatorMatrix OperatorMatrix::operator*(Complex c) const {
    OperatorMatrix out = *this;
    if (generators_ == 0) {
        out.cdata_ = cdata_ * c;
        if (!out.is_finite()) throw_numerical("non-finite matrix entry");
    } else {
        for (auto& e : out.gdata_) e = e * c;
    }
    return out;
}

double OperatorMatrix::frobenius_norm() const {
    if (generators_ == 0) return cdata_.norm();
    double s = 0.0;
    for (const auto& e : gdata_) {
        double n = e.norm();
        s += n * n;
    }
    return std::sqrt(s);
}

bool OperatorMatrix::is_hermitian(double tol) const {
    return (*this - adjoint()).frobenius_norm() <= tol;
}

bool OperatorMatrix::is_finite() const {
    if (generators_ == 0) return cdata_.allFinite();
    return true;  // graded entries validate finiteness on construction
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a * b - b * a;
}

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a * b + b * a;
}

}  // namespace td
