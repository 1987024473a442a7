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
#include "grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace td {

namespace {

bool finite(Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

}  // namespace

int koszul_sign(std::uint16_t mask_a, std::uint16_t mask_b) {
    // Each generator of b moves left past the generators of a above it.
    int swaps = 0;
    std::uint16_t b = mask_b;
    while (b) {
        int i = std::countr_zero(b);
        b &= static_cast<std::uint16_t>(b - 1);
        swaps += std::popcount(static_cast<unsigned>(mask_a >> (i + 1)));
    }
    return (swaps & 1) ? -1 : 1;
}

int reversal_sign(int cardinality) {
    return ((cardinality * (cardinality - 1) / 2) & 1) ? -1 : 1;
}

GrassmannElement::GrassmannElement(int generators) : generators_(generators) {
    if (generators < 0 || generators > kMaxGenerators)
        throw_config("generator count " + std::to_string(generators) +
                     " outside [0, " + std::to_string(kMaxGenerators) + "]");
}

GrassmannElement GrassmannElement::scalar(Complex value, int generators) {
    GrassmannElement g(generators);
    g.terms_.emplace_back(0, value);
    g.prune_and_validate();
    return g;
}

GrassmannElement GrassmannElement::generator(int index, int generators) {
    GrassmannElement g(generators);
    if (index < 0 || index >= generators)
        throw_config("generator index " + std::to_string(index) +
                     " outside algebra with G=" + std::to_string(generators));
    g.terms_.emplace_back(static_cast<std::uint16_t>(1u << index), Complex(1.0));
    return g;
}

GrassmannElement GrassmannElement::from_terms(
    int generators, std::vector<std::pair<std::uint16_t, Complex>> terms) {
    GrassmannElement g(generators);
    g.terms_ = std::move(terms);
    std::sort(g.terms_.begin(), g.terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge duplicates in place
    std::vector<std::pair<std::uint16_t, Complex>> merged;
    for (const auto& [mask, c] : g.terms_) {
        if (!merged.empty() && merged.back().first == mask)
            merged.back().second += c;
        else
            merged.emplace_back(mask, c);
    }
    g.terms_ = std::move(merged);
    g.prune_and_validate();
    return g;
}

void GrassmannElement::prune_and_validate() {
    const std::uint16_t limit =
        static_cast<std::uint16_t>((1u << generators_) - 1u);
    std::vector<std::pair<std::uint16_t, Complex>> kept;
    kept.reserve(terms_.size());
    for (const auto& [mask, c] : terms_) {
        if (mask & ~limit)
            throw_config("monomial mask uses generators beyond G=" +
                         std::to_string(generators_));
        if (!finite(c))
            throw_numerical("non-finite coefficient in graded element");
        if (c != Complex(0.0)) kept.emplace_back(mask, c);
    }
    terms_ = std::move(kept);
}

Complex GrassmannElement::scalar_part() const noexcept {
    if (!terms_.empty() && terms_.front().first == 0) return terms_.front().second;
    return Complex(0.0);
}

bool GrassmannElement::is_scalar() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 0);
}

Parity GrassmannElement::parity() const noexcept {
    bool any_even = false, any_odd = false;
    for (const auto& [mask, c] : terms_) {
        (void)c;
        if (std::popcount(static_cast<unsigned>(mask)) & 1)
            any_odd = true;
        else
            any_even = true;
    }
    if (any_odd && any_even) return Parity::Mixed;
    if (any_odd) return Parity::Odd;
    return Parity::Even;  // zero element counts as even
}

GrassmannElement GrassmannElement::adjoint() const {
    GrassmannElement out(generators_);
    out.terms_.reserve(terms_.size());
    for (const auto& [mask, c] : terms_) {
        int k = std::popcount(static_cast<unsigned>(mask));
        double s = static_cast<double>(reversal_sign(k));
        out.terms_.emplace_back(mask, s * std::conj(c));
    }
    out.prune_and_validate();
    return out;
}

GrassmannElement GrassmannElement::operator-() const {
    GrassmannElement out(generators_);
    out.terms_.reserve(terms_.size());
    for (const auto& [mask, c] : terms_) out.terms_.emplace_back(mask, -c);
    return out;
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement& other) const {
    // The zero element with G=0 acts as a universal additive identity.
    int g = std::max(generators_, other.generators_);
    if (generators_ != other.generators_ && !is_scalar() && !other.is_scalar())
        throw_config("graded elements live on different generator counts (" +
                     std::to_string(generators_) + " vs " +
                     std::to_string(other.generators_) + ")");
    std::vector<std::pair<std::uint16_t, Complex>> sum;
    sum.reserve(terms_.size() + other.terms_.size());
    auto it = terms_.begin();
    auto jt = other.terms_.begin();
    while (it != terms_.end() || jt != other.terms_.end()) {
        if (jt == other.terms_.end() ||
            (it != terms_.end() && it->first < jt->first)) {
            sum.push_back(*it++);
        } else if (it == terms_.end() || jt->first < it->first) {
            sum.push_back(*jt++);
        } else {
            sum.emplace_back(it->first, it->second + jt->second);
            ++it;
            ++jt;
        }
    }
    GrassmannElement out(g);
    out.terms_ = std::move(sum);
    out.prune_and_validate();
    return out;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& other) const {
    return *this + (-other);
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement& other) const {
    int g = std::max(generators_, other.generators_);
    if (generators_ != other.generators_ && !is_scalar() && !other.is_scalar())
        throw_config("cannot multiply graded elements with different generator "
                     "counts (" + std::to_string(generators_) + " vs " +
                     std::to_string(other.generators_) + ")");
    std::map<std::uint16_t, Complex> acc;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            if (ma & mb) continue;  // theta^2 = 0
            double s = static_cast<double>(koszul_sign(ma, mb));
            acc[static_cast<std::uint16_t>(ma | mb)] += s * ca * cb;
        }
    }
    GrassmannElement out(g);
    out.terms_.assign(acc.begin(), acc.end());
    out.prune_and_validate();
    return out;
}

GrassmannElement GrassmannElement::operator*(Complex c) const {
    GrassmannElement out(generators_);
    out.terms_.reserve(terms_.size());
    for (const auto& [mask, coeff] : terms_) out.terms_.emplace_back(mask, coeff * c);
    out.prune_and_validate();
    return out;
}

double GrassmannElement::norm() const noexcept {
    double s = 0.0;
    for (const auto& [mask, c] : terms_) {
        (void)mask;
        s += std::norm(c);
    }
    return std::sqrt(s);
}

bool GrassmannElement::approx_equal(const GrassmannElement& other, double tol) const {
    return (*this - other).norm() <= tol;
}

std::string GrassmannElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+")
           << std::abs(c.imag()) << "i)";
        std::uint16_t m = mask;
        while (m) {
            int i = std::countr_zero(m);
            m &= static_cast<std::uint16_t>(m - 1);
            os << "*t" << (i + 1);
        }
    }
    return os.str();
}

}  // namespace td
