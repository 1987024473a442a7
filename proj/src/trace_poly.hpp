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

#include <memory>
#include <string>
#include <vector>

#include "operator_matrix.hpp"
#include "rng.hpp"

namespace td {

enum class SymbolKind { Coordinate, Momentum, Velocity, Constant };

std::string to_string(SymbolKind k);

struct SymbolInfo {
    std::string name;
    SymbolKind kind = SymbolKind::Coordinate;
    int dof = 0;  // degree-of-freedom index r; ignored for constants
    Grading grading = Grading::Even;
};

/// Declared symbols of a model. Symbol ids are dense indices in declaration
/// order. Immutable once shared.
class SymbolTable {
public:
    int declare(const std::string& name, SymbolKind kind, int dof,
                Grading grading = Grading::Even);

    int size() const noexcept { return static_cast<int>(symbols_.size()); }
    const SymbolInfo& info(int id) const;
    int id_of(const std::string& name) const;  // -1 when absent

    /// Id of the (kind, dof) symbol, -1 when absent.
    int find(SymbolKind kind, int dof) const;

    /// Sorted distinct dof indices carrying a Coordinate symbol.
    std::vector<int> dofs() const;

    /// Checks the Hamiltonian-form pairing: every coordinate dof has a
    /// momentum partner with matching grading.
    void require_momentum_pairing() const;

private:
    std::vector<SymbolInfo> symbols_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

/// One cyclic word c * Tr(l_0 l_1 ... l_{k-1}).
struct TraceWord {
    Complex coeff;
    std::vector<int> letters;
};

/// Matrix-valued (not traced) polynomial: sum of coeff * ordered products.
/// An empty letter list denotes the identity.
struct OperatorPolynomial {
    SymbolTablePtr symbols;
    struct Term {
        Complex coeff;
        std::vector<int> letters;
    };
    std::vector<Term> terms;

    bool is_zero() const noexcept { return terms.empty(); }
};

/// Bindings of symbols to matrices, indexed by symbol id.
class Binding {
public:
    explicit Binding(SymbolTablePtr table);

    void set(const std::string& name, OperatorMatrix m);
    void set(int id, OperatorMatrix m);
    const OperatorMatrix& get(int id) const;
    bool has(int id) const;
    const SymbolTable& table() const { return *table_; }

    /// Throws unless every id in `used` is bound with the declared grading
    /// and all bound matrices share one dimension and generator count.
    void validate(const std::vector<int>& used) const;

private:
    SymbolTablePtr table_;
    std::vector<OperatorMatrix> slots_;
    std::vector<bool> bound_;
};

/// Scalar-valued trace polynomial, canonical under graded cyclic rotation:
/// each word stores the lexicographically-least rotation with the Koszul
/// rotation sign absorbed into its coefficient; equal words are merged and
/// zero coefficients dropped.
class TracePolynomial {
public:
    TracePolynomial() = default;
    explicit TracePolynomial(SymbolTablePtr table) : symbols_(std::move(table)) {}

    static TracePolynomial from_words(SymbolTablePtr table,
                                      std::vector<TraceWord> words);

    const std::vector<TraceWord>& words() const noexcept { return words_; }
    const SymbolTablePtr& symbols() const noexcept { return symbols_; }

    TracePolynomial operator+(const TracePolynomial& other) const;
    TracePolynomial operator-(const TracePolynomial& other) const;
    TracePolynomial operator*(Complex c) const;

    /// Ids of symbols appearing in at least one word.
    std::vector<int> used_symbols() const;

    bool approx_equal(const TracePolynomial& other, double tol = 1e-12) const;
    std::string to_string() const;

private:
    SymbolTablePtr symbols_;
    std::vector<TraceWord> words_;
};

/// Parses the model grammar: sums/differences of `c * Tr(s1*s2*...)` with
/// complex literals `a`, `ai`, `a+bi`; parentheses only group inside Tr.
/// Errors carry a 1-based character position.
TracePolynomial parse_trace_polynomial(const std::string& text,
                                       SymbolTablePtr symbols);

GrassmannElement evaluate(const TracePolynomial& poly, const Binding& binding);

/// Evaluate when the result must be a plain complex scalar.
Complex evaluate_scalar(const TracePolynomial& poly, const Binding& binding);

/// `dim` fixes the result shape (a zero polynomial evaluates to the zero
/// matrix of that dimension).
OperatorMatrix evaluate_operator(const OperatorPolynomial& poly,
                                 const Binding& binding, int dim);

/// Graded cyclic derivative: every occurrence of `symbol` is rotated to the
/// end of its word (with Koszul rotation signs) and removed. Occurrence-free
/// words contribute nothing.
OperatorPolynomial cyclic_derivative(const TracePolynomial& poly, int symbol);

/// Substitutes `symbol` by a linear combination of other symbols in every
/// word, distributing products.
TracePolynomial substitute(const TracePolynomial& poly, int symbol,
                           const std::vector<std::pair<Complex, int>>& repl);

/// True when the evaluation is invariant (tol) under simultaneous unitary
/// conjugation of all non-constant bindings, over `trials` random bindings.
/// Constant symbols are bound from `constants` and left untransformed.
bool check_unitary_invariance(const TracePolynomial& poly,
                              const Binding& constants, int trials,
                              std::uint64_t seed, int dim = 3,
                              double tol = 1e-10);

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
ComplexMatrix haar_unitary(int dim, Rng& rng);

}  // namespace td
