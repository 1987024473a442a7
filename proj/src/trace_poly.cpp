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
#include "trace_poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace td {

std::string to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::Coordinate: return "q";
        case SymbolKind::Momentum: return "p";
        case SymbolKind::Velocity: return "qdot";
        case SymbolKind::Constant: return "constant";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// SymbolTable

int SymbolTable::declare(const std::string& name, SymbolKind kind, int dof,
                         Grading grading) {
    if (name.empty()) throw_config("symbol name must be nonempty");
    if (id_of(name) >= 0) throw_config("duplicate symbol name '" + name + "'");
    if (kind != SymbolKind::Constant && find(kind, dof) >= 0)
        throw_config("duplicate " + to_string(kind) + " symbol for dof " +
                     std::to_string(dof));
    symbols_.push_back(SymbolInfo{name, kind, dof, grading});
    return static_cast<int>(symbols_.size()) - 1;
}

const SymbolInfo& SymbolTable::info(int id) const {
    if (id < 0 || id >= size()) throw_config("symbol id out of range");
    return symbols_[static_cast<std::size_t>(id)];
}

int SymbolTable::id_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (symbols_[static_cast<std::size_t>(i)].name == name) return i;
    return -1;
}

int SymbolTable::find(SymbolKind kind, int dof) const {
    for (int i = 0; i < size(); ++i) {
        const auto& s = symbols_[static_cast<std::size_t>(i)];
        if (s.kind == kind && s.dof == dof) return i;
    }
    return -1;
}

std::vector<int> SymbolTable::dofs() const {
    std::set<int> ds;
    for (const auto& s : symbols_)
        if (s.kind == SymbolKind::Coordinate) ds.insert(s.dof);
    return {ds.begin(), ds.end()};
}

void SymbolTable::require_momentum_pairing() const {
    for (int r : dofs()) {
        int q = find(SymbolKind::Coordinate, r);
        int p = find(SymbolKind::Momentum, r);
        if (p < 0)
            throw_config("coordinate '" + info(q).name + "' (dof " +
                         std::to_string(r) + ") has no momentum partner");
        if (info(q).grading != info(p).grading)
            throw_config("q/p grading mismatch for dof " + std::to_string(r));
    }
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

int letter_parity(const SymbolTable& table, int id) {
    return table.info(id).grading == Grading::Odd ? 1 : 0;
}

// Canonical form of one word: lexicographically-least graded cyclic rotation,
// rotation sign folded into the coefficient. Returns coeff 0 when rotations
// identify the word with minus itself.
TraceWord canonical_word(const SymbolTable& table, TraceWord w) {
    const std::size_t k = w.letters.size();
    if (k == 0 || w.coeff == Complex(0.0)) return w;

    std::vector<int> par(k);
    int total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        par[i] = letter_parity(table, w.letters[i]);
        total += par[i];
    }

    std::vector<int> best = w.letters;
    int best_sign = 1;
    bool conflict = false;

    std::vector<int> cur = w.letters;
    int sign = 1;
    std::vector<int> curpar = par;
    for (std::size_t rot = 1; rot <= k - 1; ++rot) {
        // rotate left by one: first letter moves past the other k-1
        int moved = curpar.front();
        if (moved && ((total - moved) & 1)) sign = -sign;
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        std::rotate(curpar.begin(), curpar.begin() + 1, curpar.end());
        if (cur < best) {
            best = cur;
            best_sign = sign;
            conflict = false;
        } else if (cur == best && sign != best_sign) {
            conflict = true;
        }
    }
    if (conflict) return TraceWord{Complex(0.0), std::move(best)};
    return TraceWord{w.coeff * static_cast<double>(best_sign), std::move(best)};
}

std::vector<TraceWord> merge_words(std::vector<TraceWord> words) {
    std::map<std::vector<int>, Complex> acc;
    for (auto& w : words)
        if (w.coeff != Complex(0.0)) acc[std::move(w.letters)] += w.coeff;
    std::vector<TraceWord> out;
    out.reserve(acc.size());
    for (auto& [letters, coeff] : acc)
        if (coeff != Complex(0.0)) out.push_back(TraceWord{coeff, letters});
    return out;
}

}  // namespace

TracePolynomial TracePolynomial::from_words(SymbolTablePtr table,
                                            std::vector<TraceWord> words) {
    if (!table) throw_config("trace polynomial needs a symbol table");
    TracePolynomial p(table);
    std::vector<TraceWord> canon;
    canon.reserve(words.size());
    for (auto& w : words) {
        for (int id : w.letters) table->info(id);  // range check
        canon.push_back(canonical_word(*table, std::move(w)));
    }
    p.words_ = merge_words(std::move(canon));
    return p;
}

TracePolynomial TracePolynomial::operator+(const TracePolynomial& other) const {
    if (symbols_ != other.symbols_)
        throw_config("cannot combine polynomials over different symbol tables");
    std::vector<TraceWord> all = words_;
    all.insert(all.end(), other.words_.begin(), other.words_.end());
    TracePolynomial p(symbols_);
    p.words_ = merge_words(std::move(all));
    return p;
}

TracePolynomial TracePolynomial::operator-(const TracePolynomial& other) const {
    return *this + other * Complex(-1.0);
}

TracePolynomial TracePolynomial::operator*(Complex c) const {
    TracePolynomial p(symbols_);
    p.words_ = words_;
    for (auto& w : p.words_) w.coeff *= c;
    p.words_ = merge_words(std::move(p.words_));
    return p;
}

std::vector<int> TracePolynomial::used_symbols() const {
    std::set<int> ids;
    for (const auto& w : words_) ids.insert(w.letters.begin(), w.letters.end());
    return {ids.begin(), ids.end()};
}

bool TracePolynomial::approx_equal(const TracePolynomial& other,
                                   double tol) const {
    TracePolynomial diff = *this - other;
    double s = 0.0;
    for (const auto& w : diff.words()) s += std::abs(w.coeff);
    return s <= tol;
}

std::string TracePolynomial::to_string() const {
    if (words_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& w : words_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << w.coeff.real();
        if (w.coeff.imag() != 0.0)
            os << (w.coeff.imag() < 0 ? "-" : "+") << std::abs(w.coeff.imag())
               << "i";
        os << ")*Tr(";
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            if (i) os << "*";
            os << symbols_->info(w.letters[i]).name;
        }
        os << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum Kind { Number, ImagNumber, Ident, Plus, Minus, Star, LParen, RParen, End };
    Kind kind;
    double value = 0.0;
    std::string text;
    std::size_t pos = 0;  // 0-based offset
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    const Token& peek2() {
        if (!have2_) {
            saved_ = tok_;
            std::size_t save_i = i_;
            advance();
            tok2_ = tok_;
            tok_ = saved_;
            i2_ = i_;
            i_ = save_i;
            have2_ = true;
        }
        return tok2_;
    }

    Token take() {
        Token t = tok_;
        if (have2_) {
            tok_ = tok2_;
            i_ = i2_;
            have2_ = false;
        } else {
            advance();
        }
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t pos) const {
        throw_config("parse error at position " + std::to_string(pos + 1) +
                     ": " + msg);
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
        tok_.pos = i_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        char c = s_[i_];
        if (c == '+' || c == '-' || c == '*' || c == '(' || c == ')') {
            tok_.kind = c == '+'   ? Token::Plus
                        : c == '-' ? Token::Minus
                        : c == '*' ? Token::Star
                        : c == '(' ? Token::LParen
                                   : Token::RParen;
            tok_.text = std::string(1, c);
            ++i_;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[i_])) ||
                    s_[i_] == '.'))
                ++i_;
            if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
                std::size_t save = i_;
                ++i_;
                if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
                if (i_ < s_.size() &&
                    std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                    while (i_ < s_.size() &&
                           std::isdigit(static_cast<unsigned char>(s_[i_])))
                        ++i_;
                } else {
                    i_ = save;  // 'e' begins an identifier, not an exponent
                }
            }
            std::string num = s_.substr(start, i_ - start);
            std::size_t used = 0;
            try {
                tok_.value = std::stod(num, &used);
            } catch (const std::exception&) {
                fail("malformed numeric literal '" + num + "'", start);
            }
            if (used != num.size())
                fail("malformed numeric literal '" + num + "'", start);
            tok_.kind = Token::Number;
            tok_.text = num;
            // imaginary suffix: digits immediately followed by 'i'
            if (i_ < s_.size() && s_[i_] == 'i' &&
                (i_ + 1 >= s_.size() ||
                 (!std::isalnum(static_cast<unsigned char>(s_[i_ + 1])) &&
                  s_[i_ + 1] != '_'))) {
                tok_.kind = Token::ImagNumber;
                ++i_;
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                    s_[i_] == '_'))
                ++i_;
            tok_.kind = Token::Ident;
            tok_.text = s_.substr(start, i_ - start);
            return;
        }
        fail(std::string("unexpected character '") + c + "'", i_);
    }

    const std::string& s_;
    std::size_t i_ = 0, i2_ = 0;
    Token tok_, tok2_, saved_;
    bool have2_ = false;
};

class Parser {
public:
    Parser(const std::string& text, SymbolTablePtr symbols)
        : lex_(text), symbols_(std::move(symbols)) {}

    std::vector<TraceWord> parse() {
        std::vector<TraceWord> words;
        double sign = 1.0;
        if (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus)
            sign = lex_.take().kind == Token::Minus ? -1.0 : 1.0;
        words.push_back(parse_term(sign));
        while (lex_.peek().kind != Token::End) {
            Token op = lex_.take();
            if (op.kind != Token::Plus && op.kind != Token::Minus)
                lex_.fail("expected '+' or '-' between terms", op.pos);
            words.push_back(parse_term(op.kind == Token::Minus ? -1.0 : 1.0));
        }
        return words;
    }

private:
    TraceWord parse_term(double sign) {
        Complex coeff(sign);
        const Token& t = lex_.peek();
        if (t.kind == Token::Number || t.kind == Token::ImagNumber) {
            coeff *= parse_complex_literal();
            Token star = lex_.take();
            if (star.kind != Token::Star)
                lex_.fail("expected '*' between coefficient and Tr(...)",
                          star.pos);
        }
        return parse_trace(coeff);
    }

    Complex parse_complex_literal() {
        Token first = lex_.take();
        if (first.kind == Token::ImagNumber) return Complex(0.0, first.value);
        Complex value(first.value, 0.0);
        // 'a+bi' / 'a-bi': sign then an imaginary number
        if ((lex_.peek().kind == Token::Plus ||
             lex_.peek().kind == Token::Minus) &&
            lex_.peek2().kind == Token::ImagNumber) {
            double s = lex_.take().kind == Token::Minus ? -1.0 : 1.0;
            Token im = lex_.take();
            value += Complex(0.0, s * im.value);
        }
        return value;
    }

    TraceWord parse_trace(Complex coeff) {
        Token id = lex_.take();
        if (id.kind != Token::Ident || id.text != "Tr")
            lex_.fail("expected 'Tr'", id.pos);
        Token lp = lex_.take();
        if (lp.kind != Token::LParen) lex_.fail("expected '(' after Tr", lp.pos);
        if (lex_.peek().kind == Token::RParen)
            lex_.fail("empty trace", lex_.peek().pos);
        TraceWord w{coeff, {}};
        parse_word(w.letters);
        Token rp = lex_.take();
        if (rp.kind != Token::RParen)
            lex_.fail("expected ')' closing Tr", rp.pos);
        return w;
    }

    void parse_word(std::vector<int>& letters) {
        parse_factor(letters);
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            parse_factor(letters);
        }
    }

    void parse_factor(std::vector<int>& letters) {
        Token t = lex_.take();
        if (t.kind == Token::LParen) {
            parse_word(letters);
            Token rp = lex_.take();
            if (rp.kind != Token::RParen) lex_.fail("expected ')'", rp.pos);
            return;
        }
        if (t.kind != Token::Ident)
            lex_.fail("expected a symbol name inside Tr(...)", t.pos);
        int id = symbols_->id_of(t.text);
        if (id < 0) lex_.fail("unknown symbol '" + t.text + "'", t.pos);
        letters.push_back(id);
    }

    Lexer lex_;
    SymbolTablePtr symbols_;
};

}  // namespace

TracePolynomial parse_trace_polynomial(const std::string& text,
                                       SymbolTablePtr symbols) {
    if (!symbols) throw_config("parser needs a symbol table");
    Parser p(text, symbols);
    return TracePolynomial::from_words(symbols, p.parse());
}

// ---------------------------------------------------------------------------
// Binding & evaluation

Binding::Binding(SymbolTablePtr table) : table_(std::move(table)) {
    if (!table_) throw_config("binding needs a symbol table");
    slots_.resize(static_cast<std::size_t>(table_->size()));
    bound_.assign(static_cast<std::size_t>(table_->size()), false);
}

void Binding::set(const std::string& name, OperatorMatrix m) {
    int id = table_->id_of(name);
    if (id < 0) throw_config("cannot bind undeclared symbol '" + name + "'");
    set(id, std::move(m));
}

void Binding::set(int id, OperatorMatrix m) {
    table_->info(id);
    slots_[static_cast<std::size_t>(id)] = std::move(m);
    bound_[static_cast<std::size_t>(id)] = true;
}

const OperatorMatrix& Binding::get(int id) const {
    if (!has(id))
        throw_config("unbound symbol '" + table_->info(id).name + "'");
    return slots_[static_cast<std::size_t>(id)];
}

bool Binding::has(int id) const {
    return id >= 0 && id < table_->size() &&
           bound_[static_cast<std::size_t>(id)];
}

void Binding::validate(const std::vector<int>& used) const {
    int dim = -1;
    int gen = -1;
    for (int id : used) {
        const OperatorMatrix& m = get(id);
        const SymbolInfo& s = table_->info(id);
        if (m.grading() != s.grading)
            throw_config("binding grading mismatch for symbol '" + s.name + "'");
        if (dim < 0) dim = m.dim();
        if (m.dim() != dim)
            throw_config("bound matrices disagree on dimension");
        if (m.generators() != 0) {
            if (gen >= 0 && m.generators() != gen)
                throw_config("bound matrices disagree on generator count");
            gen = m.generators();
        }
    }
}

GrassmannElement evaluate(const TracePolynomial& poly, const Binding& binding) {
    binding.validate(poly.used_symbols());
    GrassmannElement acc;
    for (const auto& w : poly.words()) {
        if (w.letters.empty()) continue;
        OperatorMatrix prod = binding.get(w.letters.front());
        for (std::size_t i = 1; i < w.letters.size(); ++i)
            prod = prod * binding.get(w.letters[i]);
        acc = acc + prod.trace() * w.coeff;
    }
    return acc;
}

Complex evaluate_scalar(const TracePolynomial& poly, const Binding& binding) {
    GrassmannElement g = evaluate(poly, binding);
    if (!g.is_scalar())
        throw_config("trace polynomial evaluated to graded (non-scalar) value");
    return g.scalar_part();
}

OperatorMatrix evaluate_operator(const OperatorPolynomial& poly,
                                 const Binding& binding, int dim) {
    std::vector<int> used;
    for (const auto& t : poly.terms)
        used.insert(used.end(), t.letters.begin(), t.letters.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    binding.validate(used);

    OperatorMatrix acc = OperatorMatrix::zero(dim);
    for (const auto& t : poly.terms) {
        OperatorMatrix prod = OperatorMatrix::identity(dim);
        for (int id : t.letters) prod = prod * binding.get(id);
        acc = acc + prod * t.coeff;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Cyclic derivative

OperatorPolynomial cyclic_derivative(const TracePolynomial& poly, int symbol) {
    const SymbolTable& table = *poly.symbols();
    table.info(symbol);

    std::map<std::vector<int>, Complex> acc;
    for (const auto& w : poly.words()) {
        const std::size_t k = w.letters.size();
        int total = 0;
        std::vector<int> par(k);
        for (std::size_t i = 0; i < k; ++i) {
            par[i] = table.info(w.letters[i]).grading == Grading::Odd ? 1 : 0;
            total += par[i];
        }
        // walk rotations; after rotating left by (j+1), letter j stands last
        std::vector<int> cur = w.letters;
        std::vector<int> curpar = par;
        int sign = 1;
        for (std::size_t j = 0; j < k; ++j) {
            int moved = curpar.front();
            if (moved && ((total - moved) & 1)) sign = -sign;
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            std::rotate(curpar.begin(), curpar.begin() + 1, curpar.end());
            if (w.letters[j] == symbol) {
                std::vector<int> rest(cur.begin(), cur.end() - 1);
                acc[std::move(rest)] += w.coeff * static_cast<double>(sign);
            }
        }
    }

    OperatorPolynomial out;
    out.symbols = poly.symbols();
    for (auto& [letters, coeff] : acc)
        if (coeff != Complex(0.0))
            out.terms.push_back(OperatorPolynomial::Term{coeff, letters});
    return out;
}

TracePolynomial substitute(const TracePolynomial& poly, int symbol,
                           const std::vector<std::pair<Complex, int>>& repl) {
    std::vector<TraceWord> out;
    for (const auto& w : poly.words()) {
        std::vector<TraceWord> expanded{TraceWord{w.coeff, {}}};
        for (int letter : w.letters) {
            if (letter != symbol) {
                for (auto& e : expanded) e.letters.push_back(letter);
                continue;
            }
            std::vector<TraceWord> next;
            next.reserve(expanded.size() * repl.size());
            for (const auto& e : expanded)
                for (const auto& [c, id] : repl) {
                    TraceWord n = e;
                    n.coeff *= c;
                    n.letters.push_back(id);
                    next.push_back(std::move(n));
                }
            expanded = std::move(next);
        }
        out.insert(out.end(), expanded.begin(), expanded.end());
    }
    return TracePolynomial::from_words(poly.symbols(), std::move(out));
}

// ---------------------------------------------------------------------------
// Unitary invariance

ComplexMatrix haar_unitary(int dim, Rng& rng) {
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        double a = std::abs(d);
        q.col(i) *= (a > 0) ? d / a : Complex(1.0);
    }
    return q;
}

bool check_unitary_invariance(const TracePolynomial& poly,
                              const Binding& constants, int trials,
                              std::uint64_t seed, int dim, double tol) {
    const SymbolTable& table = *poly.symbols();
    for (int id : poly.used_symbols())
        if (table.info(id).grading == Grading::Odd)
            throw_config("unitary-invariance check supports the complex fast "
                         "path only");

    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
        Binding bind(poly.symbols());
        for (int id : poly.used_symbols()) {
            const SymbolInfo& s = table.info(id);
            if (s.kind == SymbolKind::Constant) {
                bind.set(id, constants.get(id));
            } else {
                bind.set(id, OperatorMatrix::random_hermitian(
                                 dim, rng.next_u64()));
            }
        }
        Complex before = evaluate_scalar(poly, bind);

        ComplexMatrix u = haar_unitary(dim, rng);
        OperatorMatrix um = OperatorMatrix::from_complex(u);
        OperatorMatrix ud = um.adjoint();
        Binding rotated(poly.symbols());
        for (int id : poly.used_symbols()) {
            const SymbolInfo& s = table.info(id);
            if (s.kind == SymbolKind::Constant)
                rotated.set(id, constants.get(id));
            else
                rotated.set(id, um * bind.get(id) * ud);
        }
        Complex after = evaluate_scalar(poly, rotated);
        if (std::abs(after - before) >
            tol * std::max(1.0, std::abs(before)))
            return false;
    }
    return true;
}

}  // namespace td
