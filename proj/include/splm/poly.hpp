// Sparse exact multivariate polynomials over a coefficient field, with a ring
// context (field + named variables + monomial order), canonical printing and a
// recursive-descent parser for the textual grammar.
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splm/errors.hpp"
#include "splm/fields.hpp"
#include "splm/monomial.hpp"

namespace splm {

template <class K>
struct RingCtx {
    K field;
    std::vector<std::string> vars;
    MonomialOrder order;
    std::unordered_map<std::string, int> index;

    int nvars() const { return static_cast<int>(vars.size()); }
    int var_index(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }
};

template <class K>
using Ring = std::shared_ptr<const RingCtx<K>>;

template <class K>
Ring<K> mk_ring(const K& field, std::vector<std::string> vars,
                MonomialOrder order = MonomialOrder::grevlex()) {
    auto ctx = std::make_shared<RingCtx<K>>();
    ctx->field = field;
    ctx->order = order;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (!ctx->index.emplace(vars[i], static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate variable name: " + vars[i]);
        if (vars[i] == "pi")
            throw std::invalid_argument("'pi' is reserved and cannot name a variable");
    }
    ctx->vars = std::move(vars);
    return ctx;
}

template <class K>
void require_same_ring(const Ring<K>& a, const Ring<K>& b) {
    if (a != b) throw ring_mismatch("operands belong to different rings");
}

template <class K>
class Poly {
  public:
    using Elt = typename K::Elt;
    using Term = std::pair<Expo, Elt>;  // kept sorted in descending monomial order

    Poly() = default;
    explicit Poly(Ring<K> ring) : ring_(std::move(ring)) {}

    static Poly zero(Ring<K> ring) { return Poly(std::move(ring)); }

    static Poly constant(Ring<K> ring, const Elt& c) {
        Poly p(ring);
        if (!ring->field.is_zero(c)) p.terms_.push_back({Expo(ring->nvars(), 0), c});
        return p;
    }

    static Poly from_int(Ring<K> ring, long v) {
        return constant(ring, ring->field.from_int(v));
    }

    static Poly variable(Ring<K> ring, int idx) {
        Expo e(ring->nvars(), 0);
        e.at(idx) = 1;
        Poly p(ring);
        p.terms_.push_back({std::move(e), ring->field.one()});
        return p;
    }

    static Poly variable(Ring<K> ring, const std::string& name) {
        int idx = ring->var_index(name);
        if (idx < 0) throw std::invalid_argument("unknown variable: " + name);
        return variable(std::move(ring), idx);
    }

    static Poly term(Ring<K> ring, Expo e, const Elt& c) {
        Poly p(ring);
        if (!ring->field.is_zero(c)) p.terms_.push_back({std::move(e), c});
        return p;
    }

    const Ring<K>& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && expo_deg(terms_[0].first) == 0);
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_.front();
    }

    Poly tail() const {  // everything below the leading term
        Poly r(ring_);
        if (!terms_.empty()) r.terms_.assign(terms_.begin() + 1, terms_.end());
        return r;
    }

    /// Trusted constructor from terms already sorted descending with no zeros.
    static Poly from_sorted_terms(Ring<K> ring, std::vector<Term> terms) {
        Poly p(std::move(ring));
        p.terms_ = std::move(terms);
        return p;
    }

    int total_degree() const {  // -1 for the zero polynomial
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, expo_deg(t.first));
        return d;
    }

    int degree_in(int var) const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first[var]);
        return d;
    }

    bool uses_var(int var) const {
        for (const auto& t : terms_)
            if (t.first[var] > 0) return true;
        return false;
    }

    Poly operator-() const {
        Poly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.first, ring_->field.neg(t.second)});
        return r;
    }

    Poly operator+(const Poly& o) const {
        require_same_ring(ring_, o.ring_);
        const auto& F = ring_->field;
        Poly r(ring_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = cmp_expo(terms_[i].first, o.terms_[j].first, ring_->order);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                Elt s = F.add(terms_[i].second, o.terms_[j].second);
                if (!F.is_zero(s)) r.terms_.push_back({terms_[i].first, s});
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        require_same_ring(ring_, o.ring_);
        const auto& F = ring_->field;
        auto cmp = [this](const Expo& a, const Expo& b) {
            return cmp_expo(a, b, ring_->order) > 0;  // descending
        };
        std::map<Expo, Elt, decltype(cmp)> acc(cmp);
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) {
                Expo e = expo_add(a.first, b.first);
                Elt c = F.mul(a.second, b.second);
                auto [it, fresh] = acc.emplace(std::move(e), c);
                if (!fresh) it->second = F.add(it->second, c);
            }
        Poly r(ring_);
        r.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (!F.is_zero(c)) r.terms_.push_back({e, c});
        return r;
    }

    Poly scaled(const Elt& c) const {
        const auto& F = ring_->field;
        if (F.is_zero(c)) return Poly(ring_);
        Poly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.first, F.mul(t.second, c)});
        return r;
    }

    /// this - c * x^e * g, the workhorse of polynomial division.
    Poly fma_sub(const Elt& c, const Expo& e, const Poly& g) const {
        const auto& F = ring_->field;
        Poly r(ring_);
        r.terms_.reserve(terms_.size() + g.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < g.terms_.size()) {
            Expo ge = expo_add(e, g.terms_[j].first);
            int cc = cmp_expo(terms_[i].first, ge, ring_->order);
            if (cc > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (cc < 0) {
                r.terms_.push_back({std::move(ge), F.neg(F.mul(c, g.terms_[j].second))});
                ++j;
            } else {
                Elt s = F.sub(terms_[i].second, F.mul(c, g.terms_[j].second));
                if (!F.is_zero(s)) r.terms_.push_back({terms_[i].first, s});
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < g.terms_.size(); ++j)
            r.terms_.push_back({expo_add(e, g.terms_[j].first), F.neg(F.mul(c, g.terms_[j].second))});
        return r;
    }

    Poly pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative exponent");
        Poly r = from_int(ring_, 1);
        Poly base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = (k >>= 1) ? base * base : base;
        }
        return r;
    }

    Poly derivative(int var) const {
        const auto& F = ring_->field;
        Poly r(ring_);
        for (const auto& t : terms_) {
            int e = t.first[var];
            if (e == 0) continue;
            Expo ne = t.first;
            --ne[var];
            Elt c = F.mul(t.second, F.from_int(e));
            if (!F.is_zero(c)) r.terms_.push_back({std::move(ne), c});
        }
        // term order is preserved by lowering one variable uniformly only under
        // lex-free degree ties, so re-sort to stay canonical
        std::sort(r.terms_.begin(), r.terms_.end(), [this](const Term& a, const Term& b) {
            return cmp_expo(a.first, b.first, ring_->order) > 0;
        });
        return r;
    }

    Elt eval(const std::vector<Elt>& point) const {
        const auto& F = ring_->field;
        if (static_cast<int>(point.size()) != ring_->nvars())
            throw std::invalid_argument("evaluation point has wrong arity");
        Elt acc = F.zero();
        for (const auto& t : terms_) {
            Elt v = t.second;
            for (int i = 0; i < ring_->nvars(); ++i)
                for (int e = 0; e < t.first[i]; ++e) v = F.mul(v, point[i]);
            acc = F.add(acc, v);
        }
        return acc;
    }

    bool operator==(const Poly& o) const {
        if (ring_ != o.ring_) return false;
        if (terms_.size() != o.terms_.size()) return false;
        const auto& F = ring_->field;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].first != o.terms_[i].first || !F.eq(terms_[i].second, o.terms_[i].second))
                return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Rebuild this polynomial on a ring with the same field but possibly
    /// different variable list/order; every used variable must exist there.
    Poly transport(const Ring<K>& target) const {
        const auto& F = target->field;
        if (!F.same(ring_->field)) throw ring_mismatch("transport requires the same field");
        std::vector<int> map(ring_->nvars(), -1);
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Expo e(target->nvars(), 0);
            for (int i = 0; i < ring_->nvars(); ++i) {
                if (t.first[i] == 0) continue;
                if (map[i] < 0) {
                    map[i] = target->var_index(ring_->vars[i]);
                    if (map[i] < 0)
                        throw std::invalid_argument("target ring lacks variable " + ring_->vars[i]);
                }
                e[map[i]] = t.first[i];
            }
            out.push_back({std::move(e), t.second});
        }
        std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
            return cmp_expo(a.first, b.first, target->order) > 0;
        });
        Poly r(target);
        r.terms_ = std::move(out);
        return r;
    }

  private:
    Ring<K> ring_;
    std::vector<Term> terms_;
};

/// Substitute images[i] (a polynomial over `target`) for variable i of f.
template <class K>
Poly<K> substitute(const Poly<K>& f, const Ring<K>& target,
                   const std::vector<Poly<K>>& images) {
    if (static_cast<int>(images.size()) != f.ring()->nvars())
        throw std::invalid_argument("substitute: one image per variable required");
    const auto& F = target->field;
    if (!F.same(f.ring()->field)) throw ring_mismatch("substitute requires the same field");
    std::vector<std::vector<Poly<K>>> powers(images.size());  // powers[i][k] = images[i]^k
    auto power = [&](int i, int k) -> const Poly<K>& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly<K>::from_int(target, 1));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[i]);
        return cache[k];
    };
    Poly<K> acc = Poly<K>::zero(target);
    for (const auto& t : f.terms()) {
        Poly<K> prod = Poly<K>::constant(target, t.second);
        for (size_t i = 0; i < images.size(); ++i)
            if (t.first[i] > 0) prod = prod * power(static_cast<int>(i), t.first[i]);
        acc = acc + prod;
    }
    return acc;
}

/// Substitute constants for a subset of variables, staying in the same ring.
template <class K>
Poly<K> substitute_partial(const Poly<K>& f,
                           const std::vector<std::optional<typename K::Elt>>& vals) {
    const auto& ring = f.ring();
    std::vector<Poly<K>> images;
    images.reserve(ring->nvars());
    for (int i = 0; i < ring->nvars(); ++i)
        images.push_back(vals[i] ? Poly<K>::constant(ring, *vals[i])
                                 : Poly<K>::variable(ring, i));
    return substitute(f, ring, images);
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

namespace detail {

template <class K>
bool coef_prints_compound(const K&, const std::string& s) {
    // compound = contains an interior + or - (e.g. "1+pi", "1-2*pi", "1/2")
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') return true;
    return false;
}

inline bool coef_negative(const RationalField&, const mpq_class& c) { return c < 0; }
inline bool coef_negative(const RamifiedQuadraticField&, const RamifiedQuadraticField::Elt& c) {
    return c.a < 0 || (c.a == 0 && c.b < 0);
}
inline bool coef_negative(const PrimeField&, long) { return false; }

}  // namespace detail

template <class K>
std::string poly_print(const Poly<K>& f) {
    if (f.is_zero()) return "0";
    const auto& ring = f.ring();
    const auto& F = ring->field;
    std::string out;
    bool first = true;
    for (const auto& [e, c0] : f.terms()) {
        bool neg = detail::coef_negative(F, c0);
        auto c = neg ? F.neg(c0) : c0;
        std::string mono;
        for (int i = 0; i < ring->nvars(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring->vars[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = F.str(c);
        std::string piece;
        if (mono.empty()) {
            // compound constants need grouping so a leading sign applies to all
            piece = detail::coef_prints_compound(F, cs) ? "(" + cs + ")" : cs;
        } else if (F.eq(c, F.one())) {
            piece = mono;
        } else if (detail::coef_prints_compound(F, cs)) {
            piece = "(" + cs + ")*" + mono;
        } else {
            piece = cs + "*" + mono;
        }
        if (first) {
            out = neg ? "-" + piece : piece;
            first = false;
        } else {
            out += neg ? " - " : " + ";
            out += piece;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser: expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := base ('^' INT)? ; base := INT | IDENT | 'pi' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace detail {

template <class K>
class PolyParser {
  public:
    PolyParser(std::string text, Ring<K> ring)
        : text_(std::move(text)), ring_(std::move(ring)) {}

    Poly<K> parse() {
        Poly<K> p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected character '" + std::string(1, text_[pos_]) +
                              "' at position " + std::to_string(pos_));
        return p;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly<K> expr() {
        bool neg = false;
        skip_ws();
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Poly<K> acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    Poly<K> term() {
        Poly<K> acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Poly<K> factor() {
        Poly<K> b = base();
        if (eat('^')) {
            long k = integer();
            if (k < 0) throw parse_error("exponent must be nonnegative");
            b = b.pow(static_cast<int>(k));
        }
        return b;
    }

    Poly<K> base() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Poly<K> p = expr();
            if (!eat(')')) throw parse_error("missing ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long n = integer();
            if (eat('/')) {  // fractional coefficient, as produced by monic GB output
                long d = integer();
                const auto& F = ring_->field;
                return Poly<K>::constant(ring_, F.div(F.from_int(n), F.from_int(d)));
            }
            return Poly<K>::from_int(ring_, n);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = ident();
            if (name == "pi") {
                if (!ring_->field.has_pi())
                    throw parse_error("coefficient 'pi' is not representable in this field");
                return Poly<K>::constant(ring_, ring_->field.pi());
            }
            int idx = ring_->var_index(name);
            if (idx < 0) throw parse_error("unknown variable: " + name);
            return Poly<K>::variable(ring_, idx);
        }
        throw parse_error(std::string("unexpected character '") + c + "' at position " +
                          std::to_string(pos_));
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw parse_error("expected integer at position " + std::to_string(pos_));
        return std::stol(text_.substr(start, pos_ - start));
    }

    std::string ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::string text_;
    Ring<K> ring_;
    size_t pos_ = 0;
};

}  // namespace detail

template <class K>
Poly<K> poly_parse(const std::string& text, const Ring<K>& ring) {
    return detail::PolyParser<K>(text, ring).parse();
}

}  // namespace splm
