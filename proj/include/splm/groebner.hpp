// Buchberger-based ideal arithmetic: reduced Groebner bases (sugar strategy,
// coprimality and chain criteria, configurable S-pair budget), normal forms,
// membership, elimination, intersection, saturation, radical membership,
// Krull dimension, and the ideal text format.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "splm/errors.hpp"
#include "splm/poly.hpp"

namespace splm {

inline constexpr long kDefaultPairLimit = 200000;
inline constexpr int kEmptyDim = -1;  // Krull dimension sentinel for the unit ideal

template <class K>
struct Ideal {
    Ring<K> ring;
    std::vector<Poly<K>> gens;

    // cache of reduced bases, keyed by the order they were computed under
    mutable std::vector<std::pair<MonomialOrder, std::vector<Poly<K>>>> gb_cache;

    Ideal() = default;
    Ideal(Ring<K> r, std::vector<Poly<K>> g) : ring(std::move(r)), gens(std::move(g)) {
        for (const auto& f : gens) require_same_ring(ring, f.ring());
    }
};

template <class K>
Poly<K> make_monic(const Poly<K>& f) {
    const auto& F = f.ring()->field;
    if (f.is_zero()) return f;
    return f.scaled(F.inv(f.leading_term().second));
}

/// Full remainder of multivariate division of f by the (Groebner) basis G.
template <class K>
Poly<K> normal_form(Poly<K> h, const std::vector<Poly<K>>& G) {
    if (G.empty()) return h;
    const auto& ring = h.ring();
    const auto& F = ring->field;
    std::vector<typename Poly<K>::Term> rem;
    while (!h.is_zero()) {
        const auto& [e, c] = h.leading_term();
        bool reduced = false;
        for (const auto& g : G) {
            const auto& [ge, gc] = g.leading_term();
            if (expo_divides(ge, e)) {
                h = h.fma_sub(F.div(c, gc), expo_sub(e, ge), g);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.push_back({e, c});
            h = h.tail();
        }
    }
    return Poly<K>::from_sorted_terms(ring, std::move(rem));
}

namespace detail {

template <class K>
Poly<K> shift_mono(const Poly<K>& f, const Expo& e) {  // multiply by x^e
    std::vector<typename Poly<K>::Term> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) out.push_back({expo_add(t.first, e), t.second});
    return Poly<K>::from_sorted_terms(f.ring(), std::move(out));
}

/// Buchberger loop on generators already living on `ring` (whose order is the
/// order of the computation). Returns a reduced basis sorted by ascending
/// leading monomial. {1} short-circuits as soon as a constant appears.
template <class K>
std::vector<Poly<K>> buchberger_core(const Ring<K>& ring, const std::vector<Poly<K>>& gens,
                                     long pair_limit) {
    const auto& F = ring->field;
    const MonomialOrder& ord = ring->order;
    auto unit_basis = [&] {
        return std::vector<Poly<K>>{Poly<K>::from_int(ring, 1)};
    };

    std::vector<Poly<K>> G;
    std::vector<int> sugar;
    struct Pair {
        int i, j;
        Expo lcm;
        int sugar;
        bool alive;
    };
    std::vector<Pair> pairs;

    auto push_elem = [&](const Poly<K>& g, int sug) {
        int t = static_cast<int>(G.size());
        const Expo& lt = g.leading_term().first;
        for (int i = 0; i < t; ++i) {
            Expo l = expo_lcm(G[i].leading_term().first, lt);
            int s = std::max(sugar[i] + expo_deg(l) - expo_deg(G[i].leading_term().first),
                             sug + expo_deg(l) - expo_deg(lt));
            pairs.push_back({i, t, std::move(l), s, true});
        }
        G.push_back(g);
        sugar.push_back(sug);
    };

    for (const auto& g0 : gens) {
        if (g0.is_zero()) continue;
        if (g0.is_constant()) return unit_basis();
        push_elem(make_monic(g0), g0.total_degree());
    }

    auto pair_alive = [&](int a, int b) {
        for (const auto& p : pairs)
            if (p.alive && ((p.i == a && p.j == b) || (p.i == b && p.j == a))) return true;
        return false;
    };

    long reductions = 0;
    while (true) {
        int best = -1;
        for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
            if (!pairs[k].alive) continue;
            if (best < 0 || pairs[k].sugar < pairs[best].sugar ||
                (pairs[k].sugar == pairs[best].sugar &&
                 cmp_expo(pairs[k].lcm, pairs[best].lcm, ord) < 0))
                best = k;
        }
        if (best < 0) break;
        Pair pr = pairs[best];
        pairs[best].alive = false;

        const Expo& lti = G[pr.i].leading_term().first;
        const Expo& ltj = G[pr.j].leading_term().first;
        if (expo_coprime(lti, ltj)) continue;  // Buchberger's first criterion
        bool chained = false;                  // chain criterion
        for (int k = 0; k < static_cast<int>(G.size()) && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (expo_divides(G[k].leading_term().first, pr.lcm) && !pair_alive(pr.i, k) &&
                !pair_alive(k, pr.j))
                chained = true;
        }
        if (chained) continue;

        if (++reductions > pair_limit)
            throw guard_exceeded("S-pair budget of " + std::to_string(pair_limit) +
                                 " exceeded in Groebner basis computation");

        Poly<K> s = shift_mono(G[pr.i], expo_sub(pr.lcm, lti))
                        .fma_sub(F.one(), expo_sub(pr.lcm, ltj), G[pr.j]);
        Poly<K> h = normal_form(std::move(s), G);
        if (h.is_zero()) continue;
        if (h.is_constant()) return unit_basis();
        int hs = std::max({pr.sugar, h.total_degree()});
        push_elem(make_monic(h), hs);

        // prune: drop basis-internal pairs whose generators became redundant later?
        // kept simple; minimalization happens below
    }

    // minimalize: keep only elements whose leading term is not divisible by another's
    std::vector<Poly<K>> min_basis;
    for (size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const Expo& a = G[j].leading_term().first;
            const Expo& b = G[i].leading_term().first;
            if (expo_divides(a, b) && (a != b || j < i)) redundant = true;
        }
        if (!redundant) min_basis.push_back(G[i]);
    }
    // inter-reduce tails
    std::vector<Poly<K>> red;
    for (size_t i = 0; i < min_basis.size(); ++i) {
        std::vector<Poly<K>> others;
        for (size_t j = 0; j < min_basis.size(); ++j)
            if (j != i) others.push_back(min_basis[j]);
        Poly<K> r = normal_form(min_basis[i], others);
        if (!r.is_zero()) red.push_back(make_monic(r));
    }
    std::sort(red.begin(), red.end(), [&](const Poly<K>& a, const Poly<K>& b) {
        return cmp_expo(a.leading_term().first, b.leading_term().first, ord) < 0;
    });
    return red;
}

}  // namespace detail

/// Reduced Groebner basis of i under `order` (defaults to the ring's own
/// order); cached per order on the ideal. When `order` differs from the
/// ring's order the basis lives on a sibling ring carrying that order, so
/// leading terms and normal forms stay consistent with the computation.
template <class K>
const std::vector<Poly<K>>& buchberger(const Ideal<K>& i,
                                       std::optional<MonomialOrder> order = std::nullopt,
                                       long pair_limit = kDefaultPairLimit) {
    MonomialOrder ord = order.value_or(i.ring->order);
    for (const auto& [o, basis] : i.gb_cache)
        if (o == ord) return basis;
    std::vector<Poly<K>> basis;
    if (ord == i.ring->order) {
        basis = detail::buchberger_core(i.ring, i.gens, pair_limit);
    } else {
        Ring<K> sib = mk_ring(i.ring->field, i.ring->vars, ord);
        std::vector<Poly<K>> moved;
        for (const auto& g : i.gens) moved.push_back(g.transport(sib));
        basis = detail::buchberger_core(sib, moved, pair_limit);
    }
    i.gb_cache.push_back({ord, std::move(basis)});
    return i.gb_cache.back().second;
}

template <class K>
bool is_unit_ideal(const Ideal<K>& i, long pair_limit = kDefaultPairLimit) {
    const auto& gb = buchberger(i, std::nullopt, pair_limit);
    return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

template <class K>
bool is_member(const Poly<K>& f, const Ideal<K>& i, long pair_limit = kDefaultPairLimit) {
    require_same_ring(f.ring(), i.ring);
    MonomialOrder ord = i.ring->order;
    const auto& gb = buchberger(i, ord, pair_limit);
    return normal_form(f, gb).is_zero();
}

/// Two-sided generator membership: same ideal as sets of polynomials.
template <class K>
bool ideals_equal(const Ideal<K>& a, const Ideal<K>& b, long pair_limit = kDefaultPairLimit) {
    for (const auto& g : a.gens)
        if (!is_member(g, b, pair_limit)) return false;
    for (const auto& g : b.gens)
        if (!is_member(g, a, pair_limit)) return false;
    return true;
}

namespace detail {

/// Shared elimination kernel: reorder variables so `drop` comes first, compute
/// a block-order basis, keep the generators free of dropped variables, and
/// transport them back to the original ring.
template <class K>
std::vector<Poly<K>> eliminate_core(const Ring<K>& ring, const std::vector<Poly<K>>& gens,
                                    const std::vector<std::string>& drop, long pair_limit) {
    std::vector<std::string> reordered = drop;
    for (const auto& v : ring->vars)
        if (std::find(drop.begin(), drop.end(), v) == drop.end()) reordered.push_back(v);
    Ring<K> elim_ring = mk_ring(ring->field, reordered,
                                MonomialOrder::block(static_cast<int>(drop.size())));
    std::vector<Poly<K>> moved;
    for (const auto& g : gens) moved.push_back(g.transport(elim_ring));
    std::vector<Poly<K>> out;
    for (const auto& g : buchberger_core(elim_ring, moved, pair_limit)) {
        bool uses_dropped = false;
        for (size_t i = 0; i < drop.size() && !uses_dropped; ++i)
            uses_dropped = g.uses_var(static_cast<int>(i));
        if (!uses_dropped) out.push_back(g.transport(ring));
    }
    return out;
}

}  // namespace detail

template <class K>
Ideal<K> eliminate(const Ideal<K>& i, const std::vector<std::string>& drop,
                   long pair_limit = kDefaultPairLimit) {
    for (const auto& v : drop)
        if (i.ring->var_index(v) < 0)
            throw std::invalid_argument("eliminate: unknown variable " + v);
    if (drop.empty()) return i;
    return Ideal<K>(i.ring, detail::eliminate_core(i.ring, i.gens, drop, pair_limit));
}

namespace detail {

template <class K>
Ring<K> ring_with_aux(const Ring<K>& ring, std::string& aux_name) {
    aux_name = "t_aux";
    while (ring->var_index(aux_name) >= 0) aux_name += "_";
    std::vector<std::string> vars = ring->vars;
    vars.push_back(aux_name);
    return mk_ring(ring->field, vars, ring->order);
}

}  // namespace detail

template <class K>
Ideal<K> intersect(const Ideal<K>& a, const Ideal<K>& b, long pair_limit = kDefaultPairLimit) {
    require_same_ring(a.ring, b.ring);
    std::string aux;
    Ring<K> ext = detail::ring_with_aux(a.ring, aux);
    Poly<K> t = Poly<K>::variable(ext, aux);
    Poly<K> one_minus_t = Poly<K>::from_int(ext, 1) - t;
    std::vector<Poly<K>> gens;
    for (const auto& g : a.gens) gens.push_back(t * g.transport(ext));
    for (const auto& g : b.gens) gens.push_back(one_minus_t * g.transport(ext));
    std::vector<Poly<K>> elim = detail::eliminate_core(ext, gens, {aux}, pair_limit);
    std::vector<Poly<K>> out;
    for (const auto& g : elim) out.push_back(g.transport(a.ring));
    return Ideal<K>(a.ring, std::move(out));
}

/// (i : f^infinity) via the Rabinowitsch variable.
template <class K>
Ideal<K> saturate(const Ideal<K>& i, const Poly<K>& f, long pair_limit = kDefaultPairLimit) {
    require_same_ring(i.ring, f.ring());
    std::string aux;
    Ring<K> ext = detail::ring_with_aux(i.ring, aux);
    std::vector<Poly<K>> gens;
    for (const auto& g : i.gens) gens.push_back(g.transport(ext));
    gens.push_back(Poly<K>::from_int(ext, 1) - Poly<K>::variable(ext, aux) * f.transport(ext));
    std::vector<Poly<K>> elim = detail::eliminate_core(ext, gens, {aux}, pair_limit);
    std::vector<Poly<K>> out;
    for (const auto& g : elim) out.push_back(g.transport(i.ring));
    return Ideal<K>(i.ring, std::move(out));
}

/// f in rad(i), via 1 in <i, 1 - t f>.
template <class K>
bool radical_member(const Poly<K>& f, const Ideal<K>& i, long pair_limit = kDefaultPairLimit) {
    require_same_ring(i.ring, f.ring());
    std::string aux;
    Ring<K> ext = detail::ring_with_aux(i.ring, aux);
    std::vector<Poly<K>> gens;
    for (const auto& g : i.gens) gens.push_back(g.transport(ext));
    gens.push_back(Poly<K>::from_int(ext, 1) - Poly<K>::variable(ext, aux) * f.transport(ext));
    return is_unit_ideal(Ideal<K>(ext, std::move(gens)), pair_limit);
}

namespace detail {

/// Minimum hitting set over variable-support bitmasks, by DFS branch & bound.
inline void min_hitting_dfs(const std::vector<unsigned long>& supports, unsigned long chosen,
                            int chosen_count, int& best) {
    if (chosen_count >= best) return;
    unsigned long unhit = 0;
    bool found = false;
    for (unsigned long s : supports)
        if ((s & chosen) == 0) {
            unhit = s;
            found = true;
            break;
        }
    if (!found) {
        best = chosen_count;
        return;
    }
    for (int v = 0; v < 64; ++v)
        if (unhit & (1UL << v))
            min_hitting_dfs(supports, chosen | (1UL << v), chosen_count + 1, best);
}

}  // namespace detail

/// Krull dimension of ring/i: maximum size of a variable subset independent
/// modulo the leading-term ideal of a grevlex basis. Unit ideal -> kEmptyDim.
template <class K>
int krull_dim(const Ideal<K>& i, long pair_limit = kDefaultPairLimit) {
    int n = i.ring->nvars();
    if (n > 60) throw std::invalid_argument("krull_dim supports at most 60 variables");
    const auto& gb = buchberger(i, MonomialOrder::grevlex(), pair_limit);
    if (gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero()) return kEmptyDim;
    std::vector<unsigned long> supports;
    for (const auto& g : gb) {
        const Expo& e = g.leading_term().first;
        unsigned long s = 0;
        for (int v = 0; v < n; ++v)
            if (e[v] > 0) s |= 1UL << v;
        supports.push_back(s);
    }
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    int best = n;  // hitting everything with all variables always works
    detail::min_hitting_dfs(supports, 0UL, 0, best);
    return n - best;
}

// ---------------------------------------------------------------------------
// Ideal text format:
//   ring <field> vars <v1,...,vk> order <grevlex|lex>
//   <one polynomial per line>
// ---------------------------------------------------------------------------

inline std::string order_token(const MonomialOrder& o) {
    switch (o.kind) {
        case MonomialOrder::Kind::Lex: return "lex";
        case MonomialOrder::Kind::Grevlex: return "grevlex";
        default: throw std::invalid_argument("block orders have no text form");
    }
}

template <class K>
std::string ideal_to_text(const Ideal<K>& i) {
    std::ostringstream out;
    out << "ring " << i.ring->field.name() << " vars ";
    for (size_t k = 0; k < i.ring->vars.size(); ++k) {
        if (k) out << ",";
        out << i.ring->vars[k];
    }
    out << " order " << order_token(i.ring->order) << "\n";
    for (const auto& g : i.gens) out << poly_print(g) << "\n";
    return out.str();
}

template <class K>
Ideal<K> ideal_from_text(const std::string& text, const K& field) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty ideal text");
    std::istringstream hdr(line);
    std::string kw_ring, field_tok, kw_vars, var_list, kw_order, order_tok;
    hdr >> kw_ring >> field_tok >> kw_vars >> var_list >> kw_order >> order_tok;
    if (kw_ring != "ring" || kw_vars != "vars" || kw_order != "order")
        throw parse_error("malformed ideal header: " + line);
    if (field_tok != field.name())
        throw parse_error("field mismatch: text says " + field_tok + ", caller supplied " +
                          field.name());
    std::vector<std::string> vars;
    std::string cur;
    for (char c : var_list) {
        if (c == ',') {
            vars.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) vars.push_back(cur);
    MonomialOrder ord;
    if (order_tok == "grevlex")
        ord = MonomialOrder::grevlex();
    else if (order_tok == "lex")
        ord = MonomialOrder::lex();
    else
        throw parse_error("unknown order token: " + order_tok);
    Ring<K> ring = mk_ring(field, vars, ord);
    std::vector<Poly<K>> gens;
    while (std::getline(in, line)) {
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        gens.push_back(poly_parse(line, ring));
    }
    return Ideal<K>(ring, std::move(gens));
}

}  // namespace splm
