// Certification that the raw matrix-relation presentation of a chart and its
// simplified presentation define the same coordinate ring.
//
// Strategy: after substituting the pivot normalization (and, for chart 2, the
// forced first rows of Z1^t and Z2^t, which appear verbatim as generators),
// the raw ideal contains linear relations expressing the dependent variables
// (all of Z except the designated skew entries for chart 1; B, the dependent
// Z2 entries and the second Z1 row for chart 2) in terms of the surviving
// ones. These relations are extracted by a triangular solve that only ever
// divides by nonzero constants and only uses generators of the raw ideal, so
// each extracted substitution is certified to lie in the ideal. Applying the
// substitution maps the raw ideal onto an ideal J in the surviving variables,
// and the chart simplification holds iff J equals the simplified ideal, which
// is checked by two-sided Groebner membership in the small surviving ring.
#pragma once

#include "splm/fiber.hpp"

namespace splm {

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

namespace detail {

/// Triangular extraction of substitutions for `targets` from `gens`:
/// repeatedly find a generator of the form c*v + r with c a nonzero constant,
/// v an unresolved target and r free of unresolved targets; then v |-> -r/c.
/// Returns variable-index -> image (in the same ring), or reports failure.
template <class K>
bool extract_substitutions(const Ring<K>& ring, const std::vector<Poly<K>>& gens,
                           const std::vector<int>& targets, std::map<int, Poly<K>>& images,
                           VerifyReport& report) {
    const K& F = ring->field;
    std::vector<bool> pending(ring->nvars(), false);
    for (int t : targets) pending[t] = true;
    auto apply_images = [&](const Poly<K>& f) {
        std::vector<Poly<K>> im;
        im.reserve(ring->nvars());
        for (int i = 0; i < ring->nvars(); ++i) {
            auto it = images.find(i);
            im.push_back(it != images.end() ? it->second : Poly<K>::variable(ring, i));
        }
        return substitute(f, ring, im);
    };
    size_t resolved = 0;
    bool progress = true;
    while (resolved < targets.size() && progress) {
        progress = false;
        for (const auto& g0 : gens) {
            if (resolved == targets.size()) break;
            Poly<K> g = apply_images(g0);
            if (g.is_zero()) continue;
            // find a pending target that appears linearly with constant coefficient
            for (int v : targets) {
                if (!pending[v] || g.degree_in(v) != 1) continue;
                typename K::Elt c = F.zero();
                std::vector<typename Poly<K>::Term> rest;
                bool usable = true;
                for (const auto& [e, cf] : g.terms()) {
                    if (e[v] == 1) {
                        bool pure = true;
                        for (int i = 0; i < ring->nvars(); ++i)
                            if (i != v && e[i] != 0) pure = false;
                        if (!pure) {
                            usable = false;
                            break;
                        }
                        c = cf;
                    } else {
                        rest.push_back({e, cf});
                    }
                }
                if (!usable || F.is_zero(c)) continue;
                Poly<K> r = Poly<K>::from_sorted_terms(ring, std::move(rest));
                bool clean = true;
                for (int t : targets)
                    if (pending[t] && t != v && r.uses_var(t)) clean = false;
                if (!clean) continue;
                images[v] = r.scaled(F.neg(F.inv(c)));
                pending[v] = false;
                ++resolved;
                progress = true;
                break;
            }
        }
    }
    if (resolved != targets.size()) {
        std::string missing;
        for (int t : targets)
            if (pending[t]) missing += " " + ring->vars[t];
        report.fail("could not eliminate dependent variables:" + missing);
        return false;
    }
    return true;
}

/// Substitute every variable by its image (default: itself) and transport into
/// `target`, which must contain all surviving variables.
template <class K>
Poly<K> apply_and_project(const Poly<K>& f, const std::map<int, Poly<K>>& images,
                          const Ring<K>& target) {
    const auto& src = f.ring();
    std::vector<Poly<K>> im;
    im.reserve(src->nvars());
    for (int i = 0; i < src->nvars(); ++i) {
        auto it = images.find(i);
        im.push_back(it != images.end() ? it->second : Poly<K>::variable(src, i));
    }
    return substitute(f, src, im).transport(target);
}

template <class K>
struct VerifySides {
    Ring<K> img_ring;                 // surviving raw variables
    std::vector<Poly<K>> img_gens;    // image of the raw ideal
    Ring<K> red_ring;                 // simplified (pivot-substituted) ring
    std::vector<Poly<K>> red_gens;
    std::vector<Poly<K>> img_to_red;  // per img variable
    std::vector<Poly<K>> red_to_img;  // per red variable
};

template <class K>
std::vector<Poly<K>> prune_duplicates_t(const std::vector<Poly<K>>& gens) {
    std::vector<Poly<K>> out;
    for (const auto& g : gens) {
        bool seen = false;
        for (const auto& h : out)
            if (g == h || g == -h) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(g);
    }
    return out;
}

/// Two-sided membership between the projected raw ideal and the simplified one.
template <class K>
void check_equality(const VerifySides<K>& sides, VerifyReport& report, long pair_limit) {
    Ideal<K> img_ideal(sides.img_ring, sides.img_gens);
    Ideal<K> red_ideal(sides.red_ring, sides.red_gens);
    for (const auto& g : sides.img_gens) {
        Poly<K> h = substitute(g, sides.red_ring, sides.img_to_red);
        if (!is_member(h, red_ideal, pair_limit))
            report.fail("projected raw generator escapes the simplified ideal: " + poly_print(g));
    }
    for (const auto& g : sides.red_gens) {
        Poly<K> h = substitute(g, sides.img_ring, sides.red_to_img);
        if (!is_member(h, img_ideal, pair_limit))
            report.fail("simplified generator escapes the projected raw ideal: " + poly_print(g));
    }
}

}  // namespace detail

/// Check the raw-vs-simplified equivalence of a chart over the chosen fiber.
template <class K>
void verify_core(const Chart& ch, const K& field,
                 const std::function<Poly<K>(const PolyQ&, const Ring<K>&)>& to_field,
                 VerifyReport& report, long pair_limit) {
    const ChartSpec& spec = ch.spec;
    const int n = spec.n, s = spec.s, m = spec.m();

    Ring<K> raw = mk_ring(field, ch.raw_ring->vars, ch.raw_ring->order);
    Ring<K> red = mk_ring(field, ch.red_ring->vars, ch.red_ring->order);
    std::vector<Poly<K>> raw_gens;
    for (const auto& g : ch.raw_gens) {
        Poly<K> h = to_field(g, raw);
        if (!h.is_zero()) raw_gens.push_back(h);
    }
    std::vector<Poly<K>> red_gens;
    for (const auto& g : ch.red_gens) {
        Poly<K> h = to_field(g, red);
        if (!h.is_zero()) red_gens.push_back(h);
    }

    // pivot normalization (and forced first-row values for chart 2); each
    // fixed value corresponds to a linear generator of the raw ideal
    std::map<int, Poly<K>> fixed;
    auto fix_const = [&](const std::string& name, const typename K::Elt& value) {
        fixed[raw->index.at(name)] = Poly<K>::constant(raw, value);
    };
    std::vector<int> targets;
    std::vector<std::string> survivors;  // raw-side names of the image ring
    if (spec.chart == 1) {
        for (int k = 1; k <= s; ++k)
            for (int j = 1; j <= s; ++j)
                fix_const(var_y(spec.pivots[k - 1], j), field.from_int(k == j ? 1 : 0));
        std::map<std::string, bool> keep;  // designated skew entries z_{n+1-i_q, p}, p < q
        for (int p = 1; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q) keep[var_z(n + 1 - spec.pivots[q - 1], p)] = true;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= s; ++j)
                if (!keep.count(var_z(i, j))) targets.push_back(raw->index.at(var_z(i, j)));
        for (const auto& v : raw->vars)
            if (!fixed.count(raw->index.at(v)) && keep.count(v)) survivors.push_back(v);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= s; ++j)
                if (!fixed.count(raw->index.at(var_y(i, j)))) survivors.push_back(var_y(i, j));
    } else {
        for (int k = 2; k <= s; ++k)
            for (int j = 1; j <= s; ++j)
                fix_const(var_a(spec.pivots[k - 2], j), field.from_int(k == j ? 1 : 0));
        fix_const(var_z(1, 1), field.one());
        fix_const(var_z(2, 1), field.pi());
        for (int j = 1; j <= n - 2; ++j) fix_const(var_z2(j, 1), field.zero());
        std::map<std::string, bool> keep;  // designated entries z'_{n-1-i_p, q}, 2 <= p < q
        for (int p = 2; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q) keep[var_z2(n - 1 - spec.pivots[p - 2], q)] = true;
        for (int r = 1; r <= 2; ++r)
            for (int c = 1; c <= n - 2; ++c) targets.push_back(raw->index.at(var_b(r, c)));
        for (int j = 1; j <= n - 2; ++j)
            for (int k = 2; k <= s; ++k)
                if (!keep.count(var_z2(j, k))) targets.push_back(raw->index.at(var_z2(j, k)));
        for (int k = 2; k <= s; ++k) targets.push_back(raw->index.at(var_z(2, k)));
        survivors.push_back("x");
        for (int k = 2; k <= s; ++k) survivors.push_back(var_z(1, k));
        for (int p = 2; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q)
                survivors.push_back(var_z2(n - 1 - spec.pivots[p - 2], q));
        for (int i = 1; i <= n - 2; ++i)
            for (int j = 1; j <= s; ++j)
                if (!fixed.count(raw->index.at(var_a(i, j)))) survivors.push_back(var_a(i, j));
    }

    // substituted raw generators
    std::vector<Poly<K>> raw_sub;
    {
        std::vector<Poly<K>> im;
        for (int i = 0; i < raw->nvars(); ++i) {
            auto it = fixed.find(i);
            im.push_back(it != fixed.end() ? it->second : Poly<K>::variable(raw, i));
        }
        for (const auto& g : raw_gens) {
            Poly<K> h = substitute(g, raw, im);
            if (!h.is_zero()) raw_sub.push_back(h);
        }
    }

    std::map<int, Poly<K>> images;
    if (!detail::extract_substitutions(raw, raw_sub, targets, images, report)) return;

    detail::VerifySides<K> sides;
    sides.img_ring = mk_ring(field, survivors);
    sides.red_ring = red;
    sides.red_gens = red_gens;
    for (const auto& g : raw_sub) {
        Poly<K> h = detail::apply_and_project(g, images, sides.img_ring);
        if (!h.is_zero()) sides.img_gens.push_back(h);
    }
    sides.img_gens = detail::prune_duplicates_t(sides.img_gens);

    // variable dictionaries between the image ring and the simplified ring;
    // the designated skew entries carry the pivot-position sign
    auto var_or_throw = [](const Ring<K>& ring, const std::string& name) {
        return Poly<K>::variable(ring, name);
    };
    sides.img_to_red.assign(sides.img_ring->nvars(), Poly<K>::zero(red));
    sides.red_to_img.assign(red->nvars(), Poly<K>::zero(sides.img_ring));
    std::map<std::string, std::pair<std::string, int>> dict;  // raw name -> (red name, sign)
    if (spec.chart == 1) {
        for (int p = 1; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q)
                dict[var_z(n + 1 - spec.pivots[q - 1], p)] = {var_d(p, q, s == 2),
                                                              pivot_sign(spec, q)};
    } else {
        for (int p = 2; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q)
                dict[var_z2(n - 1 - spec.pivots[p - 2], q)] = {var_d(p, q, s == 3),
                                                               pivot_sign(spec, p)};
    }
    for (int i = 0; i < sides.img_ring->nvars(); ++i) {
        const std::string& name = sides.img_ring->vars[i];
        auto it = dict.find(name);
        if (it == dict.end()) {
            sides.img_to_red[i] = var_or_throw(red, name);
        } else {
            Poly<K> v = var_or_throw(red, it->second.first);
            sides.img_to_red[i] = it->second.second > 0 ? v : -v;
        }
    }
    std::map<std::string, std::pair<std::string, int>> inv;
    for (const auto& [raw_name, to] : dict) inv[to.first] = {raw_name, to.second};
    for (int i = 0; i < red->nvars(); ++i) {
        const std::string& name = red->vars[i];
        auto it = inv.find(name);
        if (it == inv.end()) {
            sides.red_to_img[i] = var_or_throw(sides.img_ring, name);
        } else {
            Poly<K> v = var_or_throw(sides.img_ring, it->second.first);
            sides.red_to_img[i] = it->second.second > 0 ? v : -v;
        }
    }

    detail::check_equality(sides, report, pair_limit);
}

inline VerifyReport verify_simplification(const Chart& ch, Fiber fiber,
                                          long pair_limit = kDefaultPairLimit) {
    VerifyReport report;
    if (ch.spec.chart == 2 && ch.spec.s == 1) {
        // simplified side claims the free ring on x, a_1..a_{n-2}
        if (!ch.red_gens.empty()) report.fail("chart 2 with s = 1 should have no relations");
    }
    if (fiber == Fiber::Generic) {
        QPi F(ch.spec.p);
        std::function<PolyQ(const PolyQ&, const Ring<QPi>&)> id =
            [](const PolyQ& f, const Ring<QPi>& target) { return f.transport(target); };
        verify_core<QPi>(ch, F, id, report, pair_limit);
    } else {
        PrimeField F(ch.spec.p);
        std::function<Poly<PrimeField>(const PolyQ&, const Ring<PrimeField>&)> sp =
            [](const PolyQ& f, const Ring<PrimeField>& target) {
                return specialize_poly(f, target);
            };
        verify_core<PrimeField>(ch, F, sp, report, pair_limit);
    }
    return report;
}

}  // namespace splm
