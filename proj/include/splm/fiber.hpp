// Fiber analysis: specialization of chart data to the residue field (pi -> 0),
// generic-fiber emptiness, the two special-fiber components of the principal
// charts, reducedness / smoothness / transversality certificates, a principal
// flatness check, and the dimensions of the worst-point loci.
#pragma once

#include <functional>
#include <optional>

#include "splm/chart.hpp"

namespace splm {

enum class Fiber { Generic, Special };

inline std::string fiber_name(Fiber f) { return f == Fiber::Generic ? "generic" : "special"; }

// ---------------------------------------------------------------------------
// Specialization Q(pi) -> F_p
// ---------------------------------------------------------------------------

/// Reduce a rational number mod p; the denominator must be prime to p.
inline long rational_mod_p(const mpq_class& x, long p) {
    mpz_class num = x.get_num(), den = x.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        throw std::domain_error("cannot specialize: denominator divisible by p");
    // floor-division remainder is already the least nonnegative residue
    long nm = static_cast<long>(mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p)));
    long dm = static_cast<long>(mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p)));
    PrimeField F(p);
    return F.div(nm, dm);
}

/// a + b*pi |-> a mod p (both coordinates must have denominator prime to p).
inline long specialize_elt(const QPi::Elt& x, long p) {
    long a = rational_mod_p(x.a, p);
    rational_mod_p(x.b, p);  // integrality check only; pi |-> 0
    return a;
}

inline Ring<PrimeField> specialize_ring(const Ring<QPi>& ring, const PrimeField& F) {
    return mk_ring(F, ring->vars, ring->order);
}

inline Poly<PrimeField> specialize_poly(const PolyQ& f, const Ring<PrimeField>& target) {
    const PrimeField& F = target->field;
    Poly<PrimeField> out = Poly<PrimeField>::zero(target);
    if (f.ring()->vars != target->vars)
        throw ring_mismatch("specialize_poly: variable lists differ");
    for (const auto& [e, c0] : f.terms()) {
        long c = specialize_elt(c0, F.p());
        if (c != 0) out = out + Poly<PrimeField>::term(target, e, c);
    }
    return out;
}

inline std::vector<Poly<PrimeField>> specialize_gens(const std::vector<PolyQ>& gens,
                                                     const Ring<PrimeField>& target) {
    std::vector<Poly<PrimeField>> out;
    for (const auto& g : gens) {
        auto h = specialize_poly(g, target);
        if (!h.is_zero()) out.push_back(h);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generic fiber
// ---------------------------------------------------------------------------

/// True when the chart has empty generic fiber, i.e. the reduced presentation
/// is the unit ideal over Q(pi).
inline bool generic_emptiness(const Chart& ch, long pair_limit = kDefaultPairLimit) {
    if (ch.red_gens.empty()) return false;
    return is_unit_ideal(Ideal<QPi>(ch.red_ring, ch.red_gens), pair_limit);
}

/// The special-fiber ideal of the reduced presentation, over F_p.
inline Ideal<PrimeField> special_ideal(const Chart& ch) {
    PrimeField F(ch.spec.p);
    auto ring = specialize_ring(ch.red_ring, F);
    return Ideal<PrimeField>(ring, specialize_gens(ch.red_gens, ring));
}

// ---------------------------------------------------------------------------
// Components of a principal special fiber
// ---------------------------------------------------------------------------

/// Exact division of f by the variable `var` (every term must be divisible).
template <class K>
Poly<K> divide_by_var(const Poly<K>& f, int var) {
    std::vector<typename Poly<K>::Term> terms;
    for (const auto& [e0, c] : f.terms()) {
        if (e0[var] < 1) throw std::domain_error("divide_by_var: term not divisible");
        auto e = e0;
        e[var] -= 1;
        terms.push_back({e, c});
    }
    return Poly<K>::from_sorted_terms(f.ring(), std::move(terms));
}

struct SpecialComponents {
    Ideal<PrimeField> total;  // the special-fiber ideal
    Ideal<PrimeField> comp_d;  // <d>
    Ideal<PrimeField> comp_q;  // <cofactor>
    int dim_total = 0, dim_d = 0, dim_q = 0, dim_meet = 0;
};

/// Split a principal special fiber d * u = 0 into its two components. Requires
/// the reduced presentation to be principal with a single d-variable.
inline SpecialComponents special_components(const Chart& ch, long pair_limit = kDefaultPairLimit) {
    auto ideal = special_ideal(ch);
    if (ideal.gens.size() != 1)
        throw std::domain_error("special_components requires a principal special fiber");
    const auto& ring = ideal.ring;
    auto it = ring->index.find("d");
    if (it == ring->index.end())
        throw std::domain_error("special_components requires a single d-variable");
    int dvar = it->second;
    Poly<PrimeField> f = ideal.gens[0];
    Poly<PrimeField> u = divide_by_var(f, dvar);
    SpecialComponents out{ideal,
                          Ideal<PrimeField>(ring, {Poly<PrimeField>::variable(ring, dvar)}),
                          Ideal<PrimeField>(ring, {u})};
    out.dim_total = krull_dim(out.total, pair_limit);
    out.dim_d = krull_dim(out.comp_d, pair_limit);
    out.dim_q = krull_dim(out.comp_q, pair_limit);
    auto meet = Ideal<PrimeField>(ring, {Poly<PrimeField>::variable(ring, dvar), u});
    out.dim_meet = krull_dim(meet, pair_limit);
    return out;
}

/// The special fiber equals the scheme-theoretic intersection of its two
/// components, i.e. <d*u> = <d> cap <u> (reducedness of the total ideal).
inline bool reducedness_check(const SpecialComponents& sc, long pair_limit = kDefaultPairLimit) {
    return ideals_equal(sc.total, intersect(sc.comp_d, sc.comp_q, pair_limit), pair_limit);
}

// ---------------------------------------------------------------------------
// Smoothness / transversality
// ---------------------------------------------------------------------------

namespace detail {

template <class K>
void minors_rec(const PolyMatrix<K>& jac, int size, std::vector<int>& rows, std::vector<int>& cols,
                int row_from, int col_from, std::vector<Poly<K>>& out) {
    if (static_cast<int>(rows.size()) == size && static_cast<int>(cols.size()) == size) {
        // Laplace expansion determinant of the selected minor
        std::vector<std::vector<Poly<K>>> sub(size, std::vector<Poly<K>>(size, Poly<K>::zero(jac.ring())));
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) sub[i][j] = jac.at(rows[i], cols[j]);
        // iterative determinant via permutation expansion is fine for size <= 3;
        // use fraction-free elimination style recursion instead
        std::function<Poly<K>(std::vector<std::vector<Poly<K>>>&)> det =
            [&](std::vector<std::vector<Poly<K>>>& m) -> Poly<K> {
            int k = static_cast<int>(m.size());
            if (k == 1) return m[0][0];
            Poly<K> acc = Poly<K>::zero(jac.ring());
            for (int j = 0; j < k; ++j) {
                if (m[0][j].is_zero()) continue;
                std::vector<std::vector<Poly<K>>> mm;
                for (int i = 1; i < k; ++i) {
                    std::vector<Poly<K>> row;
                    for (int c = 0; c < k; ++c)
                        if (c != j) row.push_back(m[i][c]);
                    mm.push_back(std::move(row));
                }
                Poly<K> d = det(mm) * m[0][j];
                acc = (j % 2 == 0) ? acc + d : acc - d;
            }
            return acc;
        };
        out.push_back(det(sub));
        return;
    }
    if (static_cast<int>(rows.size()) < size) {
        for (int r = row_from; r < jac.rows(); ++r) {
            rows.push_back(r);
            minors_rec(jac, size, rows, cols, r + 1, col_from, out);
            rows.pop_back();
        }
        return;
    }
    for (int c = col_from; c < jac.cols(); ++c) {
        cols.push_back(c);
        minors_rec(jac, size, rows, cols, row_from, c + 1, out);
        cols.pop_back();
    }
}

}  // namespace detail

/// All size x size minors of the Jacobian matrix of the generators.
template <class K>
std::vector<Poly<K>> jacobian_minors(const Ideal<K>& ideal, int size) {
    const auto& ring = ideal.ring;
    PolyMatrix<K> jac(ring, static_cast<int>(ideal.gens.size()), ring->nvars());
    for (size_t g = 0; g < ideal.gens.size(); ++g)
        for (int v = 0; v < ring->nvars(); ++v)
            jac.at(static_cast<int>(g), v) = ideal.gens[g].derivative(v);
    std::vector<Poly<K>> out;
    std::vector<int> rows, cols;
    detail::minors_rec(jac, size, rows, cols, 0, 0, out);
    return out;
}

/// Jacobian smoothness: the variety of `ideal` is smooth (over the coefficient
/// field) iff adding the codimension-sized Jacobian minors gives the unit
/// ideal. The empty variety counts as smooth.
template <class K>
bool smoothness_check(const Ideal<K>& ideal, long pair_limit = kDefaultPairLimit) {
    int dim = krull_dim(ideal, pair_limit);
    if (dim == kEmptyDim) return true;
    int codim = ideal.ring->nvars() - dim;
    if (codim == 0) return true;  // dense subscheme of affine space cut by nilpotents only
    auto minors = jacobian_minors(ideal, codim);
    std::vector<Poly<K>> gens = ideal.gens;
    for (auto& m : minors)
        if (!m.is_zero()) gens.push_back(m);
    return is_unit_ideal(Ideal<K>(ideal.ring, std::move(gens)), pair_limit);
}

/// The two components meet transversally: their union-scheme intersection
/// I_1 + I_2 is smooth of dimension one less than the components.
inline bool transversality_check(const SpecialComponents& sc,
                                 long pair_limit = kDefaultPairLimit) {
    std::vector<Poly<PrimeField>> gens = sc.comp_d.gens;
    for (const auto& g : sc.comp_q.gens) gens.push_back(g);
    Ideal<PrimeField> meet(sc.total.ring, std::move(gens));
    if (krull_dim(meet, pair_limit) != sc.dim_d - 1) return false;
    return smoothness_check(meet, pair_limit);
}

/// Principal flatness certificate: a single relation f cuts out a flat family
/// over O iff f does not become zero in the special fiber (no pi-torsion).
/// Charts with no relations are free, hence flat.
inline bool flatness_principal_check(const Chart& ch) {
    if (ch.red_gens.empty()) return true;
    if (ch.red_gens.size() != 1)
        throw std::domain_error("flatness_principal_check requires <= 1 relation");
    PrimeField F(ch.spec.p);
    auto ring = specialize_ring(ch.red_ring, F);
    return !specialize_poly(ch.red_gens[0], ring).is_zero();
}

// ---------------------------------------------------------------------------
// Worst-point loci
// ---------------------------------------------------------------------------

struct WorstLocus {
    int dim_grassmannian = 0;      // D = 0 locus (chart 1) / degenerate locus (chart 2)
    int dim_isotropic = -2;        // chart 1 only: D = 0 and Q = 0
    int expected_grassmannian = 0;
    int expected_isotropic = -2;
};

/// Dimensions of the locus lying over the worst point of the special fiber.
inline WorstLocus worst_fiber_dimension(const Chart& ch, long pair_limit = kDefaultPairLimit) {
    const ChartSpec& spec = ch.spec;
    PrimeField F(spec.p);
    auto ring = specialize_ring(ch.red_ring, F);
    auto gens = specialize_gens(ch.red_gens, ring);
    WorstLocus out;
    const int n = spec.n, s = spec.s;
    if (spec.chart == 1) {
        auto with_d = gens;
        for (int p = 1; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q)
                with_d.push_back(Poly<PrimeField>::variable(ring, var_d(p, q, s == 2)));
        out.dim_grassmannian = krull_dim(Ideal<PrimeField>(ring, with_d), pair_limit);
        out.expected_grassmannian = s * (n - s);
        // isotropic locus: additionally Q = 0 (the pivot-substituted entries)
        std::map<std::string, QPi::Elt> fixed;
        for (int k = 1; k <= s; ++k)
            for (int j = 1; j <= s; ++j)
                fixed[var_y(spec.pivots[k - 1], j)] = ch.field.from_int(k == j ? 1 : 0);
        auto iso = with_d;
        const MatQ& Q = ch.matrix("Q");
        for (const auto& e : Q.entries()) {
            PolyQ red = detail::fix_vars(e, ch.red_ring, fixed);
            auto sp = specialize_poly(red, ring);
            if (!sp.is_zero()) iso.push_back(sp);
        }
        out.dim_isotropic = krull_dim(Ideal<PrimeField>(ring, iso), pair_limit);
        out.expected_isotropic = s * (2 * n - 3 * s + 1) / 2;
    } else {
        if (s < 2) throw std::domain_error("chart-2 worst locus needs s >= 2");
        auto with_extra = gens;
        with_extra.push_back(Poly<PrimeField>::variable(ring, "x"));
        for (int p = 2; p <= s; ++p)
            for (int q = p + 1; q <= s; ++q)
                with_extra.push_back(Poly<PrimeField>::variable(ring, var_d(p, q, s == 3)));
        // first column of C = M2 Z1^t: entries a_{i,1} + sum_{k>=2} z_{1,k} a_{i,k},
        // restricted to the non-pivot rows of M2 (pivot rows give constants 0/1
        // handled by the ambient chart equations)
        std::map<int, bool> pivot_row;
        for (int piv : spec.pivots) pivot_row[piv] = true;
        for (int i = 1; i <= n - 2; ++i) {
            if (pivot_row.count(i)) continue;
            auto e = Poly<PrimeField>::variable(ring, var_a(i, 1));
            for (int k = 2; k <= s; ++k)
                e = e + Poly<PrimeField>::variable(ring, var_z(1, k)) *
                            Poly<PrimeField>::variable(ring, var_a(i, k));
            with_extra.push_back(e);
        }
        out.dim_grassmannian = krull_dim(Ideal<PrimeField>(ring, with_extra), pair_limit);
        out.expected_grassmannian = (s - 1) * (n - 1 - s) + (s - 1);
    }
    return out;
}

}  // namespace splm
