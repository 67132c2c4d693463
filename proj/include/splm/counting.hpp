// Point counting over F_q: brute-force counts of affine varieties, Gaussian
// binomials, and symplectic isotropic-subspace counts by reduced row-echelon
// enumeration (brute force is the oracle of record; no closed form assumed).
#pragma once

#include "splm/enumerate.hpp"
#include "splm/fiber.hpp"

namespace splm {

/// Exact number of F_p solutions of the ideal by full scan.
inline long brute_count(const Ideal<PrimeField>& ideal, long guard = kDefaultEnumGuard) {
    const auto& ring = ideal.ring;
    const PrimeField& F = ring->field;
    const long p = F.p();
    const int n = ring->nvars();
    double space = 1;
    for (int i = 0; i < n; ++i) space *= static_cast<double>(p);
    if (space > static_cast<double>(guard)) throw guard_exceeded("brute_count guard exceeded");
    std::vector<long> value(static_cast<size_t>(n), 0);
    long count = 0;
    while (true) {
        bool ok = true;
        for (const auto& g : ideal.gens)
            if (!F.is_zero(g.eval(value))) {
                ok = false;
                break;
            }
        if (ok) ++count;
        int i = 0;
        while (i < n && ++value[static_cast<size_t>(i)] == p) value[static_cast<size_t>(i++)] = 0;
        if (i == n) break;
    }
    return count;
}

/// Gaussian binomial [n choose k]_q: the number of k-dimensional subspaces.
inline long q_binomial_count(int k, int n, long q) {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("q_binomial_count: need 0 <= k <= n");
    mpz_class num = 1, den = 1, qz(q);
    auto qpow_minus_1 = [&](int e) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(e));
        return mpz_class(r - 1);
    };
    for (int i = 0; i < k; ++i) {
        num *= qpow_minus_1(n - i);
        den *= qpow_minus_1(k - i);
    }
    mpz_class res = num / den;
    if (!res.fits_slong_p()) throw std::overflow_error("q_binomial_count overflow");
    return res.get_si();
}

namespace detail {

/// Visit every k-dimensional subspace of F_q^n once, as the rows of its
/// reduced row-echelon basis matrix (row-major, k x n).
template <class Visit>
void for_each_subspace(int k, int n, long q, Visit&& visit) {
    std::vector<int> pivots(static_cast<size_t>(k));
    std::function<void(int, int)> choose = [&](int idx, int from) {
        if (idx == k) {
            // free positions: row i, column c with c > pivots[i], c not a pivot
            std::vector<std::pair<int, int>> free_pos;
            std::vector<bool> is_pivot(static_cast<size_t>(n), false);
            for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
            for (int i = 0; i < k; ++i)
                for (int c = pivots[static_cast<size_t>(i)] + 1; c < n; ++c)
                    if (!is_pivot[static_cast<size_t>(c)]) free_pos.push_back({i, c});
            std::vector<long> vals(free_pos.size(), 0);
            while (true) {
                std::vector<long> mat(static_cast<size_t>(k) * n, 0);
                for (int i = 0; i < k; ++i)
                    mat[static_cast<size_t>(i) * n + pivots[static_cast<size_t>(i)]] = 1;
                for (size_t t = 0; t < free_pos.size(); ++t)
                    mat[static_cast<size_t>(free_pos[t].first) * n + free_pos[t].second] = vals[t];
                visit(mat);
                size_t i = 0;
                while (i < vals.size() && ++vals[i] == q) vals[i++] = 0;
                if (i == vals.size()) break;
            }
            return;
        }
        for (int c = from; c <= n - (k - idx); ++c) {
            pivots[static_cast<size_t>(idx)] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
}

}  // namespace detail

/// Brute-force count of all k-dimensional subspaces (cross-check for the
/// Gaussian binomial).
inline long subspace_count_brute(int k, int n, long q) {
    long count = 0;
    detail::for_each_subspace(k, n, q, [&](const std::vector<long>&) { ++count; });
    return count;
}

/// Number of totally isotropic k-dimensional subspaces of the symplectic
/// F_q^n with the alternating form J_n, by direct subspace enumeration.
inline long isotropic_count(int k, int n, long q) {
    if (n % 2 != 0 || k > n / 2)
        throw std::invalid_argument("isotropic_count: need n even and k <= n/2");
    PrimeField F(q);
    auto ring = mk_ring(F, std::vector<std::string>{});
    auto J = mat_J(ring, n);
    std::vector<long> j_flat(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) j_flat[static_cast<size_t>(i) * n + c] = J.at(i, c).eval({});
    long count = 0;
    detail::for_each_subspace(k, n, q, [&](const std::vector<long>& mat) {
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                long acc = 0;
                for (int i = 0; i < n; ++i)
                    for (int c = 0; c < n; ++c)
                        acc = F.add(acc, F.mul(mat[static_cast<size_t>(a) * n + i],
                                               F.mul(j_flat[static_cast<size_t>(i) * n + c],
                                                     mat[static_cast<size_t>(b) * n + c])));
                if (acc != 0) return;
            }
        ++count;
    });
    return count;
}

struct ComponentCounts {
    long total = 0, comp_d = 0, comp_q = 0, meet = 0;
    bool affine_space_count_ok = false;  // |V(I1)| = q^dim
    bool inclusion_exclusion_ok = false;
};

/// Count the special fiber and its components; the d-component must count as
/// affine space, and inclusion-exclusion must be exact.
inline ComponentCounts component_count_check(const SpecialComponents& sc,
                                             long guard = kDefaultEnumGuard) {
    ComponentCounts out;
    out.total = brute_count(sc.total, guard);
    out.comp_d = brute_count(sc.comp_d, guard);
    out.comp_q = brute_count(sc.comp_q, guard);
    {
        std::vector<Poly<PrimeField>> gens = sc.comp_d.gens;
        for (const auto& g : sc.comp_q.gens) gens.push_back(g);
        out.meet = brute_count(Ideal<PrimeField>(sc.total.ring, gens), guard);
    }
    long q = sc.total.ring->field.p();
    mpz_class expect = 1;
    for (int i = 0; i < sc.dim_d; ++i) expect *= q;
    out.affine_space_count_ok = expect.fits_slong_p() && out.comp_d == expect.get_si();
    out.inclusion_exclusion_ok = out.total == out.comp_d + out.comp_q - out.meet;
    return out;
}

}  // namespace splm
