#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "splm/counting.hpp"

using namespace splm;

TEST_CASE("brute_count basics") {
    PrimeField F(3);
    auto ring = mk_ring(F, {"w", "x", "y", "z"});
    CHECK(brute_count(Ideal<PrimeField>(ring, {})) == 81);
    CHECK(brute_count(Ideal<PrimeField>(ring, {poly_parse("1", ring)})) == 0);
    CHECK(brute_count(Ideal<PrimeField>(ring, {poly_parse("w", ring)})) == 27);
    CHECK_THROWS_AS(brute_count(Ideal<PrimeField>(ring, {}), 10), guard_exceeded);
}

TEST_CASE("Gaussian binomials agree with subspace enumeration") {
    CHECK(q_binomial_count(2, 4, 3) == 130);
    CHECK(q_binomial_count(1, 4, 3) == 40);
    CHECK(q_binomial_count(0, 4, 3) == 1);
    CHECK(q_binomial_count(4, 4, 3) == 1);
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= n; ++k) {
            CHECK(q_binomial_count(k, n, 3) == subspace_count_brute(k, n, 3));
            CHECK(q_binomial_count(k, n, 3) == q_binomial_count(n - k, n, 3));  // duality
        }
    CHECK(q_binomial_count(2, 6, 3) == subspace_count_brute(2, 6, 3));
    CHECK(q_binomial_count(1, 4, 5) == subspace_count_brute(1, 4, 5));
    CHECK_THROWS_AS(q_binomial_count(3, 2, 3), std::invalid_argument);
}

TEST_CASE("isotropic subspace counts") {
    // every line is isotropic for an alternating form
    CHECK(isotropic_count(1, 4, 3) == q_binomial_count(1, 4, 3));
    CHECK(isotropic_count(1, 6, 3) == q_binomial_count(1, 6, 3));
    CHECK(isotropic_count(2, 4, 3) == 40);
    CHECK(isotropic_count(2, 6, 3) == 3640);
    CHECK(isotropic_count(3, 6, 3) == 1120);
    CHECK(isotropic_count(2, 4, 5) == 156);
    for (int k = 1; k <= 2; ++k) CHECK(isotropic_count(k, 4, 3) <= q_binomial_count(k, 4, 3));
    CHECK_THROWS_AS(isotropic_count(2, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(isotropic_count(3, 4, 3), std::invalid_argument);
}

TEST_CASE("inclusion-exclusion holds for random hypersurface pairs") {
    PrimeField F(3);
    auto ring = mk_ring(F, {"x", "y", "z"});
    std::mt19937 rng(20260823);
    auto random_poly = [&] {
        Poly<PrimeField> f = Poly<PrimeField>::zero(ring);
        for (int t = 0; t < 4; ++t) {
            std::vector<int> e{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3),
                              static_cast<int>(rng() % 3)};
            long c = static_cast<long>(rng() % 3);
            if (c != 0) f = f + Poly<PrimeField>::term(ring, e, c);
        }
        return f;
    };
    for (int iter = 0; iter < 100; ++iter) {
        auto f = random_poly();
        auto g = random_poly();
        long cf = brute_count(Ideal<PrimeField>(ring, {f}));
        long cg = brute_count(Ideal<PrimeField>(ring, {g}));
        long cfg = brute_count(Ideal<PrimeField>(ring, {f * g}));
        long cmeet = brute_count(Ideal<PrimeField>(ring, {f, g}));
        CHECK(cfg == cf + cg - cmeet);
    }
}

TEST_CASE("component counts at (4,2), chart 1") {
    auto ch = build_chart(ChartSpec::with_default_pivots(3, 4, 2, 2, 1, 1));
    auto sc = special_components(ch);
    auto cc = component_count_check(sc);
    CHECK(cc.total == 135);
    CHECK(cc.comp_d == 81);
    CHECK(cc.comp_q == 81);
    CHECK(cc.meet == 27);
    CHECK(cc.affine_space_count_ok);
    CHECK(cc.inclusion_exclusion_ok);
}

TEST_CASE("component counts at (6,3), chart 2") {
    auto ch = build_chart(ChartSpec::with_default_pivots(3, 6, 3, 3, 2, 1));
    auto sc = special_components(ch);
    auto cc = component_count_check(sc);
    CHECK(cc.total == 32805);
    CHECK(cc.comp_d == 19683);  // 3^9: the d-component is affine space
    CHECK(cc.comp_q == 19683);
    CHECK(cc.meet == 6561);
    CHECK(cc.affine_space_count_ok);
    CHECK(cc.inclusion_exclusion_ok);
}

TEST_CASE("chart-local Grassmannian cells account for the global counts") {
    // At (4,2) the locus over the worst point is a chart-local cell of the
    // Grassmannian Gr(2,4): 3^4 = 81 of its 130 points are visible in the
    // chart, and 3^3 = 27 of the 40 isotropic ones.
    auto ch = build_chart(ChartSpec::with_default_pivots(3, 4, 2, 2, 1, 1));
    auto wl = worst_fiber_dimension(ch);
    long cell_gr = 1, cell_iso = 1;
    for (int i = 0; i < wl.dim_grassmannian; ++i) cell_gr *= 3;
    for (int i = 0; i < wl.dim_isotropic; ++i) cell_iso *= 3;
    CHECK(cell_gr == 81);
    CHECK(cell_iso == 27);
    CHECK(cell_gr <= q_binomial_count(2, 4, 3));
    CHECK(cell_iso <= isotropic_count(2, 4, 3));
    // the cell complements are the loci at infinity of the chart
    CHECK(q_binomial_count(2, 4, 3) - cell_gr == 49);
    CHECK(isotropic_count(2, 4, 3) - cell_iso == 13);
}
