#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "splm/groebner.hpp"

using namespace splm;

using QF = RationalField;
using QPi = RamifiedQuadraticField;
using PQ = Poly<QF>;

namespace {

template <class K>
Ideal<K> mk_ideal(const Ring<K>& ring, std::initializer_list<const char*> gens) {
    std::vector<Poly<K>> g;
    for (const char* s : gens) g.push_back(poly_parse(s, ring));
    return Ideal<K>(ring, std::move(g));
}

template <class K>
Poly<K> random_poly(std::mt19937& rng, const Ring<K>& ring) {
    std::uniform_int_distribution<int> nt(0, 4), ex(0, 2);
    std::uniform_int_distribution<long> cf(-5, 5);
    Poly<K> f = Poly<K>::zero(ring);
    for (int t = nt(rng); t > 0; --t) {
        Expo e(ring->nvars());
        for (int i = 0; i < ring->nvars(); ++i) e[i] = ex(rng);
        f = f + Poly<K>::term(ring, e, ring->field.from_int(cf(rng)));
    }
    return f;
}

}  // namespace

TEST_CASE("monomial ideal is its own reduced basis") {
    QF Q;
    auto ring = mk_ring(Q, {"x", "y"});
    auto i = mk_ideal(ring, {"x^2", "x*y"});
    auto gb = buchberger(i);
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == poly_parse("x*y", ring));
    CHECK(gb[1] == poly_parse("x^2", ring));
}

TEST_CASE("principal ideal normalizes to a monic generator") {
    QPi F(3);
    auto ring = mk_ring(F, {"d", "x3", "y4"});
    auto i = mk_ideal(ring, {"d*(x3 - y4) - 2*pi"});
    auto gb = buchberger(i);
    REQUIRE(gb.size() == 1);
    CHECK(poly_print(gb[0]) == "d*x3 - d*y4 - 2*pi");
}

TEST_CASE("cyclic-3 reduced basis over Q, grevlex") {
    QF Q;
    auto ring = mk_ring(Q, {"x", "y", "z"});
    auto i = mk_ideal(ring, {"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"});
    auto gb = buchberger(i);
    REQUIRE(gb.size() == 3);
    CHECK(gb[0] == poly_parse("x + y + z", ring));
    CHECK(gb[1] == poly_parse("y^2 + y*z + z^2", ring));
    CHECK(gb[2] == poly_parse("z^3 - 1", ring));
}

TEST_CASE("normal form and membership") {
    QF Q;
    auto ring = mk_ring(Q, {"x", "y", "z"});
    auto i = mk_ideal(ring, {"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"});
    for (const auto& g : i.gens) CHECK(normal_form(g, buchberger(i)).is_zero());
    CHECK(is_member(Poly<QF>::zero(ring), i));
    CHECK_FALSE(is_member(poly_parse("x", ring), i));
    CHECK(is_member(poly_parse("z^3 - 1", ring), i));

    auto unit = mk_ideal(ring, {"x", "x - 1"});
    CHECK(normal_form(Poly<QF>::from_int(ring, 1), buchberger(unit)).is_zero());
}

TEST_CASE("unit ideal detection") {
    QPi F(3);
    auto ring = mk_ring(F, {"x"});
    CHECK(is_unit_ideal(mk_ideal(ring, {"x", "x - 1"})));
    CHECK(is_unit_ideal(mk_ideal(ring, {"pi"})));  // pi is a unit in Q(pi)
    CHECK_FALSE(is_unit_ideal(mk_ideal(ring, {"pi - pi"})));  // zero ideal
    CHECK_FALSE(is_unit_ideal(mk_ideal(ring, {"x^2 - 3"})));
}

TEST_CASE("eliminate") {
    QF Q;
    auto ring = mk_ring(Q, {"x", "y"});
    auto i = mk_ideal(ring, {"x - y", "y^2"});
    auto e = eliminate(i, {"x"});
    REQUIRE(e.gens.size() == 1);
    CHECK(e.gens[0] == poly_parse("y^2", ring));

    auto same = eliminate(i, {});
    CHECK(ideals_equal(i, same));

    CHECK_THROWS_AS(eliminate(i, {"q"}), std::invalid_argument);
}

TEST_CASE("eliminate: cyclic-3 projection to z") {
    QF Q;
    auto ring = mk_ring(Q, {"x", "y", "z"});
    auto i = mk_ideal(ring, {"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"});
    auto e = eliminate(i, {"x", "y"});
    REQUIRE(!e.gens.size() == 0);
    for (const auto& g : e.gens) {
        CHECK_FALSE(g.uses_var(0));
        CHECK_FALSE(g.uses_var(1));
        CHECK(is_member(g, i));
    }
    CHECK(is_member(poly_parse("z^3 - 1", ring), e));
}

TEST_CASE("intersect: component product over F_3") {
    PrimeField F(3);
    auto ring = mk_ring(F, {"d", "x3", "x4", "y3", "y4"});
    auto a = mk_ideal(ring, {"d"});
    auto b = mk_ideal(ring, {"x3 - y4"});
    auto c = intersect(a, b);
    auto expect = mk_ideal(ring, {"d*(x3 - y4)"});
    CHECK(ideals_equal(c, expect));

    CHECK(ideals_equal(intersect(a, a), a));
}

TEST_CASE("saturate") {
    QF Q;
    auto ring = mk_ring(Q, {"x", "y"});
    auto i = mk_ideal(ring, {"x*y"});
    auto s = saturate(i, poly_parse("x", ring));
    CHECK(ideals_equal(s, mk_ideal(ring, {"y"})));

    auto j = mk_ideal(ring, {"x^2 - 1"});
    CHECK(ideals_equal(saturate(j, Poly<QF>::from_int(ring, 1)), j));
}

TEST_CASE("radical membership") {
    QF Q;
    auto ring = mk_ring(Q, {"d", "x3", "y4"});
    CHECK(radical_member(poly_parse("d", ring), mk_ideal(ring, {"d^2"})));
    CHECK_FALSE(radical_member(poly_parse("d", ring), mk_ideal(ring, {"d*(x3 - y4)"})));
    CHECK(radical_member(Poly<QF>::from_int(ring, 1), mk_ideal(ring, {"d", "d - 1"})));
}

TEST_CASE("krull dimension") {
    PrimeField F(3);
    auto ring = mk_ring(F, {"d", "x3", "x4", "y3", "y4"});
    CHECK(krull_dim(Ideal<PrimeField>(ring, {})) == 5);
    CHECK(krull_dim(mk_ideal(ring, {"d*(x3 - y4)"})) == 4);
    CHECK(krull_dim(mk_ideal(ring, {"d", "x3 - y4"})) == 3);
    CHECK(krull_dim(mk_ideal(ring, {"d", "d - 1"})) == kEmptyDim);
    // monotone under adding generators
    CHECK(krull_dim(mk_ideal(ring, {"d", "x3 - y4", "x4*y3 - 1"})) <= 3);
}

TEST_CASE("pair-limit guard fires") {
    QF Q;
    auto ring = mk_ring(Q, {"x", "y", "z"});
    auto i = mk_ideal(ring, {"x^3 - 2*x*y", "x^2*y - 2*y^2 + x", "z^4 - x*y*z + 1"});
    CHECK_THROWS_AS(buchberger(i, std::nullopt, 1), guard_exceeded);
}

TEST_CASE("ideal text format round trip") {
    QPi F(3);
    auto ring = mk_ring(F, {"d", "x3", "y4"});
    auto i = mk_ideal(ring, {"d*(x3 - y4) - 2*pi", "x3^2 - 1"});
    std::string text = ideal_to_text(i);
    CHECK(text == "ring Qpi3 vars d,x3,y4 order grevlex\nd*x3 - d*y4 - 2*pi\nx3^2 - 1\n");
    auto j = ideal_from_text(text, F);
    REQUIRE(j.gens.size() == 2);
    CHECK(poly_print(j.gens[0]) == poly_print(i.gens[0]));
    CHECK(poly_print(j.gens[1]) == poly_print(i.gens[1]));
    CHECK_THROWS_AS(ideal_from_text(text, QPi(5)), parse_error);
}

TEST_CASE("property: GB idempotence, membership soundness, intersection, orders") {
    std::mt19937 rng(2024);
    PrimeField F(5);
    auto ring = mk_ring(F, {"x", "y", "z"});
    int done = 0;
    for (int it = 0; done < 60 && it < 400; ++it) {
        auto g1 = random_poly(rng, ring), g2 = random_poly(rng, ring);
        if (g1.is_zero() || g2.is_zero()) continue;
        Ideal<PrimeField> i(ring, {g1, g2});
        std::vector<Poly<PrimeField>> gb;
        try {
            gb = buchberger(i, std::nullopt, 20000);
        } catch (const guard_exceeded&) {
            continue;
        }
        // idempotence
        Ideal<PrimeField> j(ring, gb);
        CHECK(buchberger(j) == gb);
        // membership soundness
        auto h1 = random_poly(rng, ring), h2 = random_poly(rng, ring);
        CHECK(is_member(h1 * g1 + h2 * g2, i));
        // order independence of membership / unit detection
        auto probe = random_poly(rng, ring);
        bool lex_na = false, mem_lex = false;
        try {
            const auto& gb_lex = buchberger(i, MonomialOrder::lex(), 50000);
            if (gb_lex.empty())
                mem_lex = probe.is_zero();
            else
                mem_lex = normal_form(probe.transport(gb_lex[0].ring()), gb_lex).is_zero();
        } catch (const guard_exceeded&) {
            lex_na = true;
        }
        if (!lex_na) CHECK(mem_lex == is_member(probe, i));
        ++done;
    }
    CHECK(done >= 40);

    // intersection correctness on small pairs
    done = 0;
    for (int it = 0; done < 25 && it < 300; ++it) {
        auto a = random_poly(rng, ring), b = random_poly(rng, ring);
        if (a.is_zero() || b.is_zero()) continue;
        Ideal<PrimeField> ia(ring, {a}), ib(ring, {b});
        Ideal<PrimeField> both;
        try {
            both = intersect(ia, ib, 50000);
            auto f = random_poly(rng, ring);
            bool lhs = is_member(f, both, 50000);
            bool rhs = is_member(f, ia, 50000) && is_member(f, ib, 50000);
            CHECK(lhs == rhs);
            CHECK(is_member(a * b, both, 50000));
        } catch (const guard_exceeded&) {
            continue;
        }
        ++done;
    }
    CHECK(done >= 15);
}
