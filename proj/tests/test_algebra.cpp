#include "doctest.h"
#include "helpers.hpp"

using namespace invdef;
using namespace testing_util;

TEST_CASE("parse and print") {
    auto r = make_ring(VariableSet::unweighted({"t1", "t2", "t5", "t6"}));
    auto f = P("405*t2*t5+810*t1*t6", r);
    CHECK(f.size() == 2);
    CHECK(f.coefficient(P("t2*t5", r).leading().m) == 405);
    CHECK(f.coefficient(P("t1*t6", r).leading().m) == 810);
    CHECK(P(to_string(f), r) == f);

    auto s = ring_of({"x", "y"});
    CHECK(P("0", s).is_zero());
    auto g = P("x^2-2/3*x*y", s);
    CHECK(g.size() == 2);
    CHECK(P(to_string(g), s) == g);
    CHECK(to_string(P(to_string(g), s)) == to_string(g));
    CHECK(P("(x+y)^2", s) == P("x^2+2*x*y+y^2", s));
    CHECK(P(" - x + 3 ", s) == P("3-x", s));
}

TEST_CASE("parse errors carry positions") {
    auto s = ring_of({"x", "y"});
    CHECK_THROWS_AS(P("x + z", s), ParseError);
    CHECK_THROWS_AS(P("x + * y", s), ParseError);
    try {
        P("x + z", s);
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("gm weight") {
    auto r = make_ring(VariableSet({"x1", "x2"}, {1, 1}));
    CHECK(gm_weight(P("x1*x2", r)) == 2);
    auto r2 = make_ring(VariableSet({"x1", "x2"}, {2, 1}));
    CHECK(gm_weight(P("x1+x2^2", r2)) == 2);
    auto r3 = make_ring(VariableSet({"x1", "x2"}, {1, 2}));
    CHECK_FALSE(gm_weight(P("x1+x2", r3)).has_value());
}

TEST_CASE("matrix product") {
    auto s = ring_of({"x", "y"});
    auto a = PolyMatrix::row(s, Ps({"x", "y"}, s));
    auto b = PolyMatrix::column(s, Ps({"-y", "x"}, s));
    auto c = matrix_mul(a, b);
    CHECK(c.rows() == 1);
    CHECK(c.cols() == 1);
    CHECK(c.is_zero());
    auto id = PolyMatrix::identity(s, 2);
    CHECK(matrix_mul(id, b) == b);
    CHECK_THROWS_AS(matrix_mul(a, a), AlgebraError);
}

TEST_CASE("variable set validation") {
    CHECK_THROWS(VariableSet({"x", "x"}, {1, 1}));
    CHECK_THROWS(VariableSet({"x", "y"}, {1}));
}

TEST_CASE("primitive normalization") {
    auto s = ring_of({"x", "y"});
    CHECK(primitive(P("-2/3*x+4/9*y", s)) == P("3*x-2*y", s));
    CHECK(monic(P("2*x+y", s)) == P("x+1/2*y", s));
}

TEST_CASE("property: ring axioms") {
    auto r = ring_of({"a", "b", "c"});
    std::mt19937 rng(17);
    for (int it = 0; it < 60; ++it) {
        auto f = random_poly(r, rng, 4, 3), g = random_poly(r, rng, 4, 3), h = random_poly(r, rng, 3, 2);
        CHECK((f + g) == (g + f));
        CHECK((f * g) == (g * f));
        CHECK(((f * g) * h) == (f * (g * h)));
        CHECK(((f + g) + h) == (f + (g + h)));
        CHECK((f * (g + h)) == (f * g + f * h));
        CHECK((f - f).is_zero());
        CHECK((f * Polynomial::constant(r, 1)) == f);
        CHECK(P(to_string(f), r) == f);
    }
}

TEST_CASE("property: monomial order laws") {
    std::mt19937 rng(5);
    std::vector<MonomialOrder> orders{MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::elimination(2),
                                      MonomialOrder::weighted({2, 1, 3, 1})};
    for (const auto& ord : orders) {
        auto r = ring_of({"a", "b", "c", "d"}, ord);
        CHECK(ord.is_global());
        Monomial one;
        for (int it = 0; it < 200; ++it) {
            auto f = random_poly(r, rng, 1, 4), g = random_poly(r, rng, 1, 4), h = random_poly(r, rng, 1, 3);
            if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
            const Monomial &a = f.leading().m, &b = g.leading().m, &m = h.leading().m;
            CHECK(r->compare(one, a) <= 0);
            CHECK(r->compare(a, b) == -r->compare(b, a));
            if (r->compare(a, b) < 0) CHECK(r->compare(mono_mul(m, a), mono_mul(m, b)) < 0);
            if (r->compare(a, b) == 0) CHECK(a == b);
        }
        for (int it = 0; it < 50; ++it) {
            auto f = random_poly(r, rng, 4, 3), g = random_poly(r, rng, 4, 3);
            if (f.is_zero() || g.is_zero()) continue;
            CHECK((f * g).leading().m == mono_mul(f.leading().m, g.leading().m));
        }
    }
    CHECK_FALSE(MonomialOrder::weighted({-1, 1}).is_global());
}

TEST_CASE("property: gm weight is additive") {
    auto r = make_ring(VariableSet({"a", "b", "c"}, {1, 2, 3}));
    std::mt19937 rng(9);
    for (int it = 0; it < 40; ++it) {
        auto f = random_poly(r, rng, 1, 4), g = random_poly(r, rng, 1, 4);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK(*gm_weight(f * g) == *gm_weight(f) + *gm_weight(g));
    }
}
