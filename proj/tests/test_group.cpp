#include "doctest.h"
#include "helpers.hpp"

using namespace invdef;
using namespace testing_util;

namespace {

// Literal substitution x_j -> sum_i g(i,j) x_i, expanded term by term.
Polynomial literal_substitute(const Polynomial& f, const QMatrix& g) {
    const RingPtr& r = f.ring();
    Polynomial out(r);
    for (const auto& t : f.terms()) {
        Polynomial prod = Polynomial::constant(r, t.c);
        for (int j = 0; j < r->nvars(); ++j) {
            Polynomial lin(r);
            for (int i = 0; i < r->nvars(); ++i)
                if (g(i, j) != 0) lin += Polynomial::variable(r, i) * g(i, j);
            for (unsigned e = 0; e < t.m[j]; ++e) prod *= lin;
        }
        out += prod;
    }
    return out;
}

GroupAction symmetric3() {
    GroupAction a;
    a.vars = {"x", "y", "z"};
    a.finite = finite_closure({qmat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), qmat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})});
    return a;
}

}  // namespace

TEST_CASE("reynolds on finite groups") {
    auto r = ring_of({"x", "y"});
    GroupAction a;
    a.vars = {"x", "y"};
    a.finite = {QMatrix::identity(2), QMatrix::identity(2).scaled(-1)};
    a.validate();
    CHECK(reynolds(P("x", r), a).is_zero());
    CHECK(reynolds(P("x^2+x*y+y", r), a) == P("x^2+x*y", r));

    auto s = ring_of({"x", "y", "z"});
    auto s3 = symmetric3();
    CHECK(s3.finite.size() == 6);
    s3.validate();
    std::mt19937 rng(2);
    for (int it = 0; it < 10; ++it) {
        auto f = random_poly(s, rng, 4, 3);
        Polynomial avg(s);
        for (const auto& g : s3.finite) avg += literal_substitute(f, g);
        avg = avg * Rational(1, 6);
        CHECK(reynolds(f, s3) == avg);
        CHECK(is_invariant(avg, s3));
        CHECK(reynolds(avg, s3) == avg);
    }
}

TEST_CASE("torus projection") {
    auto r = ring_of({"x", "y"});
    GroupAction a;
    a.vars = {"x", "y"};
    a.torus = {{1, -1}};
    CHECK(reynolds(P("x*y+x^2+3", r), a) == P("x*y+3", r));
}

TEST_CASE("so3 reynolds against isotypic projection") {
    auto r = ring_of({"x1", "x2", "x3"});
    auto a = so3_action({"x1", "x2", "x3"});
    a.validate();
    auto R = reynolds(P("x1^2", r), a);
    CHECK(R == P("1/3*x1^2+1/3*x2^2+1/3*x3^2", r));

    // Oracle: degree-2 space = invariants + span of derivation images.
    auto mons = Ps({"x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"}, r);
    MonomialIndexer idx;
    for (const auto& m : mons) idx.index(m.leading().m);
    Echelon ech(true);
    std::vector<Polynomial> inserted;
    auto q = P("x1^2+x2^2+x3^2", r);
    ech.insert(flatten(std::vector<Polynomial>{q}, idx));
    inserted.push_back(q);
    for (const auto& D : a.lie)
        for (const auto& m : mons) {
            auto img = apply_derivation(m, D, a);
            if (ech.insert(flatten(std::vector<Polynomial>{img}, idx))) inserted.push_back(img);
        }
    REQUIRE(ech.rank() == 6);
    for (const auto& m : mons) {
        SparseVec combo;
        CHECK(ech.reduce(flatten(std::vector<Polynomial>{m}, idx), &combo).empty());
        Rational cq = 0;
        for (const auto& [k, c] : combo)
            if (k == 0) cq = c;
        CHECK(reynolds(m, a) == q * cq);
    }
}

TEST_CASE("centrality validation rejects a bad pairing") {
    auto a = so3_action({"x1", "x2", "x3"});
    a.lie_dual[0] = a.lie_dual[0].scaled(3);
    CHECK_THROWS_AS(a.validate(), ActionError);
}

TEST_CASE("property: reynolds laws under so3") {
    auto r = ring_of({"x1", "x2", "x3"});
    auto a = so3_action({"x1", "x2", "x3"});
    std::mt19937 rng(44);
    auto q = P("x1^2+x2^2+x3^2", r);
    for (int it = 0; it < 12; ++it) {
        auto f = random_poly(r, rng, 4, 4), g = random_poly(r, rng, 3, 3);
        auto Rf = reynolds(f, a);
        CHECK(reynolds(Rf, a) == Rf);
        for (const auto& D : a.lie) CHECK(apply_derivation(Rf, D, a).is_zero());
        CHECK(is_invariant(Rf, a));
        CHECK(reynolds(f + g, a) == Rf + reynolds(g, a));
        CHECK(reynolds(f * q, a) == Rf * q);
    }
}

TEST_CASE("representations on subspaces") {
    auto r = ring_of({"x1", "x2", "x3"});
    auto a = so3_action({"x1", "x2", "x3"});
    auto res = rep_on_subspace(Ps({"x1", "x2", "x3"}, r), a);
    REQUIRE(res.rep.has_value());
    for (std::size_t i = 0; i < a.lie.size(); ++i) {
        CHECK(res.rep->lie[i] == a.lie[i]);
        CHECK(res.rep->lie_dual[i] == a.lie_dual[i]);
    }
    auto bad = rep_on_subspace(Ps({"x1^2"}, r), a);
    CHECK_FALSE(bad.rep.has_value());
    REQUIRE(bad.witness.has_value());
    auto w = bad.witness->at(0, 0);
    bool hits = false;
    for (const auto& t : w.terms())
        if (t.m == P("x1*x2", r).leading().m || t.m == P("x1*x3", r).leading().m) hits = true;
    CHECK(hits);

    auto span = g_closure(Ps({"x1"}, r), a);
    CHECK(span.size() == 3);
    auto quad = g_closure(Ps({"x1^2"}, r), a);
    CHECK(quad.size() == 6);
    auto stable = g_closure(Ps({"x1^2+x2^2+x3^2"}, r), a);
    CHECK(stable.size() == 1);
}

TEST_CASE("twisted equivariance") {
    auto r = ring_of({"x1", "x2", "x3"});
    auto a = so3_action({"x1", "x2", "x3"});
    auto rho = rep_on_subspace(Ps({"x1", "x2", "x3"}, r), a).rep.value();
    auto triv = Representation::trivial(a, 1);
    auto A0 = PolyMatrix::row(r, Ps({"x1", "x2", "x3"}, r));
    CHECK(is_equivariant(A0, triv, rho, a));
    CHECK_FALSE(is_equivariant(PolyMatrix::row(r, Ps({"x1"}, r)), triv, triv, a));
    CHECK(reynolds_twisted(A0, triv, rho, a) == A0);
    PolyMatrix zero(r, 1, 3);
    CHECK(reynolds_twisted(zero, triv, rho, a).is_zero());

    // A0 X = Y with Y invariant is preserved by projecting X.
    std::mt19937 rng(8);
    auto q = P("x1^2+x2^2+x3^2", r);
    for (int it = 0; it < 6; ++it) {
        auto h = reynolds(random_poly(r, rng, 3, 2), a);
        auto g = random_poly(r, rng, 3, 2);
        auto X = PolyMatrix::column(r, {P("x1", r) * h + P("x2", r) * g, P("x2", r) * h - P("x1", r) * g, P("x3", r) * h});
        auto Y = matrix_mul(A0, X);
        CHECK(Y.at(0, 0) == q * h);
        auto RX = reynolds_twisted(X, rho, triv, a);
        CHECK(is_equivariant(RX, rho, triv, a));
        CHECK(matrix_mul(A0, RX) == Y);
    }
}
