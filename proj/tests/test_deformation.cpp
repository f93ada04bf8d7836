#include "doctest.h"
#include "helpers.hpp"

#include "invdef/deformation.hpp"
#include "invdef/linalg.hpp"

using namespace invdef;
using namespace testing_util;

namespace {

ProblemSpec trivial_problem(const std::vector<std::string>& names, const std::vector<long>& w,
                            const std::vector<std::string>& gens, int h) {
    ProblemSpec spec;
    spec.ring = make_ring(VariableSet(names, w));
    spec.action = GroupAction::trivial(names);
    spec.ideal_gens = Ps(gens, spec.ring);
    spec.n1_decomposition.push_back({static_cast<int>(gens.size()), h});
    return spec;
}

// dim Hom_P(I, P/I) for an ideal of finite colength, by brute force: syzygies of
// degree <= syzdeg found by plain linear algebra on coefficients, and unknown images
// of the generators in the standard monomials, subject to sum a_i phi(f_i) = 0 in P/I.
int brute_force_normal_dim(const RingPtr& r, const std::vector<Polynomial>& gens, int maxdeg, int syzdeg = 2) {
    auto gb = buchberger(r, gens);
    const std::vector<long> ones(static_cast<std::size_t>(r->nvars()), 1);
    std::vector<Monomial> standard, low;
    for (int d = 0; d <= maxdeg; ++d)
        for (const auto& m : monomials_of_weight(r->nvars(), ones, d))
            if (!ideal_membership(Polynomial::monomial(r, m), gb)) standard.push_back(m);
    for (int d = 0; d <= syzdeg; ++d)
        for (const auto& m : monomials_of_weight(r->nvars(), ones, d)) low.push_back(m);
    const int ng = static_cast<int>(gens.size()), nl = static_cast<int>(low.size());
    // syzygies: kernel of (a_i) -> sum a_i f_i with a_i supported on `low`
    MonomialIndexer pidx;
    std::vector<SparseVec> cols;
    for (int i = 0; i < ng; ++i)
        for (const auto& m : low)
            cols.push_back(flatten(std::vector<Polynomial>{gens[static_cast<std::size_t>(i)].mul_term(m, 1)}, pidx));
    QMatrix sm(static_cast<int>(pidx.size()), ng * nl);
    for (int c = 0; c < ng * nl; ++c)
        for (const auto& [row, x] : cols[static_cast<std::size_t>(c)]) sm(static_cast<int>(row), c) = x;
    auto syz = sm.kernel();
    // constraints on phi
    const int ns = static_cast<int>(standard.size());
    MonomialIndexer idx;
    std::vector<SparseVec> columns;
    for (int i = 0; i < ng; ++i)
        for (int s = 0; s < ns; ++s) {
            Polynomial e = Polynomial::monomial(r, standard[static_cast<std::size_t>(s)]);
            std::vector<Polynomial> slots;
            for (const auto& z : syz) {
                Polynomial a(r);
                for (int k = 0; k < nl; ++k)
                    if (z[static_cast<std::size_t>(i * nl + k)] != 0)
                        a += Polynomial::monomial(r, low[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(i * nl + k)]);
                slots.push_back(reduce(a * e, gb));
            }
            columns.push_back(flatten(slots, idx));
        }
    QMatrix m(static_cast<int>(idx.size()), ns * ng);
    for (int c = 0; c < ns * ng; ++c)
        for (const auto& [row, x] : columns[static_cast<std::size_t>(c)]) m(static_cast<int>(row), c) = x;
    return ns * ng - m.rank();
}

void check_order_invariants(const DeformationState& s, const Presentation& pres, const ProblemSpec& spec) {
    const int nw = spec.ring->nvars();
    // t-degree of each A_i, B_i is exactly i
    for (std::size_t i = 0; i < s.A.size(); ++i) {
        for (const auto* mat : {&s.A[i], &s.B[i]})
            for (const auto& p : mat->entries())
                for (const auto& t : p.terms()) {
                    unsigned deg = 0;
                    for (int v = nw; v < s.combined->nvars(); ++v) deg += t.m[v];
                    CHECK(deg == i);
                }
    }
    // U V = 0 mod K_n + m^{n+1}, by linear algebra in k[t]/m^{n+1}
    auto uv = matrix_mul(U_of(s), V_of(s));
    auto coeffs = split_by_p(uv, spec.ring, s.t_ring);
    const int d = s.t_ring->nvars();
    const unsigned n = static_cast<unsigned>(s.order);
    auto truncate = [&](const Polynomial& f) {
        std::vector<Term> keep;
        for (const auto& t : f.terms())
            if (t.m.deg <= n) keep.push_back(t);
        return Polynomial::from_terms(s.t_ring, std::move(keep));
    };
    MonomialIndexer idx;
    Echelon span;
    const std::vector<long> ones(static_cast<std::size_t>(d), 1);
    for (const auto& g : s.K) {
        unsigned ord = g.terms().back().m.deg;
        for (const auto& t : g.terms()) ord = std::min(ord, t.m.deg);
        for (unsigned e = 0; e + ord <= n; ++e)
            for (const auto& mu : monomials_of_weight(d, ones, static_cast<long>(e)))
                span.insert(flatten(std::vector<Polynomial>{truncate(g.mul_term(mu, 1))}, idx));
    }
    for (const auto& [sigma, c] : coeffs)
        CHECK(span.reduce(flatten(std::vector<Polynomial>{truncate(c)}, idx)).empty());
    // equivariance
    TwistedAction twA(spec.action, Representation::trivial(spec.action, 1), pres.rho1);
    TwistedAction twB(spec.action, pres.rho1, pres.rho2);
    CHECK(twA.is_equivariant(U_of(s)));
    CHECK(twB.is_equivariant(V_of(s)));
    // weights
    for (const auto& g : s.K) {
        auto w = gm_weight(g);
        REQUIRE(w.has_value());
        CHECK(*w > 0);
    }
    for (int l = 0; l < pres.n1(); ++l) {
        Polynomial u = U_of(s).at(0, l);
        CHECK(gm_weight(u) == gm_weight(spec.ideal_gens[static_cast<std::size_t>(l)]));
    }
}

}  // namespace

TEST_CASE("presentation of small ideals") {
    auto spec = trivial_problem({"x", "y"}, {1, 1}, {"x", "y"}, 1);
    auto pres = build_presentation(spec);
    CHECK(pres.n2() == 1);
    CHECK(matrix_mul(pres.A0, pres.B0).is_zero());
    // Koszul column up to sign
    auto c = pres.B0.column_vector(0);
    CHECK((c[0] == P("-y", spec.ring) || c[0] == P("y", spec.ring)));
    CHECK(c[1] == (c[0] == P("-y", spec.ring) ? P("x", spec.ring) : P("-x", spec.ring)));

    auto spec2 = trivial_problem({"x"}, {1}, {"x^2"}, 2);
    auto pres2 = build_presentation(spec2);
    CHECK(pres2.n2() == 0);
}

TEST_CASE("trivial group, I = (x^2, y): tangent dimension 4 and unobstructed") {
    auto spec = trivial_problem({"x", "y"}, {1, 2}, {"x^2", "y"}, 2);
    spec.validate();
    auto pres = build_presentation(spec);
    auto cov = covariant_basis(spec, pres);
    CHECK(cov.size() == 4);
    auto tb = tangent_space(spec, pres, cov);
    CHECK(tb.dim() == brute_force_normal_dim(spec.ring, spec.ideal_gens, 4));
    CHECK(tb.dim() == 4);
    for (long w : tb.t_weights) CHECK(w > 0);
    auto res = run(spec, pres, tb);
    CHECK(res.stopped);
    CHECK(res.K.empty());
    CHECK(verify(res, spec).ok());
}

TEST_CASE("D = 0 gives no covariants") {
    auto spec = trivial_problem({"x"}, {1}, {"x^2"}, 0);
    auto pres = build_presentation(spec);
    CHECK(covariant_basis(spec, pres).empty());
}

TEST_CASE("covariant cap is reported") {
    auto spec = trivial_problem({"x", "y"}, {1, 1}, {"x^2", "y"}, 5);
    spec.options.max_covariant_degree = 3;
    auto pres = build_presentation(spec);
    CHECK_THROWS_AS(covariant_basis(spec, pres), CapError);
}

TEST_CASE("validation rejects a non-stable span") {
    ProblemSpec spec;
    spec.ring = make_ring(VariableSet({"a", "b", "c"}, {1, 1, 1}));
    spec.action = so3_action({"a", "b", "c"});
    spec.ideal_gens = Ps({"a"}, spec.ring);
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.ideal_gens = Ps({"a^2+b^2+c^2"}, spec.ring);
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("fat point (x,y)^2: tangent 6 and every order satisfies the invariants") {
    auto spec = trivial_problem({"x", "y"}, {1, 1}, {"x^2", "x*y", "y^2"}, 3);
    auto pres = build_presentation(spec);
    auto tb = tangent_space(spec, pres, covariant_basis(spec, pres));
    CHECK(tb.dim() == 6);
    CHECK(tb.dim() == brute_force_normal_dim(spec.ring, spec.ideal_gens, 4));
    auto s = first_order(spec, pres, tb);
    check_order_invariants(s, pres, spec);
    for (int k = 0; k < 3; ++k) {
        obstruction_step(s, pres, spec);
        check_order_invariants(s, pres, spec);
    }
    auto res = run(spec, pres, tb);
    CHECK(res.stopped);
    CHECK(res.K.empty());  // Hilb^3 of the plane is smooth
    CHECK(verify(res, spec).ok());
}

TEST_CASE("obstructed point (x,y,z)^2 of Hilb^4(A^3)") {
    auto spec = trivial_problem({"x", "y", "z"}, {1, 1, 1}, {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"}, 4);
    auto pres = build_presentation(spec);
    auto tb = tangent_space(spec, pres, covariant_basis(spec, pres));
    CHECK(tb.dim() == 18);
    CHECK(tb.dim() == brute_force_normal_dim(spec.ring, spec.ideal_gens, 3));
    auto s = first_order(spec, pres, tb);
    for (int k = 0; k < 2; ++k) {
        obstruction_step(s, pres, spec);
        check_order_invariants(s, pres, spec);
    }
    auto res = run(spec, pres, tb);
    CHECK(res.stopped);
    CHECK(verify(res, spec).ok());
    // Hilb^4(A^3) is irreducible of dimension 12
    CHECK(krull_dimension(res.t_ring, res.K) == 12);
}

TEST_CASE("verify catches a dropped generator and a perturbed coefficient") {
    auto spec = trivial_problem({"x", "y", "z"}, {1, 1, 1}, {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"}, 4);
    auto res = run(spec);
    REQUIRE(verify(res, spec).ok());
    REQUIRE(!res.K.empty());
    auto broken = res;
    broken.K.pop_back();
    CHECK(!verify(broken, spec).ok());

    ProblemSpec sspec;
    sspec.ring = make_ring(VariableSet({"a", "b", "c"}, {1, 1, 1}));
    sspec.action = so3_action({"a", "b", "c"});
    sspec.ideal_gens = Ps({"a^2+b^2+c^2"}, sspec.ring);
    sspec.n1_decomposition.push_back({1, 1});
    auto sres = run(sspec);
    REQUIRE(verify(sres, sspec).ok());
    auto bad = sres;
    bad.U.at(0, 0) += Polynomial::variable(bad.combined, 0) * Polynomial::variable(bad.combined, 1);
    auto rep = verify(bad, sspec);
    CHECK(!rep.ok());
}
