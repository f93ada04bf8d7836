#include "doctest.h"
#include "helpers.hpp"

#include <algorithm>

#include "invdef/degeneration.hpp"

using namespace invdef;
using namespace testing_util;

namespace {

bool same_ideal(const RingPtr& r, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
    auto ga = buchberger(r, a), gb = buchberger(r, b);
    for (const auto& f : a)
        if (!ideal_membership(f, gb)) return false;
    for (const auto& f : b)
        if (!ideal_membership(f, ga)) return false;
    return true;
}

// number of standard monomials (for a zero-dimensional ideal, its colength) of total degree <= maxdeg
int colength(const RingPtr& r, const std::vector<Polynomial>& gens, int maxdeg) {
    auto gb = buchberger(r, gens);
    const std::vector<long> ones(static_cast<std::size_t>(r->nvars()), 1);
    int n = 0;
    for (int d = 0; d <= maxdeg; ++d)
        for (const auto& m : monomials_of_weight(r->nvars(), ones, d))
            if (std::none_of(gb.generators().begin(), gb.generators().end(),
                             [&](const Polynomial& g) { return mono_divides(g.leading().m, m); }))
                ++n;
    return n;
}

}  // namespace

TEST_CASE("flat limit with zero weights is the ideal itself") {
    auto r = ring_of({"x", "y"});
    auto L = Ps({"x^2-y", "x*y-1"}, r);
    CHECK(same_ideal(r, flat_limit(r, L, {0, 0}), L));
}

TEST_CASE("flat limit of a hypersurface is its initial form") {
    auto r = ring_of({"x", "y"});
    CHECK(same_ideal(r, flat_limit(r, Ps({"x+y^2"}, r), {1, 0}), Ps({"y^2"}, r)));
    CHECK(same_ideal(r, flat_limit(r, Ps({"x+y^2"}, r), {1, 1}), Ps({"x"}, r)));
    CHECK(same_ideal(r, flat_limit(r, Ps({"x+y^2"}, r), {2, 1}), Ps({"x+y^2"}, r)));
}

TEST_CASE("points escaping to infinity and collapsing to the origin") {
    auto r = ring_of({"x", "y"});
    // scaling by t^1 pushes (1,2) away: the limit is empty
    auto lim = flat_limit(r, Ps({"x-1", "y-2"}, r), {1, 1});
    CHECK(same_ideal(r, lim, Ps({"1"}, r)));
    // scaling by t^-1 brings it to the origin
    CHECK(same_ideal(r, flat_limit(r, Ps({"x-1", "y-2"}, r), {-1, -1}), Ps({"x", "y"}, r)));
    // two points on the diagonal collapse to a double point along it
    auto two = Ps({"x^2-1", "y-x"}, r);
    auto lim2 = flat_limit(r, two, {-1, -1});
    CHECK(same_ideal(r, lim2, Ps({"x^2", "y-x"}, r)));
    CHECK(colength(r, lim2, 4) == colength(r, two, 4));
}

TEST_CASE("flat limits preserve colength and are idempotent") {
    auto r = ring_of({"x", "y", "z"});
    auto L = Ps({"x^2-y-1", "y^2-z", "z^2-x+2"}, r);
    const std::vector<std::vector<long>> ws = {{-1, -2, -3}, {-2, -1, -1}, {-1, -1, -1}, {-3, -3, -1}};
    const int c = colength(r, L, 8);
    REQUIRE(c == 8);
    for (const auto& a : ws) {
        auto L0 = flat_limit(r, L, a);
        CHECK(colength(r, L0, 8) == c);
        CHECK(same_ideal(r, flat_limit(r, L0, a), L0));
        // positive rescaling of the weights gives the same limit
        std::vector<long> a2;
        for (long x : a) a2.push_back(2 * x);
        CHECK(same_ideal(r, flat_limit(r, L, a2), L0));
        // the limit is stable under the torus: every generator is a-homogeneous
        for (const auto& g : L0) {
            long long w0 = mono_weight(g.terms().front().m, a);
            for (const auto& t : g.terms()) CHECK(mono_weight(t.m, a) == w0);
        }
    }
}

TEST_CASE("one-parameter subgroup weights by column") {
    CHECK(psg_weights({-3, -2, -1}, {0, 1, 2, 0, 1, 2}, {1, 1, 1, 1, 1, 1}) ==
          std::vector<long>{-3, -2, -1, -3, -2, -1});
    CHECK(psg_weights({1, 2}, {1, 0}, {-1, 1}) == std::vector<long>{-2, 1});
    CHECK_THROWS_AS(psg_weights({1}, {1}, {1}), AlgebraError);
    CHECK_THROWS_AS(psg_weights({1}, {0, 0}, {1}), AlgebraError);
}
