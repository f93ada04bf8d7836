#pragma once

#include <random>
#include <string>
#include <vector>

#include "invdef/groebner.hpp"

namespace testing_util {

using namespace invdef;

inline RingPtr ring_of(const std::vector<std::string>& names, MonomialOrder order = MonomialOrder::grevlex()) {
    return make_ring(VariableSet::unweighted(names), std::move(order));
}

inline Polynomial P(const std::string& s, const RingPtr& r) { return parse_polynomial(s, r); }

inline std::vector<Polynomial> Ps(const std::vector<std::string>& s, const RingPtr& r) {
    std::vector<Polynomial> out;
    for (const auto& x : s) out.push_back(parse_polynomial(x, r));
    return out;
}

// Random sparse polynomial with small integer coefficients.
inline Polynomial random_poly(const RingPtr& r, std::mt19937& rng, int terms, int maxdeg) {
    std::uniform_int_distribution<int> coef(-4, 4), deg(0, maxdeg), var(0, r->nvars() - 1);
    std::vector<Term> ts;
    for (int k = 0; k < terms; ++k) {
        Monomial m;
        int d = deg(rng);
        for (int j = 0; j < d; ++j) {
            int v = var(rng);
            m.set(v, m[v] + 1);
        }
        ts.push_back({m, Rational(coef(rng))});
    }
    return Polynomial::from_terms(r, std::move(ts));
}

// Random homogeneous polynomial of total degree d.
inline Polynomial random_homogeneous(const RingPtr& r, std::mt19937& rng, int terms, int d) {
    std::uniform_int_distribution<int> coef(-3, 3), var(0, r->nvars() - 1);
    std::vector<Term> ts;
    for (int k = 0; k < terms; ++k) {
        Monomial m;
        for (int j = 0; j < d; ++j) {
            int v = var(rng);
            m.set(v, m[v] + 1);
        }
        ts.push_back({m, Rational(coef(rng))});
    }
    return Polynomial::from_terms(r, std::move(ts));
}

inline std::vector<Monomial> monomials_of_weight(int nvars, const std::vector<long>& w, long target) {
    std::vector<Monomial> out;
    Monomial cur;
    auto rec = [&](auto& self, int v, long left) -> void {
        if (v == nvars) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (unsigned e = 0; static_cast<long>(e) * w[static_cast<std::size_t>(v)] <= left; ++e) {
            cur.set(v, e);
            self(self, v + 1, left - static_cast<long>(e) * w[static_cast<std::size_t>(v)]);
        }
        cur.set(v, 0);
    };
    rec(rec, 0, target);
    return out;
}

}  // namespace testing_util

#include "invdef/group_action.hpp"

namespace testing_util {

inline invdef::QMatrix qmat(const std::vector<std::vector<int>>& rows) {
    invdef::QMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

// so3 acting on the span of three variables: L1 = E23 - E32, L2 = E31 - E13, L3 = E12 - E21.
inline invdef::GroupAction so3_action(std::vector<std::string> names) {
    invdef::GroupAction a;
    a.vars = std::move(names);
    a.finite.push_back(invdef::QMatrix::identity(3));
    auto L1 = qmat({{0, 0, 0}, {0, 0, 1}, {0, -1, 0}});
    auto L2 = qmat({{0, 0, -1}, {0, 0, 0}, {1, 0, 0}});
    auto L3 = qmat({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
    for (const auto& L : {L1, L2, L3}) {
        a.lie.push_back(L);
        a.lie_dual.push_back(L.scaled(invdef::Rational(-1, 2)));
    }
    return a;
}

}  // namespace testing_util
