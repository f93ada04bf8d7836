#include "invdef/degeneration.hpp"

#include <algorithm>

namespace invdef {

std::vector<long> psg_weights(const std::vector<long>& n, const std::vector<int>& column, const std::vector<int>& sign) {
    if (sign.size() != column.size()) throw AlgebraError("one-parameter subgroup signs have the wrong length");
    std::vector<long> a;
    for (std::size_t v = 0; v < column.size(); ++v) {
        const int c = column[v];
        if (c < 0 || c >= static_cast<int>(n.size())) throw AlgebraError("one-parameter subgroup index out of range");
        a.push_back(sign[v] * n[static_cast<std::size_t>(c)]);
    }
    return a;
}

std::vector<Polynomial> flat_limit(const RingPtr& ring, const std::vector<Polynomial>& L, const std::vector<long>& a) {
    const int n = ring->nvars();
    if (static_cast<int>(a.size()) != n) throw AlgebraError("weight vector has the wrong length");
    if (n + 1 > kMaxVars) throw AlgebraError("too many variables for homogenization");
    if (std::all_of(a.begin(), a.end(), [](long x) { return x == 0; })) return buchberger(ring, L).generators();

    // lowest a-part = highest (-a)-part; the homogenizing variable gets weight 0,
    // and adding C times the degree keeps every weight positive
    const long C = *std::max_element(a.begin(), a.end()) + 1;
    auto names = ring->vars().names;
    names.push_back("_h");
    std::vector<long> w, ones(static_cast<std::size_t>(n + 1), 1);
    for (long x : a) w.push_back(C - x);
    w.push_back(C);
    auto hring = make_ring(VariableSet(names, ones), MonomialOrder::weighted(w));

    std::vector<Polynomial> hom;
    for (const auto& f : L) {
        if (f.is_zero()) continue;
        unsigned d = f.total_degree();
        std::vector<Term> terms;
        for (const auto& t : f.terms()) {
            Monomial m;
            for (int v = 0; v < n; ++v)
                if (t.m[v]) m.set(v, t.m[v]);
            m.set(n, d - t.m.deg);
            terms.push_back({m, t.c});
        }
        hom.push_back(Polynomial::from_terms(hring, std::move(terms)));
    }
    auto gb = buchberger(hring, hom);

    std::vector<Polynomial> init;
    for (const auto& g : gb.generators()) {
        long long top = mono_weight(g.leading().m, w);
        std::vector<Term> terms;
        for (const auto& t : g.terms()) {
            if (mono_weight(t.m, w) != top) continue;
            Monomial m;
            for (int v = 0; v < n; ++v)
                if (t.m[v]) m.set(v, t.m[v]);
            terms.push_back({m, t.c});
        }
        init.push_back(Polynomial::from_terms(ring, std::move(terms)));
    }
    return buchberger(ring, init).generators();
}

}  // namespace invdef
