#pragma once

#include <vector>

#include "invdef/groebner.hpp"

namespace invdef::detail {

struct MTerm {
    Monomial m;
    Rational c;
};
using MPoly = std::vector<MTerm>;

// Term-over-position order; components >= main_rank hold transformation records
// and always rank below every main component.
struct Ctx {
    MonomialOrder order;
    int nvars = 0;
    std::uint32_t main_rank = 1;

    bool tracking(const Monomial& m) const { return m.comp >= main_rank; }
    int cmp(const Monomial& a, const Monomial& b) const {
        bool ta = tracking(a), tb = tracking(b);
        if (ta != tb) return ta ? -1 : 1;
        int c = order.compare(a, b, nvars);
        if (c) return c;
        if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
        return 0;
    }
};

void sort_mpoly(MPoly& p, const Ctx& ctx);  // sorts and combines like terms
bool main_zero(const MPoly& p, const Ctx& ctx);
MPoly mul_term(const MPoly& p, const Monomial& m, const Rational& c);

struct ReductionStep {
    int elem;
    Monomial mult;
    Rational coeff;
};

class GBCore {
public:
    Ctx ctx;
    std::vector<MPoly> elems;  // all elements ever created
    std::vector<int> active;   // current basis (indices into elems), insertion order
    std::vector<std::vector<int>> by_comp;

    // Full (or top) reduction of the main part against the active elements.
    MPoly reduce(MPoly f, bool full, std::vector<ReductionStep>* log = nullptr) const;
    int find_divisor(const Monomial& m) const;
    void rebuild_index();

    const Monomial& lm(int k) const { return elems[static_cast<std::size_t>(k)].front().m; }
};

struct RunResult {
    GBCore core;
    std::vector<MPoly> syzygies;  // tracking parts of lifted S-pairs and input reductions
};

// inputs carry their tracking terms already. The final active set is interreduced
// and sorted by increasing leading monomial.
RunResult run_buchberger(const Ctx& ctx, std::vector<MPoly> inputs, const GBOptions& opts,
                         bool collect_syzygies);

MPoly to_mpoly(const Polynomial& p, std::uint32_t comp);
MPoly to_mpoly(const FreeModuleElement& v, const Ctx& ctx, std::uint32_t comp_offset = 0);
Polynomial main_to_polynomial(const MPoly& p, const RingPtr& ring, std::uint32_t comp);
FreeModuleElement comps_to_vector(const MPoly& p, const RingPtr& ring, std::uint32_t first, int count);

}  // namespace invdef::detail
