#include "invdef/detail/gb_core.hpp"

#include <algorithm>

namespace invdef::detail {

void sort_mpoly(MPoly& p, const Ctx& ctx) {
    std::sort(p.begin(), p.end(), [&](const MTerm& a, const MTerm& b) { return ctx.cmp(a.m, b.m) > 0; });
    MPoly out;
    out.reserve(p.size());
    for (auto& t : p) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c += t.c;
            if (out.back().c == 0) out.pop_back();
        } else if (t.c != 0) {
            out.push_back(std::move(t));
        }
    }
    p.swap(out);
}

bool main_zero(const MPoly& p, const Ctx& ctx) { return p.empty() || ctx.tracking(p.front().m); }

MPoly mul_term(const MPoly& p, const Monomial& m, const Rational& c) {
    MPoly out;
    out.reserve(p.size());
    for (const auto& t : p) out.push_back({mono_mul(t.m, m), t.c * c});
    return out;
}

namespace {

// out = f[pos+1..] - c * q * g[1..], where f[pos] cancels against c*q*lm(g) (g monic).
void sub_mul(MPoly& f, std::size_t pos, const Rational& c, const Monomial& q, const MPoly& g,
             const Ctx& ctx, MPoly& out) {
    out.clear();
    out.reserve(f.size() - pos + g.size());
    std::size_t i = pos + 1, j = 1;
    Monomial gm;
    if (j < g.size()) gm = mono_mul(g[j].m, q);
    while (i < f.size() && j < g.size()) {
        int s = ctx.cmp(f[i].m, gm);
        if (s > 0) {
            out.push_back(std::move(f[i++]));
        } else if (s < 0) {
            out.push_back({gm, -(c * g[j].c)});
            if (++j < g.size()) gm = mono_mul(g[j].m, q);
        } else {
            Rational v = f[i].c - c * g[j].c;
            if (v != 0) out.push_back({f[i].m, std::move(v)});
            ++i;
            if (++j < g.size()) gm = mono_mul(g[j].m, q);
        }
    }
    for (; i < f.size(); ++i) out.push_back(std::move(f[i]));
    for (; j < g.size(); ++j) out.push_back({mono_mul(g[j].m, q), -(c * g[j].c)});
}

void make_monic(MPoly& p) {
    if (p.front().c == 1) return;
    Rational inv = 1 / p.front().c;
    for (auto& t : p) t.c *= inv;
}

}  // namespace

int GBCore::find_divisor(const Monomial& m) const {
    if (m.comp >= by_comp.size()) return -1;
    for (int k : by_comp[m.comp])
        if (mono_divides(lm(k), m)) return k;
    return -1;
}

void GBCore::rebuild_index() {
    by_comp.clear();
    for (int k : active) {
        std::uint32_t c = lm(k).comp;
        if (c >= by_comp.size()) by_comp.resize(c + 1);
        by_comp[c].push_back(k);
    }
}

MPoly GBCore::reduce(MPoly f, bool full, std::vector<ReductionStep>* log) const {
    MPoly rem, scratch;
    std::size_t pos = 0;
    while (pos < f.size()) {
        const Monomial& m = f[pos].m;
        int d = ctx.tracking(m) ? -1 : find_divisor(m);
        if (d < 0) {
            if (!full || ctx.tracking(m)) {
                for (; pos < f.size(); ++pos) rem.push_back(std::move(f[pos]));
                break;
            }
            rem.push_back(std::move(f[pos]));
            ++pos;
            continue;
        }
        Monomial q = mono_div(m, lm(d));
        Rational c = f[pos].c;
        if (log) log->push_back({d, q, c});
        sub_mul(f, pos, c, q, elems[static_cast<std::size_t>(d)], ctx, scratch);
        f.swap(scratch);
        pos = 0;
    }
    return rem;
}

namespace {

struct Pair {
    int i, j;
    Monomial lcm;
    long long deg;
};

class Runner {
public:
    Runner(const Ctx& ctx, const GBOptions& opts) : opts_(opts) {
        core_.ctx = ctx;
        product_ok_ = opts.use_criteria && ctx.main_rank == 1;
    }

    GBCore& core() { return core_; }

    long long degree(const Monomial& m) const {
        long long d = opts_.grading.empty() ? static_cast<long long>(m.deg) : mono_weight(m, opts_.grading);
        if (m.comp < opts_.comp_shifts.size()) d += opts_.comp_shifts[m.comp];
        return d;
    }

    void add(MPoly p) {
        make_monic(p);
        int h = static_cast<int>(core_.elems.size());
        core_.elems.push_back(std::move(p));
        if (opts_.use_criteria) {
            update(h);
        } else {
            for (int g : core_.active)
                if (core_.lm(g).comp == core_.lm(h).comp) push_pair(g, h, B_);
            core_.active.push_back(h);
        }
        core_.rebuild_index();
    }

    MPoly spoly(const Pair& p) const {
        const MPoly& a = core_.elems[static_cast<std::size_t>(p.i)];
        const MPoly& b = core_.elems[static_cast<std::size_t>(p.j)];
        MPoly s = mul_term(a, mono_div(p.lcm, a.front().m), 1);
        MPoly out;
        sub_mul(s, 0, Rational(1), mono_div(p.lcm, b.front().m), b, core_.ctx, out);
        return out;
    }

    void run() {
        const bool normal = opts_.selection == GBOptions::Selection::Normal;
        while (!B_.empty()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < B_.size(); ++k)
                if (better(B_[k], B_[best], normal)) best = k;
            Pair p = B_[best];
            B_[best] = B_.back();
            B_.pop_back();
            if (opts_.max_degree && p.deg > *opts_.max_degree) {
                if (normal) break;
                continue;
            }
            MPoly r = core_.reduce(spoly(p), true);
            if (main_zero(r, core_.ctx)) continue;
            add(std::move(r));
        }
    }

    void interreduce() {
        const Ctx& ctx = core_.ctx;
        std::vector<int> act = core_.active;
        std::sort(act.begin(), act.end(),
                  [&](int a, int b) { return ctx.cmp(core_.lm(a), core_.lm(b)) < 0; });
        std::vector<int> kept;
        for (std::size_t x = 0; x < act.size(); ++x) {
            bool redundant = false;
            for (std::size_t y = 0; y < act.size() && !redundant; ++y) {
                if (x == y) continue;
                const Monomial& a = core_.lm(act[y]);
                const Monomial& b = core_.lm(act[x]);
                if (mono_divides(a, b) && (a != b || y < x)) redundant = true;
            }
            if (!redundant) kept.push_back(act[x]);
        }
        core_.active = kept;
        core_.rebuild_index();
        for (int k : kept) {
            MPoly& e = core_.elems[static_cast<std::size_t>(k)];
            MPoly tail(std::make_move_iterator(e.begin() + 1), std::make_move_iterator(e.end()));
            MPoly head;
            head.push_back(std::move(e.front()));
            MPoly red = core_.reduce(std::move(tail), true);
            for (auto& t : red) head.push_back(std::move(t));
            e.swap(head);
        }
    }

private:
    bool better(const Pair& a, const Pair& b, bool normal) const {
        if (normal) {
            if (a.deg != b.deg) return a.deg < b.deg;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        }
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    }

    void push_pair(int g, int h, std::vector<Pair>& out) const {
        Monomial l = mono_lcm(core_.lm(g), core_.lm(h));
        out.push_back({std::min(g, h), std::max(g, h), l, degree(l)});
    }

    // Gebauer-Möller update.
    void update(int h) {
        const Monomial& lh = core_.lm(h);
        std::vector<Pair> C;
        for (int g : core_.active)
            if (core_.lm(g).comp == lh.comp) push_pair(g, h, C);
        auto other = [&](const Pair& p) { return p.i == h ? p.j : p.i; };
        std::vector<Pair> D;
        for (std::size_t k = 0; k < C.size(); ++k) {
            const Pair& p = C[k];
            bool keep = true;
            if (!(product_ok_ && mono_coprime(lh, core_.lm(other(p))))) {
                for (std::size_t q = k + 1; q < C.size() && keep; ++q)
                    if (mono_divides(C[q].lcm, p.lcm)) keep = false;
                for (std::size_t q = 0; q < D.size() && keep; ++q)
                    if (mono_divides(D[q].lcm, p.lcm)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<Pair> next;
        next.reserve(B_.size() + D.size());
        for (auto& p : B_) {
            bool drop = false;
            if (mono_divides(lh, p.lcm)) {
                Monomial li = mono_lcm(core_.lm(p.i), lh);
                Monomial lj = mono_lcm(core_.lm(p.j), lh);
                if (li != p.lcm && lj != p.lcm) drop = true;
            }
            if (!drop) next.push_back(std::move(p));
        }
        for (auto& p : D)
            if (!(product_ok_ && mono_coprime(lh, core_.lm(other(p))))) next.push_back(std::move(p));
        B_.swap(next);
        std::vector<int> act;
        for (int g : core_.active)
            if (!mono_divides(lh, core_.lm(g))) act.push_back(g);
        act.push_back(h);
        core_.active.swap(act);
    }

    GBOptions opts_;
    GBCore core_;
    std::vector<Pair> B_;
    bool product_ok_ = false;
};

}  // namespace

RunResult run_buchberger(const Ctx& ctx, std::vector<MPoly> inputs, const GBOptions& opts,
                         bool collect_syzygies) {
    Runner runner(ctx, opts);
    for (auto& f : inputs) sort_mpoly(f, ctx);
    for (const auto& f : inputs) {
        if (main_zero(f, ctx)) continue;
        MPoly r = runner.core().reduce(f, true);
        if (main_zero(r, ctx)) continue;
        runner.add(std::move(r));
    }
    runner.run();
    runner.interreduce();

    RunResult out;
    out.core = std::move(runner.core());
    if (collect_syzygies) {
        GBCore& core = out.core;
        const auto& act = core.active;
        for (std::size_t a = 0; a < act.size(); ++a)
            for (std::size_t b = a + 1; b < act.size(); ++b) {
                const Monomial& la = core.lm(act[a]);
                const Monomial& lb = core.lm(act[b]);
                if (la.comp != lb.comp) continue;
                Monomial l = mono_lcm(la, lb);
                MPoly s = mul_term(core.elems[static_cast<std::size_t>(act[a])], mono_div(l, la), 1);
                MPoly d;
                sub_mul(s, 0, Rational(1), mono_div(l, lb), core.elems[static_cast<std::size_t>(act[b])],
                        core.ctx, d);
                MPoly r = core.reduce(std::move(d), true);
                if (!main_zero(r, ctx)) throw AlgebraError("internal: S-pair of final basis not reducing to zero");
                if (!r.empty()) out.syzygies.push_back(std::move(r));
            }
        for (auto& f : inputs) {
            MPoly r = core.reduce(std::move(f), true);
            if (!main_zero(r, ctx)) throw AlgebraError("internal: input generator not reducing to zero");
            if (!r.empty()) out.syzygies.push_back(std::move(r));
        }
    }
    return out;
}

MPoly to_mpoly(const Polynomial& p, std::uint32_t comp) {
    MPoly out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m = t.m;
        m.comp = comp;
        out.push_back({m, t.c});
    }
    return out;
}

MPoly to_mpoly(const FreeModuleElement& v, const Ctx& ctx, std::uint32_t comp_offset) {
    MPoly out;
    for (std::size_t k = 0; k < v.size(); ++k)
        for (const auto& t : v[k].terms()) {
            Monomial m = t.m;
            m.comp = comp_offset + static_cast<std::uint32_t>(k);
            out.push_back({m, t.c});
        }
    sort_mpoly(out, ctx);
    return out;
}

Polynomial main_to_polynomial(const MPoly& p, const RingPtr& ring, std::uint32_t comp) {
    std::vector<Term> terms;
    for (const auto& t : p)
        if (t.m.comp == comp) {
            Monomial m = t.m;
            m.comp = 0;
            terms.push_back({m, t.c});
        }
    return Polynomial::from_terms(ring, std::move(terms));
}

FreeModuleElement comps_to_vector(const MPoly& p, const RingPtr& ring, std::uint32_t first, int count) {
    std::vector<std::vector<Term>> parts(static_cast<std::size_t>(count));
    for (const auto& t : p) {
        if (t.m.comp < first || t.m.comp >= first + static_cast<std::uint32_t>(count)) continue;
        Monomial m = t.m;
        m.comp = 0;
        parts[t.m.comp - first].push_back({m, t.c});
    }
    FreeModuleElement v;
    v.reserve(parts.size());
    for (auto& part : parts) v.push_back(Polynomial::from_terms(ring, std::move(part)));
    return v;
}

}  // namespace invdef::detail
