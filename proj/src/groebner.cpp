#include "invdef/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "invdef/detail/gb_core.hpp"
#include "invdef/linalg.hpp"

namespace invdef {

using detail::Ctx;
using detail::GBCore;
using detail::MPoly;
using detail::MTerm;

namespace {

Ctx make_ctx(const RingPtr& ring, std::uint32_t rank) {
    Ctx ctx;
    ctx.order = ring->order();
    ctx.nvars = ring->nvars();
    ctx.main_rank = rank;
    return ctx;
}

Polynomial elem_to_poly(const MPoly& p, const RingPtr& ring) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p) terms.push_back({t.m, t.c});
    return Polynomial::from_sorted(ring, std::move(terms));
}

}  // namespace

bool GroebnerBasis::is_unit() const { return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero(); }

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : gens_) out.push_back(g.leading().m);
    return out;
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens, const GBOptions& opts) {
    Ctx ctx = make_ctx(ring, 1);
    std::vector<MPoly> inputs;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.ring()->same_as(*ring)) throw AlgebraError("generator from a different ring");
        inputs.push_back(detail::to_mpoly(g, 0));
    }
    auto res = detail::run_buchberger(ctx, std::move(inputs), opts, false);
    auto core = std::make_shared<GBCore>(std::move(res.core));
    std::vector<Polynomial> out;
    for (int k : core->active) out.push_back(elem_to_poly(core->elems[static_cast<std::size_t>(k)], ring));
    return GroebnerBasis(ring, std::move(out), std::move(core));
}

NormalForm normal_form(const Polynomial& f, const GroebnerBasis& gb) {
    const GBCore& core = gb.core();
    std::vector<detail::ReductionStep> log;
    MPoly r = core.reduce(detail::to_mpoly(f.in_ring(gb.ring()), 0), true, &log);
    NormalForm nf;
    nf.remainder = elem_to_poly(r, gb.ring());
    std::map<int, std::size_t> pos;
    for (std::size_t k = 0; k < core.active.size(); ++k) pos[core.active[k]] = k;
    std::vector<std::vector<Term>> cof(core.active.size());
    for (auto& s : log) cof[pos.at(s.elem)].push_back({s.mult, s.coeff});
    for (auto& c : cof) nf.cofactors.push_back(Polynomial::from_terms(gb.ring(), std::move(c)));
    return nf;
}

Polynomial reduce(const Polynomial& f, const GroebnerBasis& gb) {
    return elem_to_poly(gb.core().reduce(detail::to_mpoly(f.in_ring(gb.ring()), 0), true), gb.ring());
}

std::vector<Monomial> ModuleGB::leading_monomials() const {
    std::vector<Monomial> out;
    for (int k : core_->active) out.push_back(core_->lm(k));
    return out;
}

ModuleGB module_gb(const RingPtr& ring, int rank, const std::vector<FreeModuleElement>& gens,
                   const std::vector<int>& track_slot, int num_slots, const GBOptions& opts) {
    if (rank <= 0) throw AlgebraError("module rank must be positive");
    if (track_slot.size() != gens.size()) throw AlgebraError("track_slot size mismatch");
    Ctx ctx = make_ctx(ring, static_cast<std::uint32_t>(rank));
    std::vector<MPoly> inputs;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (static_cast<int>(gens[k].size()) != rank) throw AlgebraError("module element of wrong rank");
        FreeModuleElement v;
        for (const auto& p : gens[k]) v.push_back(p.in_ring(ring));
        MPoly m = detail::to_mpoly(v, ctx, 0);
        if (track_slot[k] >= 0) {
            if (track_slot[k] >= num_slots) throw AlgebraError("track slot out of range");
            Monomial one;
            one.comp = static_cast<std::uint32_t>(rank + track_slot[k]);
            m.push_back({one, Rational(1)});
        }
        inputs.push_back(std::move(m));
    }
    auto res = detail::run_buchberger(ctx, std::move(inputs), opts, false);
    ModuleGB gb;
    gb.ring_ = ring;
    gb.rank_ = rank;
    gb.num_inputs_ = num_slots;
    gb.tracked_ = num_slots > 0;
    auto core = std::make_shared<GBCore>(std::move(res.core));
    for (int k : core->active) {
        const MPoly& e = core->elems[static_cast<std::size_t>(k)];
        gb.basis_.push_back(detail::comps_to_vector(e, ring, 0, rank));
        if (gb.tracked_)
            gb.transforms_.push_back(detail::comps_to_vector(e, ring, static_cast<std::uint32_t>(rank), num_slots));
    }
    gb.core_ = std::move(core);
    return gb;
}

ModuleGB module_gb(const RingPtr& ring, int rank, const std::vector<FreeModuleElement>& gens, bool track,
                   const GBOptions& opts) {
    std::vector<int> slots(gens.size(), -1);
    if (track)
        for (std::size_t k = 0; k < gens.size(); ++k) slots[k] = static_cast<int>(k);
    return module_gb(ring, rank, gens, slots, track ? static_cast<int>(gens.size()) : 0, opts);
}

ModuleNormalForm normal_form(const FreeModuleElement& f, const ModuleGB& gb) {
    if (static_cast<int>(f.size()) != gb.rank()) throw AlgebraError("module element of wrong rank");
    const GBCore& core = gb.core();
    FreeModuleElement v;
    for (const auto& p : f) v.push_back(p.in_ring(gb.ring()));
    MPoly r = core.reduce(detail::to_mpoly(v, core.ctx, 0), true);
    ModuleNormalForm nf;
    nf.remainder = detail::comps_to_vector(r, gb.ring(), 0, gb.rank());
    if (gb.tracked()) {
        // The tracking part accumulates minus the combination that was subtracted.
        auto t = detail::comps_to_vector(r, gb.ring(), static_cast<std::uint32_t>(gb.rank()), gb.num_inputs());
        for (auto& p : t) nf.coefficients.push_back(-p);
    }
    return nf;
}

std::optional<std::vector<Polynomial>> lift(const FreeModuleElement& target, const ModuleGB& gb) {
    if (!gb.tracked()) throw AlgebraError("lift requires a tracked basis");
    auto nf = normal_form(target, gb);
    for (const auto& p : nf.remainder)
        if (!p.is_zero()) return std::nullopt;
    return nf.coefficients;
}

std::optional<std::vector<Polynomial>> lift_through_module(const FreeModuleElement& target,
                                                           const std::vector<FreeModuleElement>& gens) {
    if (gens.empty()) {
        for (const auto& p : target)
            if (!p.is_zero()) return std::nullopt;
        return std::vector<Polynomial>{};
    }
    const RingPtr& ring = gens.front().front().ring();
    auto gb = module_gb(ring, static_cast<int>(target.size()), gens, true);
    return lift(target, gb);
}

namespace {

std::optional<long long> poly_degree(const Polynomial& f, const std::vector<long>& grading) {
    if (!grading.empty()) return weighted_degree(f, grading);
    if (f.is_zero()) return std::nullopt;
    unsigned d = f.leading().m.deg;
    for (const auto& t : f.terms())
        if (t.m.deg != d) return std::nullopt;
    return d;
}

std::optional<long long> column_degree(const FreeModuleElement& s, const std::vector<std::optional<long long>>& fdeg,
                                       const std::vector<long>& grading) {
    std::optional<long long> d;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k].is_zero()) continue;
        auto w = poly_degree(s[k], grading);
        if (!w) return std::nullopt;
        long long c = *w + *fdeg[k];
        if (d && *d != c) return std::nullopt;
        d = c;
    }
    return d;
}

}  // namespace

SyzygyResult syzygies_full(const PolyMatrix& row, const std::vector<long>& grading) {
    if (row.rows() != 1) throw AlgebraError("syzygies expects a single row");
    const RingPtr& ring = row.ring();
    const int n = row.cols();
    for (int k = 0; k < n; ++k)
        if (row.at(0, k).is_zero()) throw AlgebraError("syzygies expects nonzero entries");
    Ctx ctx = make_ctx(ring, 1);
    std::vector<MPoly> inputs;
    for (int k = 0; k < n; ++k) {
        MPoly m = detail::to_mpoly(row.at(0, k), 0);
        Monomial one;
        one.comp = static_cast<std::uint32_t>(1 + k);
        m.push_back({one, Rational(1)});
        inputs.push_back(std::move(m));
    }
    GBOptions opts;
    opts.grading = grading;
    auto res = detail::run_buchberger(ctx, std::move(inputs), opts, true);

    SyzygyResult out;
    for (const auto& s : res.syzygies) {
        auto v = detail::comps_to_vector(s, ring, 1, n);
        out.derived.push_back(std::move(v));
    }

    std::vector<std::optional<long long>> fdeg;
    bool homogeneous = true;
    for (int k = 0; k < n; ++k) {
        fdeg.push_back(poly_degree(row.at(0, k), grading));
        if (!fdeg.back()) homogeneous = false;
    }
    std::vector<std::pair<long long, std::size_t>> order;
    if (homogeneous) {
        for (std::size_t k = 0; k < out.derived.size(); ++k) {
            auto d = column_degree(out.derived[k], fdeg, grading);
            if (!d) {
                homogeneous = false;
                break;
            }
            order.emplace_back(*d, k);
        }
    }

    std::vector<FreeModuleElement> chosen;
    if (homogeneous) {
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t pos = 0;
        while (pos < order.size()) {
            long long d = order[pos].first;
            std::optional<ModuleGB> lower;
            if (!chosen.empty()) lower = module_gb(ring, n, chosen, false);
            MonomialIndexer idx;
            Echelon ech;
            for (; pos < order.size() && order[pos].first == d; ++pos) {
                const auto& s = out.derived[order[pos].second];
                FreeModuleElement r = lower ? normal_form(s, *lower).remainder : s;
                if (ech.insert(flatten(r, idx))) chosen.push_back(s);
            }
        }
    } else {
        MonomialIndexer idx;
        Echelon ech;
        for (const auto& s : out.derived)
            if (ech.insert(flatten(s, idx))) chosen.push_back(s);
    }

    out.complete = true;
    if (!chosen.empty()) {
        auto gb = module_gb(ring, n, chosen, false);
        for (const auto& s : out.derived) {
            auto r = normal_form(s, gb).remainder;
            for (const auto& p : r)
                if (!p.is_zero()) out.complete = false;
        }
    } else {
        out.complete = out.derived.empty();
    }
    out.matrix = PolyMatrix::from_columns(ring, n, chosen);
    return out;
}

PolyMatrix syzygies(const PolyMatrix& row) { return syzygies_full(row).matrix; }

bool ideal_membership(const Polynomial& f, const GroebnerBasis& gb) { return reduce(f, gb).is_zero(); }

bool ideal_membership(const Polynomial& f, const std::vector<Polynomial>& gens) {
    return ideal_membership(f, buchberger(f.ring(), gens));
}

bool ideal_contains(const GroebnerBasis& gb, const std::vector<Polynomial>& gens) {
    return std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return ideal_membership(g, gb); });
}

bool ideal_equal(const RingPtr& ring, const std::vector<Polynomial>& I, const std::vector<Polynomial>& J) {
    auto a = buchberger(ring, I);
    auto b = buchberger(ring, J);
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a.generators()[k] != b.generators()[k]) return false;
    return true;
}

std::vector<Polynomial> ideal_intersection(const RingPtr& ring, const std::vector<Polynomial>& I,
                                           const std::vector<Polynomial>& J) {
    if (ring->nvars() + 1 > kMaxVars) throw AlgebraError("too many variables for intersection");
    std::vector<std::string> names{"_elim_s"};
    std::vector<long> weights{0};
    for (int v = 0; v < ring->nvars(); ++v) {
        names.push_back(ring->name(v));
        weights.push_back(ring->weight(v));
    }
    auto big = make_ring(VariableSet(names, weights), MonomialOrder::elimination(1));
    Polynomial s = Polynomial::variable(big, 0);
    Polynomial one = Polynomial::constant(big, 1);
    std::vector<Polynomial> gens;
    for (const auto& f : I) gens.push_back(s * f.in_ring(big));
    for (const auto& g : J) gens.push_back((one - s) * g.in_ring(big));
    auto gb = buchberger(big, gens);
    std::vector<Polynomial> out;
    for (const auto& g : gb.generators())
        if (g.leading().m[0] == 0) out.push_back(g.in_ring(ring));
    auto red = buchberger(ring, out);
    return red.generators();
}

namespace {

// Size of a smallest set of variables meeting every support (branch and bound).
int min_transversal(const std::vector<std::uint32_t>& supports, std::uint32_t chosen, int size, int best) {
    if (size >= best) return best;
    const std::uint32_t* open = nullptr;
    for (const auto& s : supports)
        if ((s & chosen) == 0) {
            if (!open || __builtin_popcount(s) < __builtin_popcount(*open)) open = &s;
        }
    if (!open) return size;
    std::uint32_t s = *open;
    while (s) {
        int v = __builtin_ctz(s);
        s &= s - 1;
        best = min_transversal(supports, chosen | (1u << v), size + 1, best);
    }
    return best;
}

}  // namespace

int krull_dimension(const GroebnerBasis& gb) {
    if (gb.is_unit()) throw UnitIdealError();
    std::vector<std::uint32_t> supports;
    for (const auto& m : gb.leading_monomials()) supports.push_back(m.mask);
    int n = gb.ring()->nvars();
    return n - min_transversal(supports, 0, 0, n + 1);
}

int krull_dimension(const RingPtr& ring, const std::vector<Polynomial>& gens) {
    return krull_dimension(buchberger(ring, gens));
}

std::string HilbertNumerator::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const Integer& c = coeffs[k];
        if (c == 0) continue;
        Integer a = abs(c);
        if (c < 0) os << "-";
        else if (!first) os << "+";
        if (k == 0 || a != 1) os << a.get_str();
        if (k > 0) {
            if (a != 1) os << "*";
            os << "u";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

using Poly1 = std::vector<Integer>;

void trim(Poly1& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly1 add_shifted(const Poly1& a, const Poly1& b, long long shift, int sign) {
    Poly1 out = a;
    std::size_t need = b.size() + static_cast<std::size_t>(shift);
    if (out.size() < need) out.resize(need);
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (sign > 0) out[k + static_cast<std::size_t>(shift)] += b[k];
        else out[k + static_cast<std::size_t>(shift)] -= b[k];
    }
    trim(out);
    return out;
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.deg < b.deg; });
    std::vector<Monomial> out;
    for (const auto& g : gens) {
        bool red = false;
        for (const auto& h : out)
            if (mono_divides(h, g)) {
                red = true;
                break;
            }
        if (!red) out.push_back(g);
    }
    return out;
}

struct HilbertRec {
    const std::vector<long>& w;
    std::size_t cap;
    std::size_t nodes = 0;

    // Numerator for the monomial ideal generated by the minimal set `gens`.
    Poly1 run(const std::vector<Monomial>& gens) {
        if (++nodes > cap) throw HilbertGuardError("Hilbert numerator recursion exceeded node cap");
        // Pairwise coprime generators: product of (1 - u^w(g)).
        std::uint32_t seen = 0;
        bool coprime = true;
        for (const auto& g : gens) {
            if (g.mask & seen) {
                coprime = false;
                break;
            }
            seen |= g.mask;
        }
        if (coprime) {
            Poly1 p{Integer(1)};
            for (const auto& g : gens) p = add_shifted(p, p, mono_weight(g, w), -1);
            return p;
        }
        // Pivot x_v^e: v occurs in the most mixed generators, e is the least exponent
        // of v among them. Both J + p and J : p strictly contain J.
        int best = -1, count = 0;
        for (int v = 0; v < kMaxVars; ++v) {
            int c = 0;
            for (const auto& g : gens)
                if (g[v] > 0 && g[v] != g.deg) ++c;
            if (c > count) {
                count = c;
                best = v;
            }
        }
        unsigned e = 0;
        for (const auto& g : gens)
            if (g[best] > 0 && g[best] != g.deg && (e == 0 || g[best] < e)) e = g[best];
        Monomial p;
        p.set(best, e);
        // N(J) = N(J + p) + u^w(p) N(J : p)
        std::vector<Monomial> plus = gens;
        plus.push_back(p);
        std::vector<Monomial> colon;
        for (const auto& g : gens) {
            Monomial q = g;
            q.set(best, g[best] > p[best] ? g[best] - p[best] : 0);
            colon.push_back(q);
        }
        Poly1 a = run(minimalize(std::move(plus)));
        Poly1 b = run(minimalize(std::move(colon)));
        return add_shifted(a, b, mono_weight(p, w), 1);
    }
};

}  // namespace

HilbertNumerator hilbert_numerator_of_monomials(std::vector<Monomial> gens, const std::vector<long>& weights,
                                                std::size_t node_cap) {
    for (long x : weights)
        if (x <= 0) throw AlgebraError("Hilbert series weights must be positive");
    for (auto& g : gens) g.comp = 0;
    HilbertRec rec{weights, node_cap};
    HilbertNumerator out;
    out.coeffs = rec.run(minimalize(std::move(gens)));
    return out;
}

HilbertNumerator weighted_hilbert_series(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                         const std::vector<long>& weights) {
    if (static_cast<int>(weights.size()) != ring->nvars()) throw AlgebraError("weight vector length mismatch");
    for (const auto& g : gens)
        if (!g.is_zero() && !weighted_degree(g, weights))
            throw AlgebraError("generator not homogeneous for the given weights: " + to_string(g));
    GBOptions opts;
    opts.grading = weights;
    auto gb = buchberger(ring, gens, opts);
    return hilbert_numerator_of_monomials(gb.leading_monomials(), weights);
}

}  // namespace invdef
