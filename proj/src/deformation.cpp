#include "invdef/deformation.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "invdef/linalg.hpp"

namespace invdef {

namespace {

std::vector<long> weights_of(const RingPtr& r) { return r->vars().gm_weights; }

long weight_of(const Polynomial& f) {
    auto w = gm_weight(f);
    if (!w) throw InternalError("polynomial is not weight-homogeneous: " + to_string(f));
    return static_cast<long>(*w);
}

void monomials_of_weight(const Ring& r, long m, int v, Monomial& cur, std::vector<Monomial>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    if (v == r.nvars()) return;
    long w = r.weight(v);
    unsigned e0 = cur[v];
    for (unsigned e = 0; static_cast<long>(e) * w <= m; ++e) {
        cur.set(v, e0 + e);
        monomials_of_weight(r, m - static_cast<long>(e) * w, v + 1, cur, out);
    }
    cur.set(v, e0);
}

// Splits a monomial of the combined ring into its P-part and t-part.
std::pair<Monomial, Monomial> split_mono(const Monomial& m, int nw, int nt) {
    Monomial p, t;
    for (int v = 0; v < nw; ++v)
        if (m[v]) p.set(v, m[v]);
    for (int v = 0; v < nt; ++v)
        if (m[nw + v]) t.set(v, m[nw + v]);
    return {p, t};
}

Monomial join_mono(const Monomial& p, const Monomial& t, int nw, int nt) {
    Monomial m;
    for (int v = 0; v < nw; ++v)
        if (p[v]) m.set(v, p[v]);
    for (int v = 0; v < nt; ++v)
        if (t[v]) m.set(nw + v, t[v]);
    return m;
}

// sum over t-monomials of mu * X_mu, in the combined ring
PolyMatrix join_by_t(const std::map<Monomial, PolyMatrix, MonomialKeyLess>& parts, const RingPtr& combined, int nw,
                     int rows, int cols) {
    const int nt = combined->nvars() - nw;
    std::vector<std::vector<Term>> acc(static_cast<std::size_t>(rows * cols));
    for (const auto& [mu, x] : parts)
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                for (const auto& t : x.at(i, j).terms())
                    acc[static_cast<std::size_t>(i * cols + j)].push_back({join_mono(t.m, mu, nw, nt), t.c});
    PolyMatrix out(combined, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.at(i, j) = Polynomial::from_terms(combined, std::move(acc[static_cast<std::size_t>(i * cols + j)]));
    return out;
}

PolyMatrix times_t(const PolyMatrix& x, const Polynomial& t) {
    PolyMatrix out(t.ring(), x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out.at(i, j) = x.at(i, j).in_ring(t.ring()) * t;
    return out;
}

PolyMatrix reduce_entries(const PolyMatrix& m, const GroebnerBasis& gb) {
    PolyMatrix out(m.ring(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = reduce(m.at(i, j), gb);
    return out;
}

// Terms of t-degree exactly d.
PolyMatrix t_degree_part(const PolyMatrix& m, int nw, int d) {
    PolyMatrix out(m.ring(), m.rows(), m.cols());
    const int nv = m.ring()->nvars();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            std::vector<Term> keep;
            for (const auto& t : m.at(i, j).terms()) {
                int deg = 0;
                for (int v = nw; v < nv; ++v) deg += static_cast<int>(t.m[v]);
                if (deg == d) keep.push_back(t);
            }
            out.at(i, j) = Polynomial::from_sorted(m.ring(), std::move(keep));
        }
    return out;
}

std::string join_polys(const std::vector<Polynomial>& ps) {
    std::ostringstream os;
    for (std::size_t k = 0; k < ps.size(); ++k) os << (k ? ", " : "") << to_string(ps[k]);
    return os.str();
}

long min_weight(const std::vector<long>& w) { return w.empty() ? 1 : *std::min_element(w.begin(), w.end()); }

}  // namespace

PolyMatrix primitive_matrix(const PolyMatrix& m) {
    Integer den = 1, num = 0;
    const Term* lead = nullptr;
    for (const auto& p : m.entries())
        for (const auto& t : p.terms()) {
            if (!lead) lead = &t;
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
        }
    if (!lead) return m;
    Rational s(den, num);
    s.canonicalize();
    if (lead->c < 0) s = -s;
    return m * s;
}

std::map<Monomial, PolyMatrix, MonomialKeyLess> split_by_t(const PolyMatrix& m, const RingPtr& p_ring,
                                                          const RingPtr& t_ring) {
    const int nw = p_ring->nvars(), nt = t_ring->nvars();
    std::map<Monomial, std::vector<std::vector<Term>>, MonomialKeyLess> acc;
    const std::size_t n = static_cast<std::size_t>(m.rows() * m.cols());
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& t : m.entries()[k].terms()) {
            auto [p, mu] = split_mono(t.m, nw, nt);
            auto& slot = acc[mu];
            if (slot.empty()) slot.resize(n);
            slot[k].push_back({p, t.c});
        }
    std::map<Monomial, PolyMatrix, MonomialKeyLess> out;
    for (auto& [mu, slots] : acc) {
        PolyMatrix x(p_ring, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                x.at(i, j) = Polynomial::from_terms(p_ring, std::move(slots[static_cast<std::size_t>(i * m.cols() + j)]));
        out.emplace(mu, std::move(x));
    }
    return out;
}

std::map<Monomial, Polynomial, MonomialKeyLess> split_by_p(const PolyMatrix& m, const RingPtr& p_ring,
                                                          const RingPtr& t_ring) {
    const int nw = p_ring->nvars(), nt = t_ring->nvars();
    std::map<Monomial, std::vector<Term>, MonomialKeyLess> acc;
    const std::size_t n = static_cast<std::size_t>(m.rows() * m.cols());
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& t : m.entries()[k].terms()) {
            auto [p, mu] = split_mono(t.m, nw, nt);
            p.comp = static_cast<std::uint32_t>(k);
            acc[p].push_back({mu, t.c});
        }
    std::map<Monomial, Polynomial, MonomialKeyLess> out;
    for (auto& [p, terms] : acc) {
        Polynomial c = Polynomial::from_terms(t_ring, std::move(terms));
        if (!c.is_zero()) out.emplace(p, std::move(c));
    }
    return out;
}

std::vector<Polynomial> minimize_homogeneous(const RingPtr& ring, const std::vector<Polynomial>& gens) {
    std::map<long, std::vector<Polynomial>> by_weight;
    for (const auto& g : gens)
        if (!g.is_zero()) by_weight[weight_of(g)].push_back(g);
    const bool positive = min_weight(weights_of(ring)) > 0;
    std::vector<Polynomial> kept;
    for (auto& [w, group] : by_weight) {
        std::optional<GroebnerBasis> low;
        if (!kept.empty()) {
            GBOptions opts;
            opts.grading = weights_of(ring);
            if (positive) opts.max_degree = w;
            low = buchberger(ring, kept, opts);
        }
        MonomialIndexer idx;
        Echelon ech;
        std::vector<Polynomial> add;
        for (const auto& g : group) {
            Polynomial r = low ? reduce(g, *low) : g;
            if (r.is_zero()) continue;
            if (ech.insert(flatten(std::vector<Polynomial>{r}, idx))) add.push_back(primitive(r));
        }
        kept.insert(kept.end(), add.begin(), add.end());
    }
    return kept;
}

// ---------------------------------------------------------------------------

int ProblemSpec::covariant_count() const {
    int d = 0;
    for (const auto& c : n1_decomposition) d += c.multiplicity * c.hilbert_value;
    return d;
}

void ProblemSpec::validate() const {
    if (!ring) throw ValidationError("problem has no ring");
    for (int v = 0; v < ring->nvars(); ++v)
        if (ring->weight(v) < 1) throw ValidationError("G_m-weight of " + ring->name(v) + " must be positive");
    try {
        action.validate();
    } catch (const AlgebraError& e) {
        throw ValidationError(std::string("group action: ") + e.what());
    }
    for (const auto& name : action.vars)
        if (ring->vars().index_of(name) < 0) throw ValidationError("action variable " + name + " not in the ring");
    // G has to commute with G_m.
    auto wt = [&](std::size_t i) { return ring->weight(ring->vars().index_of(action.vars[i])); };
    auto commutes = [&](const QMatrix& m) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0 && wt(static_cast<std::size_t>(i)) != wt(static_cast<std::size_t>(j))) return false;
        return true;
    };
    for (const auto* list : {&action.lie, &action.lie_dual, &action.finite})
        for (const auto& m : *list)
            if (!commutes(m)) throw ValidationError("group action does not preserve the G_m-weights");
    if (ideal_gens.empty()) throw ValidationError("empty ideal");
    for (const auto& f : ideal_gens) {
        if (f.is_zero()) throw ValidationError("zero generator");
        if (!gm_weight(f)) throw ValidationError("generator not G_m-homogeneous: " + to_string(f));
    }
    RepResult rr;
    try {
        rr = rep_on_subspace(ideal_gens, action);
    } catch (const AlgebraError& e) {
        throw ValidationError(std::string("ideal generators: ") + e.what());
    }
    if (!rr.rep) {
        std::string w = rr.witness ? to_string(rr.witness->at(0, 0)) : "?";
        throw ValidationError("span of the generators is not G-stable; image outside the span: " + w);
    }
    for (const auto& c : n1_decomposition)
        if (c.multiplicity < 1 || c.hilbert_value < 0) throw ValidationError("bad n1_decomposition entry");
    for (const auto& f : invariants)
        if (!is_invariant(f, action)) throw ValidationError("not an invariant: " + to_string(f));
    if (options.max_covariant_degree < 0) throw ValidationError("max_covariant_degree must be nonnegative");
    if (options.max_order && *options.max_order < 1) throw ValidationError("max_order must be at least 1");
}

// ---------------------------------------------------------------------------

Presentation build_presentation(const ProblemSpec& spec) {
    Presentation pres;
    pres.ring = spec.ring;
    const auto w = weights_of(spec.ring);
    pres.A0 = PolyMatrix::row(spec.ring, spec.ideal_gens);
    for (const auto& f : spec.ideal_gens) pres.f_weights.push_back(weight_of(f));
    auto r1 = rep_on_subspace(spec.ideal_gens, spec.action);
    if (!r1.rep) throw ValidationError("span of the generators is not G-stable");
    pres.rho1 = *r1.rep;

    GBOptions gopts;
    gopts.grading = w;
    pres.gb = buchberger(spec.ring, spec.ideal_gens, gopts);
    std::vector<FreeModuleElement> singles;
    for (const auto& f : spec.ideal_gens) singles.push_back({f});
    pres.lift_gb = module_gb(spec.ring, 1, singles, true, gopts);

    const int n1 = pres.A0.cols();
    auto syz = syzygies_full(pres.A0, w);
    pres.syzygies_complete = syz.complete;
    // weight-homogeneous parts of the columns
    std::vector<PolyMatrix> seeds;
    for (int k = 0; k < syz.matrix.cols(); ++k) {
        std::map<long, PolyMatrix> parts;
        for (int l = 0; l < n1; ++l)
            for (const auto& t : syz.matrix.at(l, k).terms()) {
                long d = static_cast<long>(spec.ring->gm_weight(t.m)) + pres.f_weights[static_cast<std::size_t>(l)];
                auto it = parts.try_emplace(d, spec.ring, n1, 1).first;
                it->second.at(l, 0) += Polynomial::monomial(spec.ring, t.m, t.c);
            }
        for (auto& [d, m] : parts) seeds.push_back(std::move(m));
    }
    TwistedAction tw(spec.action, pres.rho1, Representation::trivial(spec.action, 1));
    auto cols = g_closure(seeds, tw);
    std::vector<FreeModuleElement> colv;
    for (const auto& c : cols) {
        colv.push_back(c.column_vector(0));
        long d = -1;
        for (int l = 0; l < n1 && d < 0; ++l)
            if (!c.at(l, 0).is_zero())
                d = static_cast<long>(spec.ring->gm_weight(c.at(l, 0).leading().m)) +
                    pres.f_weights[static_cast<std::size_t>(l)];
        pres.r_weights.push_back(d);
    }
    pres.B0 = cols.empty() ? PolyMatrix(spec.ring, n1, 0) : PolyMatrix::from_columns(spec.ring, n1, colv);
    if (cols.empty()) {
        pres.rho2 = Representation::trivial(spec.action, 0);
    } else {
        auto r2 = rep_on_subspace(cols, tw);
        if (!r2.rep) throw InternalError("closure of the syzygies is not G-stable");
        pres.rho2 = *r2.rep;
    }
    if (!matrix_mul(pres.A0, pres.B0).is_zero()) throw InternalError("A0 B0 is not zero");
    return pres;
}

// ---------------------------------------------------------------------------

std::vector<Covariant> covariant_basis(const ProblemSpec& spec, const Presentation& pres) {
    const int D = spec.covariant_count();
    std::vector<Covariant> out;
    if (D == 0) return out;
    const int n1 = pres.n1();
    TwistedAction tw(spec.action, Representation::trivial(spec.action, 1), pres.rho1);
    MonomialIndexer idx;
    Echelon ech;
    for (long m = 0; m <= spec.options.max_covariant_degree; ++m) {
        std::vector<Monomial> monos;
        Monomial cur;
        monomials_of_weight(*spec.ring, m, 0, cur, monos);
        for (const auto& p : monos)
            for (int l = 0; l < n1; ++l) {
                PolyMatrix e(spec.ring, 1, n1);
                e.at(0, l) = Polynomial::monomial(spec.ring, p);
                PolyMatrix r = tw.reynolds(e);
                if (r.is_zero()) continue;
                PolyMatrix res = reduce_entries(r, pres.gb);
                if (res.is_zero()) continue;
                if (!ech.insert(flatten(res, idx))) continue;
                long tw_ = 0;
                for (int k = 0; k < n1; ++k)
                    if (!res.at(0, k).is_zero()) {
                        tw_ = pres.f_weights[static_cast<std::size_t>(k)] - weight_of(res.at(0, k));
                        break;
                    }
                out.push_back({r, tw_});
                if (static_cast<int>(out.size()) == D) return out;
            }
    }
    throw CapError("covariant search reached weight " + std::to_string(spec.options.max_covariant_degree) +
                   " with rank " + std::to_string(out.size()) + " of " + std::to_string(D));
}

TangentBasis tangent_space(const ProblemSpec& spec, const Presentation& pres, const std::vector<Covariant>& cov) {
    (void)spec;
    std::vector<std::size_t> order(cov.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cov[a].t_weight < cov[b].t_weight; });
    const int nc = static_cast<int>(cov.size());
    MonomialIndexer idx;
    std::vector<SparseVec> images;
    for (std::size_t k : order) {
        PolyMatrix img = reduce_entries(matrix_mul(cov[k].row, pres.B0), pres.gb);
        images.push_back(flatten(img, idx));
    }
    QMatrix m(static_cast<int>(idx.size()), nc);
    for (int c = 0; c < nc; ++c)
        for (const auto& [r, x] : images[static_cast<std::size_t>(c)]) m(static_cast<int>(r), c) = x;
    TangentBasis tb;
    for (const auto& v : m.kernel()) {
        PolyMatrix s(pres.ring, 1, pres.n1());
        std::optional<long> wt;
        for (int c = 0; c < nc; ++c) {
            if (v[static_cast<std::size_t>(c)] == 0) continue;
            const auto& cv = cov[order[static_cast<std::size_t>(c)]];
            if (wt && *wt != cv.t_weight) throw InternalError("tangent vector is not weight-homogeneous");
            wt = cv.t_weight;
            s = s + cv.row * v[static_cast<std::size_t>(c)];
        }
        tb.rows.push_back(primitive_matrix(s));
        tb.t_weights.push_back(wt.value_or(0));
    }
    return tb;
}

// ---------------------------------------------------------------------------

PolyMatrix U_of(const DeformationState& s) {
    PolyMatrix u = s.A.front();
    for (std::size_t i = 1; i < s.A.size(); ++i) u = u + s.A[i];
    return u;
}

PolyMatrix V_of(const DeformationState& s) {
    PolyMatrix v = s.B.front();
    for (std::size_t i = 1; i < s.B.size(); ++i) v = v + s.B[i];
    return v;
}

namespace {

std::shared_ptr<const ModuleGB> build_coker(const Presentation& pres, long min_tw) {
    const int n1 = pres.n1(), n2 = pres.n2();
    if (n2 == 0) return nullptr;
    std::vector<FreeModuleElement> gens;
    std::vector<int> slots;
    for (int l = 0; l < n1; ++l) {
        auto row = pres.B0.row_vector(l);
        if (std::all_of(row.begin(), row.end(), [](const Polynomial& p) { return p.is_zero(); })) continue;
        gens.push_back(std::move(row));
        slots.push_back(l);
    }
    for (const auto& g : pres.gb.generators())
        for (int j = 0; j < n2; ++j) {
            FreeModuleElement e(static_cast<std::size_t>(n2), Polynomial(pres.ring));
            e[static_cast<std::size_t>(j)] = g;
            gens.push_back(std::move(e));
            slots.push_back(-1);
        }
    const long C = *std::max_element(pres.r_weights.begin(), pres.r_weights.end());
    GBOptions opts;
    opts.grading = weights_of(pres.ring);
    for (long r : pres.r_weights) opts.comp_shifts.push_back(C - r);
    if (min_tw > 0) opts.max_degree = C - 2 * min_tw;
    return std::make_shared<const ModuleGB>(module_gb(pres.ring, n2, gens, slots, n1, opts));
}

// Solves A0 X = target (1 x n2 entries in I) column by column.
PolyMatrix lift_through_ideal(const PolyMatrix& target, const Presentation& pres) {
    PolyMatrix x(pres.ring, pres.n1(), target.cols());
    for (int k = 0; k < target.cols(); ++k) {
        if (target.at(0, k).is_zero()) continue;
        auto cof = lift({target.at(0, k)}, pres.lift_gb);
        if (!cof) throw InternalError("entry does not lie in the ideal: " + to_string(target.at(0, k)));
        for (int l = 0; l < pres.n1(); ++l) x.at(l, k) = (*cof)[static_cast<std::size_t>(l)];
    }
    return x;
}

void recompute_K(DeformationState& s) {
    std::vector<Polynomial> cs;
    for (const auto& [sigma, c] : s.omega) cs.push_back(c);
    s.K = minimize_homogeneous(s.t_ring, cs);
}

}  // namespace

DeformationState first_order(const ProblemSpec& spec, const Presentation& pres, TangentBasis tangent) {
    DeformationState s;
    if (spec.options.positive_weight_only) {
        TangentBasis keep;
        for (int i = 0; i < tangent.dim(); ++i)
            if (tangent.t_weights[static_cast<std::size_t>(i)] > 0) {
                keep.rows.push_back(tangent.rows[static_cast<std::size_t>(i)]);
                keep.t_weights.push_back(tangent.t_weights[static_cast<std::size_t>(i)]);
            }
        s.log.push_back("positive-weight mode: kept " + std::to_string(keep.dim()) + " of " +
                        std::to_string(tangent.dim()) + " tangent directions");
        tangent = std::move(keep);
    }
    const int d = tangent.dim();
    const long min_tw = min_weight(tangent.t_weights);
    if (d > 0 && min_tw <= 0 && !spec.options.max_order)
        throw ValidationError("tangent weights are not all positive; set max_order or positive_weight_only");
    const int nw = spec.ring->nvars();
    if (nw + d > kMaxVars) throw CapError("too many variables for the combined ring");
    std::vector<std::string> tn;
    for (int i = 0; i < d; ++i) {
        std::string name = "t" + std::to_string(i + 1);
        if (spec.ring->vars().index_of(name) >= 0) throw ValidationError("variable name " + name + " is reserved");
        tn.push_back(name);
    }
    s.t_ring = make_ring(VariableSet(tn, tangent.t_weights));
    auto names = spec.ring->vars().names;
    auto weights = weights_of(spec.ring);
    names.insert(names.end(), tn.begin(), tn.end());
    weights.insert(weights.end(), tangent.t_weights.begin(), tangent.t_weights.end());
    s.combined = make_ring(VariableSet(names, weights));
    s.tangent = std::move(tangent);

    s.A.push_back(pres.A0.in_ring(s.combined));
    s.B.push_back(pres.B0.in_ring(s.combined));
    TwistedAction twB(spec.action, pres.rho1, pres.rho2);
    PolyMatrix A1(s.combined, 1, pres.n1()), B1(s.combined, pres.n1(), pres.n2());
    for (int i = 0; i < d; ++i) {
        Polynomial t = Polynomial::variable(s.combined, nw + i);
        const PolyMatrix& si = s.tangent.rows[static_cast<std::size_t>(i)];
        A1 = A1 + times_t(si, t);
        PolyMatrix x = lift_through_ideal(matrix_mul(si, pres.B0) * Rational(-1), pres);
        B1 = B1 + times_t(twB.reynolds(x), t);
    }
    s.A.push_back(A1);
    s.B.push_back(B1);
    s.order = 1;
    s.coker = build_coker(pres, min_tw);
    s.log.push_back("order 1: d = " + std::to_string(d));
    return s;
}

void obstruction_step(DeformationState& s, const Presentation& pres, const ProblemSpec& spec) {
    const int n = s.order;
    const int n1 = pres.n1(), n2 = pres.n2();
    const int nw = pres.ring->nvars();
    PolyMatrix M(s.combined, 1, n2);
    for (int i = 1; i <= n; ++i) M = M + matrix_mul(s.A[static_cast<std::size_t>(i)], s.B[static_cast<std::size_t>(n + 1 - i)]);
    std::map<Monomial, PolyMatrix, MonomialKeyLess> alpha, xs;
    std::size_t new_terms = 0;
    for (const auto& [mu, m] : split_by_t(M, pres.ring, s.t_ring)) {
        if (!s.coker) continue;
        FreeModuleElement target;
        for (int k = 0; k < n2; ++k) target.push_back(-m.at(0, k));
        auto nf = normal_form(target, *s.coker);
        PolyMatrix a(pres.ring, 1, n1);
        for (int l = 0; l < n1; ++l) a.at(0, l) = nf.coefficients[static_cast<std::size_t>(l)];
        // residual lies in I^{n2}
        PolyMatrix resid = m * Rational(-1) - matrix_mul(a, pres.B0);
        for (int k = 0; k < n2; ++k) {
            const Polynomial& r = nf.remainder[static_cast<std::size_t>(k)];
            resid.at(0, k) -= r;
            for (const auto& t : r.terms()) {
                Monomial sigma = t.m;
                sigma.comp = static_cast<std::uint32_t>(k);
                auto it = s.omega.try_emplace(sigma, s.t_ring).first;
                it->second += Polynomial::monomial(s.t_ring, mu, t.c);
                ++new_terms;
            }
        }
        alpha.emplace(mu, std::move(a));
        xs.emplace(mu, lift_through_ideal(resid, pres));
    }
    for (auto it = s.omega.begin(); it != s.omega.end();)
        it = it->second.is_zero() ? s.omega.erase(it) : std::next(it);

    TwistedAction twA(spec.action, Representation::trivial(spec.action, 1), pres.rho1);
    TwistedAction twB(spec.action, pres.rho1, pres.rho2);
    PolyMatrix An = join_by_t(alpha, s.combined, nw, 1, n1);
    PolyMatrix Bn = join_by_t(xs, s.combined, nw, n1, n2);
    s.A.push_back(twA.reynolds(An));
    s.B.push_back(twB.reynolds(Bn));
    s.order = n + 1;
    recompute_K(s);
    std::ostringstream os;
    os << "order " << s.order << ": obstruction terms " << new_terms << ", K has " << s.K.size() << " generators";
    s.log.push_back(os.str());
}

StopResult stop_check(const DeformationState& s) {
    StopResult out;
    const long min_tw = min_weight(s.tangent.t_weights);
    if (min_tw > 0)
        for (const auto& g : s.K)
            if (weight_of(g) < static_cast<long>(s.order) * min_tw) out.K_prime.push_back(g);
    PolyMatrix uv = matrix_mul(U_of(s), V_of(s));
    const RingPtr p_ring = make_ring(VariableSet(
        std::vector<std::string>(s.combined->vars().names.begin(),
                                 s.combined->vars().names.end() - s.t_ring->nvars()),
        std::vector<long>(s.combined->vars().gm_weights.begin(),
                          s.combined->vars().gm_weights.end() - s.t_ring->nvars())));
    auto coeffs = split_by_p(uv, p_ring, s.t_ring);
    if (coeffs.empty()) {
        out.stopped = true;
        return out;
    }
    if (out.K_prime.empty()) return out;
    GBOptions opts;
    opts.grading = weights_of(s.t_ring);
    auto gb = buchberger(s.t_ring, out.K_prime, opts);
    out.stopped = std::all_of(coeffs.begin(), coeffs.end(),
                              [&](const auto& kv) { return reduce(kv.second, gb).is_zero(); });
    return out;
}

UniversalDeformation run(const ProblemSpec& spec) {
    Presentation pres = build_presentation(spec);
    auto cov = covariant_basis(spec, pres);
    auto tangent = tangent_space(spec, pres, cov);
    return run(spec, pres, tangent);
}

UniversalDeformation run(const ProblemSpec& spec, const Presentation& pres, const TangentBasis& tangent,
                         const OrderCallback& on_order) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    DeformationState s = first_order(spec, pres, tangent);
    const int cap = spec.options.max_order.value_or(spec.options.order_cap);
    auto st = stop_check(s);
    if (on_order) on_order(s, std::chrono::duration<double>(clock::now() - t0).count());
    while (!st.stopped && s.order < cap) {
        t0 = clock::now();
        obstruction_step(s, pres, spec);
        st = stop_check(s);
        if (on_order) on_order(s, std::chrono::duration<double>(clock::now() - t0).count());
    }
    if (!st.stopped && !spec.options.max_order)
        throw CapError("stop condition not met by order " + std::to_string(cap));
    UniversalDeformation res;
    res.t_ring = s.t_ring;
    res.combined = s.combined;
    res.K = st.stopped ? st.K_prime : s.K;
    res.U = U_of(s);
    res.V = V_of(s);
    res.stop_order = s.order;
    res.stopped = st.stopped;
    res.log = s.log;
    res.log.push_back(st.stopped ? "stopped at order " + std::to_string(s.order) + " with K = (" +
                                       join_polys(res.K) + ")"
                                 : "truncated at order " + std::to_string(s.order));
    return res;
}

// ---------------------------------------------------------------------------

bool VerifyReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

VerifyReport verify(const UniversalDeformation& res, const ProblemSpec& spec) {
    VerifyReport rep;
    const RingPtr& P = spec.ring;
    const int nw = P->nvars();
    const int nt = res.t_ring->nvars();
    auto check = [&](const std::string& name, bool ok, const std::string& detail = {}) {
        rep.checks.emplace_back(name, ok);
        if (!ok && !detail.empty()) rep.details.push_back(name + ": " + detail);
    };
    bool shapes = res.U.rows() == 1 && res.V.rows() == res.U.cols() && res.combined->nvars() == nw + nt;
    check("shapes", shapes);
    if (!shapes) return rep;

    // K: homogeneous with positive weight
    bool kw = true;
    std::string kd;
    for (const auto& g : res.K) {
        auto w = gm_weight(g);
        if (!w || *w <= 0) {
            kw = false;
            kd = to_string(g);
            break;
        }
    }
    check("K weight-homogeneous and positive", kw, kd);

    // t-degree zero parts
    PolyMatrix U0 = t_degree_part(res.U, nw, 0), V0 = t_degree_part(res.V, nw, 0);
    PolyMatrix A0 = U0.in_ring(P);
    bool gens_ok = A0 == PolyMatrix::row(P, spec.ideal_gens);
    check("U at t = 0 equals the ideal generators", gens_ok);
    check("U0 V0 = 0", matrix_mul(U0, V0).is_zero());

    // U V = 0 mod K, coefficientwise in the P-monomials
    {
        PolyMatrix uv = matrix_mul(res.U, res.V);
        auto coeffs = split_by_p(uv, P, res.t_ring);
        bool ok = true;
        std::string d;
        if (!coeffs.empty()) {
            GBOptions opts;
            opts.grading = weights_of(res.t_ring);
            auto gb = buchberger(res.t_ring, res.K, opts);
            for (const auto& [sigma, c] : coeffs)
                if (!reduce(c, gb).is_zero()) {
                    ok = false;
                    d = to_string(c);
                    break;
                }
        }
        check("U V = 0 modulo K", ok, d);
    }

    // equivariance, with representations recomputed from the t = 0 data
    {
        auto r1 = rep_on_subspace(spec.ideal_gens, spec.action);
        bool ok = r1.rep.has_value();
        std::string d;
        if (ok) {
            TwistedAction twA(spec.action, Representation::trivial(spec.action, 1), *r1.rep);
            ok = twA.is_equivariant(res.U);
            if (!ok) d = "U";
            if (ok && res.V.cols() > 0) {
                TwistedAction tc(spec.action, *r1.rep, Representation::trivial(spec.action, 1));
                std::vector<PolyMatrix> cols;
                PolyMatrix V0p = V0.in_ring(P);
                for (int k = 0; k < V0p.cols(); ++k)
                    cols.push_back(PolyMatrix::column(P, V0p.column_vector(k)));
                RepResult r2;
                try {
                    r2 = rep_on_subspace(cols, tc);
                } catch (const AlgebraError&) {
                }
                ok = r2.rep.has_value();
                if (!ok) d = "columns of V at t = 0 do not span a G-stable space";
                if (ok) {
                    TwistedAction twB(spec.action, *r1.rep, *r2.rep);
                    ok = twB.is_equivariant(res.V);
                    if (!ok) d = "V";
                }
            }
        }
        check("U and V equivariant", ok, d);
    }

    // every term of U and V is G_m-balanced: weight(entry of U) = weight(f_l)
    {
        bool ok = true;
        for (int l = 0; l < res.U.cols() && ok; ++l) {
            if (res.U.at(0, l).is_zero()) continue;
            auto w = gm_weight(res.U.at(0, l));
            ok = w && *w == *gm_weight(spec.ideal_gens[static_cast<std::size_t>(l)]);
        }
        check("U weight-homogeneous", ok);
    }
    return rep;
}

std::vector<Polynomial> fiber_over_zero(const UniversalDeformation& res, const std::vector<Polynomial>& invariants,
                                        const GroupAction& action) {
    const int nt = res.t_ring->nvars();
    const int nw = res.combined->nvars() - nt;
    auto ring = with_order(res.combined, MonomialOrder::elimination(nw));
    std::vector<Polynomial> gens;
    for (const auto& u : res.U.entries())
        if (!u.is_zero()) gens.push_back(u.in_ring(ring));
    for (const auto& k : res.K) gens.push_back(k.in_ring(ring));
    long long top = 0;
    for (const auto& f : invariants) {
        if (!is_invariant(f, action)) throw ValidationError("not an invariant: " + to_string(f));
        auto w = gm_weight(f);
        if (!w) throw ValidationError("invariant not weight-homogeneous: " + to_string(f));
        top = std::max(top, *w);
    }
    GBOptions opts;
    opts.grading = weights_of(ring);
    bool positive = min_weight(opts.grading) > 0;
    for (const auto& g : gens) positive = positive && gm_weight(g).has_value();
    if (positive) opts.max_degree = top;
    auto gb = buchberger(ring, gens, opts);
    std::vector<Polynomial> out = res.K;
    for (const auto& f : invariants) {
        Polynomial r = reduce(f.in_ring(ring), gb);
        for (const auto& t : r.terms())
            for (int v = 0; v < nw; ++v)
                if (t.m[v]) throw InternalError("invariant " + to_string(f) + " does not reduce to the base");
        Polynomial rt = r.in_ring(res.t_ring);
        if (!rt.is_zero()) out.push_back(rt);
    }
    return minimize_homogeneous(res.t_ring, out);
}

}  // namespace invdef
