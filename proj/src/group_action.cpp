#include "invdef/group_action.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace invdef {

namespace {

// Variable bookkeeping of an action relative to a concrete ring.
struct Bound {
    std::vector<int> w_of_ring;  // ring variable -> action index or -1
    std::vector<int> ring_of_w;  // action index -> ring variable or -1
};

Bound bind(const GroupAction& a, const Ring& r) {
    Bound b;
    b.w_of_ring.assign(static_cast<std::size_t>(r.nvars()), -1);
    b.ring_of_w.assign(a.vars.size(), -1);
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
        int v = r.vars().index_of(a.vars[i]);
        b.ring_of_w[i] = v;
        if (v >= 0) b.w_of_ring[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    return b;
}

// Images of the ring variables under a linear map, as (ring variable, coefficient) lists.
using LinearImage = std::vector<std::vector<std::pair<int, Rational>>>;

LinearImage image_of(const QMatrix& m, const Bound& b, bool identity_off_span) {
    LinearImage img(b.w_of_ring.size());
    for (std::size_t v = 0; v < b.w_of_ring.size(); ++v) {
        int w = b.w_of_ring[v];
        if (w < 0) {
            if (identity_off_span) img[v].emplace_back(static_cast<int>(v), Rational(1));
            continue;
        }
        for (int i = 0; i < m.rows(); ++i) {
            const Rational& c = m(i, w);
            if (c == 0) continue;
            int iv = b.ring_of_w[static_cast<std::size_t>(i)];
            if (iv < 0) throw ActionError("action moves a variable outside the ring");
            img[v].emplace_back(iv, c);
        }
    }
    return img;
}

Polynomial derive(const Polynomial& f, const LinearImage& img) {
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        std::uint32_t mask = t.m.mask;
        while (mask) {
            int v = __builtin_ctz(mask);
            mask &= mask - 1;
            unsigned e = t.m[v];
            if (e == 0) continue;
            for (const auto& [iv, c] : img[static_cast<std::size_t>(v)]) {
                Monomial m = t.m;
                m.set(v, e - 1);
                m.set(iv, m[iv] + 1);
                out.push_back({m, t.c * c * e});
            }
        }
    }
    return Polynomial::from_terms(f.ring(), std::move(out));
}

Polynomial substitute(const Polynomial& f, const LinearImage& img) {
    const RingPtr& r = f.ring();
    bool monomial_map = std::all_of(img.begin(), img.end(), [](const auto& l) { return l.size() == 1; });
    if (monomial_map) {
        std::vector<Term> out;
        out.reserve(f.size());
        for (const auto& t : f.terms()) {
            Monomial m;
            Rational c = t.c;
            for (int v = 0; v < r->nvars(); ++v) {
                unsigned e = t.m[v];
                if (!e) continue;
                const auto& [iv, s] = img[static_cast<std::size_t>(v)].front();
                m.set(iv, m[iv] + e);
                for (unsigned k = 0; k < e; ++k) c *= s;
            }
            out.push_back({m, c});
        }
        return Polynomial::from_terms(r, std::move(out));
    }
    std::map<std::pair<int, unsigned>, Polynomial> powers;
    auto power = [&](int v, unsigned e) -> const Polynomial& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        std::vector<Term> lin;
        for (const auto& [iv, c] : img[static_cast<std::size_t>(v)]) {
            Monomial m;
            m.set(iv, 1);
            lin.push_back({m, c});
        }
        Polynomial p = Polynomial::from_terms(r, std::move(lin)).pow(e);
        return powers.emplace(key, std::move(p)).first->second;
    };
    Polynomial sum(r);
    for (const auto& t : f.terms()) {
        Polynomial prod = Polynomial::constant(r, t.c);
        for (int v = 0; v < r->nvars(); ++v)
            if (t.m[v]) prod = prod * power(v, t.m[v]);
        sum += prod;
    }
    return sum;
}

std::vector<std::vector<long>> torus_of_ring(const GroupAction& a, const Bound& b) {
    std::vector<std::vector<long>> out;
    for (const auto& row : a.torus) {
        std::vector<long> w(b.w_of_ring.size(), 0);
        for (std::size_t v = 0; v < w.size(); ++v)
            if (b.w_of_ring[v] >= 0) w[v] = row[static_cast<std::size_t>(b.w_of_ring[v])];
        out.push_back(std::move(w));
    }
    return out;
}

// out += s * M * C  (M rational r x r)
void add_left(PolyMatrix& out, const QMatrix& m, const PolyMatrix& c, int sign) {
    for (int i = 0; i < c.rows(); ++i)
        for (int k = 0; k < c.rows(); ++k) {
            const Rational& x = m(i, k);
            if (x == 0) continue;
            Rational s = sign > 0 ? x : Rational(-x);
            for (int j = 0; j < c.cols(); ++j)
                if (!c.at(k, j).is_zero()) out.at(i, j) += c.at(k, j) * s;
        }
}

// out += s * C * M  (M rational c x c)
void add_right(PolyMatrix& out, const PolyMatrix& c, const QMatrix& m, int sign) {
    for (int k = 0; k < c.cols(); ++k)
        for (int j = 0; j < c.cols(); ++j) {
            const Rational& x = m(k, j);
            if (x == 0) continue;
            Rational s = sign > 0 ? x : Rational(-x);
            for (int i = 0; i < c.rows(); ++i)
                if (!c.at(i, k).is_zero()) out.at(i, j) += c.at(i, k) * s;
        }
}

PolyMatrix entrywise(const PolyMatrix& c, const std::function<Polynomial(const Polynomial&)>& op) {
    PolyMatrix out(c.ring(), c.rows(), c.cols());
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            if (!c.at(i, j).is_zero()) out.at(i, j) = op(c.at(i, j));
    return out;
}

bool is_identity(const QMatrix& m) { return m == QMatrix::identity(m.rows()); }

}  // namespace

GroupAction GroupAction::trivial(std::vector<std::string> vars) {
    GroupAction a;
    int n = static_cast<int>(vars.size());
    a.vars = std::move(vars);
    a.finite.push_back(QMatrix::identity(n));
    return a;
}

std::vector<QMatrix> finite_closure(const std::vector<QMatrix>& gens, std::size_t cap) {
    if (gens.empty()) return {};
    int n = gens.front().rows();
    std::vector<QMatrix> out{QMatrix::identity(n)};
    std::deque<QMatrix> todo(gens.begin(), gens.end());
    auto known = [&](const QMatrix& m) { return std::find(out.begin(), out.end(), m) != out.end(); };
    while (!todo.empty()) {
        QMatrix m = todo.front();
        todo.pop_front();
        if (known(m)) continue;
        out.push_back(m);
        if (out.size() > cap) throw CapError("finite group closure exceeded cap");
        for (const auto& g : gens) todo.push_back(g * m);
    }
    return out;
}

Polynomial apply_derivation(const Polynomial& f, const QMatrix& d, const GroupAction& a) {
    Bound b = bind(a, *f.ring());
    return derive(f, image_of(d, b, false));
}

Polynomial apply_finite(const Polynomial& f, const QMatrix& g, const GroupAction& a) {
    Bound b = bind(a, *f.ring());
    return substitute(f, image_of(g, b, true));
}

void GroupAction::validate() const {
    const int n = nvars();
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw ActionError("repeated action variable " + vars[i]);
    auto square = [&](const QMatrix& m, const char* what) {
        if (m.rows() != n || m.cols() != n) throw ActionError(std::string(what) + " matrix has wrong shape");
    };
    for (const auto& g : finite) square(g, "finite");
    for (const auto& d : lie) square(d, "lie");
    for (const auto& d : lie_dual) square(d, "lie_dual");
    if (lie.size() != lie_dual.size()) throw ActionError("lie basis and dual basis differ in length");
    for (const auto& row : torus)
        if (static_cast<int>(row.size()) != n) throw ActionError("torus row has wrong length");
    if (!finite.empty()) {
        if (std::none_of(finite.begin(), finite.end(), is_identity))
            throw ActionError("finite part does not contain the identity");
        for (const auto& g : finite) {
            if (!g.inverse()) throw ActionError("finite element is not invertible");
            for (const auto& h : finite) {
                QMatrix p = g * h;
                if (std::find(finite.begin(), finite.end(), p) == finite.end())
                    throw ActionError("finite part is not closed under multiplication");
            }
        }
    }
    if (lie.empty() && finite.size() <= 1) return;

    auto ring = make_ring(VariableSet::unweighted(vars));
    std::vector<Polynomial> probes;
    for (int i = 0; i < n; ++i) {
        probes.push_back(Polynomial::variable(ring, i));
        for (int j = i; j < n; ++j) probes.push_back(Polynomial::variable(ring, i) * Polynomial::variable(ring, j));
    }
    Bound b = bind(*this, *ring);
    std::vector<LinearImage> L, Ld, F;
    for (const auto& d : lie) L.push_back(image_of(d, b, false));
    for (const auto& d : lie_dual) Ld.push_back(image_of(d, b, false));
    for (const auto& g : finite) F.push_back(image_of(g, b, true));
    auto cas = [&](const Polynomial& f) {
        Polynomial s(ring);
        for (std::size_t i = 0; i < L.size(); ++i) s += derive(derive(f, Ld[i]), L[i]);
        return s;
    };
    for (const auto& f : probes) {
        Polynomial cf = cas(f);
        for (std::size_t j = 0; j < L.size(); ++j)
            if (cas(derive(f, L[j])) != derive(cf, L[j]))
                throw ActionError("Casimir element is not central (fails on " + to_string(f) + ")");
        for (const auto& g : F)
            if (cas(substitute(f, g)) != substitute(cf, g))
                throw ActionError("finite part does not commute with the Casimir element");
    }
}

Representation Representation::trivial(const GroupAction& a, int dim) {
    Representation r;
    r.dim = dim;
    for (std::size_t i = 0; i < a.lie.size(); ++i) {
        r.lie.emplace_back(dim, dim);
        r.lie_dual.emplace_back(dim, dim);
    }
    for (std::size_t g = 0; g < a.finite.size(); ++g) r.finite.push_back(QMatrix::identity(dim));
    for (std::size_t t = 0; t < a.torus.size(); ++t) r.torus.emplace_back(static_cast<std::size_t>(dim), 0);
    return r;
}

TwistedAction::TwistedAction(const GroupAction& a, Representation left, Representation right)
    : a_(a), left_(std::move(left)), right_(std::move(right)) {
    auto check = [&](const Representation& r) {
        if (r.lie.size() != a.lie.size() || r.lie_dual.size() != a.lie_dual.size() ||
            r.finite.size() != a.finite.size() || r.torus.size() != a.torus.size())
            throw ActionError("representation does not match the group data");
    };
    check(left_);
    check(right_);
    for (const auto& g : right_.finite) {
        auto inv = g.inverse();
        if (!inv) throw ActionError("representation matrix is not invertible");
        right_inv_.push_back(*inv);
    }
}

PolyMatrix TwistedAction::lie(const PolyMatrix& c, std::size_t i, bool dual) const {
    if (c.rows() != left_.dim || c.cols() != right_.dim) throw ActionError("matrix shape does not match representations");
    Bound b = bind(a_, *c.ring());
    LinearImage img = image_of(dual ? a_.lie_dual[i] : a_.lie[i], b, false);
    PolyMatrix out = entrywise(c, [&](const Polynomial& p) { return derive(p, img); });
    add_left(out, dual ? left_.lie_dual[i] : left_.lie[i], c, 1);
    add_right(out, c, dual ? right_.lie_dual[i] : right_.lie[i], -1);
    return out;
}

PolyMatrix TwistedAction::finite(const PolyMatrix& c, std::size_t g) const {
    if (c.rows() != left_.dim || c.cols() != right_.dim) throw ActionError("matrix shape does not match representations");
    Bound b = bind(a_, *c.ring());
    LinearImage img = image_of(a_.finite[g], b, true);
    PolyMatrix sub = entrywise(c, [&](const Polynomial& p) { return substitute(p, img); });
    PolyMatrix mid(c.ring(), c.rows(), c.cols());
    add_left(mid, left_.finite[g], sub, 1);
    PolyMatrix out(c.ring(), c.rows(), c.cols());
    add_right(out, mid, right_inv_[g], 1);
    return out;
}

PolyMatrix TwistedAction::casimir(const PolyMatrix& c) const {
    PolyMatrix out(c.ring(), c.rows(), c.cols());
    for (std::size_t i = 0; i < a_.lie.size(); ++i) out = out + lie(lie(c, i, true), i, false);
    return out;
}

PolyMatrix TwistedAction::finite_average(const PolyMatrix& c) const {
    if (a_.finite.size() <= 1) return c;
    PolyMatrix out(c.ring(), c.rows(), c.cols());
    for (std::size_t g = 0; g < a_.finite.size(); ++g) out = out + finite(c, g);
    return out * Rational(1, static_cast<long>(a_.finite.size()));
}

PolyMatrix TwistedAction::torus_project(const PolyMatrix& c) const {
    if (a_.torus.empty()) return c;
    Bound b = bind(a_, *c.ring());
    auto tw = torus_of_ring(a_, b);
    PolyMatrix out(c.ring(), c.rows(), c.cols());
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) {
            std::vector<Term> keep;
            for (const auto& t : c.at(i, j).terms()) {
                bool zero = true;
                for (std::size_t r = 0; r < tw.size() && zero; ++r)
                    if (mono_weight(t.m, tw[r]) + left_.torus[r][static_cast<std::size_t>(i)] -
                            right_.torus[r][static_cast<std::size_t>(j)] !=
                        0)
                        zero = false;
                if (zero) keep.push_back(t);
            }
            out.at(i, j) = Polynomial::from_sorted(c.ring(), std::move(keep));
        }
    return out;
}

std::optional<std::vector<long>> TwistedAction::torus_weight(const PolyMatrix& c) const {
    Bound b = bind(a_, *c.ring());
    auto tw = torus_of_ring(a_, b);
    std::optional<std::vector<long>> w;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            for (const auto& t : c.at(i, j).terms()) {
                std::vector<long> x;
                for (std::size_t r = 0; r < tw.size(); ++r)
                    x.push_back(static_cast<long>(mono_weight(t.m, tw[r])) + left_.torus[r][static_cast<std::size_t>(i)] -
                                right_.torus[r][static_cast<std::size_t>(j)]);
                if (w && *w != x) return std::nullopt;
                w = std::move(x);
            }
    return w;
}

PolyMatrix TwistedAction::reynolds(const PolyMatrix& c) const {
    PolyMatrix f = torus_project(finite_average(c));
    if (a_.lie.empty() || f.is_zero()) return f;
    MonomialIndexer idx;
    Echelon ech(true);
    std::vector<PolyMatrix> krylov{f};
    ech.insert(flatten(f, idx));
    for (;;) {
        PolyMatrix next = casimir(krylov.back());
        SparseVec v = flatten(next, idx);
        SparseVec combo;
        SparseVec res = ech.reduce(v, &combo);
        if (res.empty()) {
            // minimal polynomial p(u) = u^k - sum_j a_j u^j
            const std::size_t k = krylov.size();
            std::vector<Rational> p(k + 1);
            p[k] = 1;
            for (const auto& [j, a] : combo) p[j] = -a;
            if (p[0] != 0) return PolyMatrix(c.ring(), c.rows(), c.cols());
            if (p[1] == 0) throw AlgebraError("Casimir operator is not semisimple on the Krylov space");
            // q(u) = p(u) / u, projection = q(c) f / q(0)
            PolyMatrix out(c.ring(), c.rows(), c.cols());
            for (std::size_t j = 0; j < k; ++j)
                if (p[j + 1] != 0) out = out + krylov[j] * (p[j + 1] / p[1]);
            return out;
        }
        ech.insert(v);
        krylov.push_back(std::move(next));
        if (krylov.size() > a_.krylov_cap) throw CapError("Krylov space exceeded the dimension cap");
    }
}

bool TwistedAction::is_equivariant(const PolyMatrix& c) const {
    if (torus_project(c) != c) return false;
    for (std::size_t i = 0; i < a_.lie.size(); ++i)
        if (!lie(c, i).is_zero() || !lie(c, i, true).is_zero()) return false;
    for (std::size_t g = 0; g < a_.finite.size(); ++g)
        if (finite(c, g) != c) return false;
    return true;
}

Polynomial reynolds(const Polynomial& f, const GroupAction& a) {
    TwistedAction t(a, Representation::trivial(a, 1), Representation::trivial(a, 1));
    return t.reynolds(PolyMatrix::row(f.ring(), {f})).at(0, 0);
}

bool is_invariant(const Polynomial& f, const GroupAction& a) {
    TwistedAction t(a, Representation::trivial(a, 1), Representation::trivial(a, 1));
    return t.is_equivariant(PolyMatrix::row(f.ring(), {f}));
}

PolyMatrix reynolds_twisted(const PolyMatrix& c, const Representation& left, const Representation& right,
                            const GroupAction& a) {
    return TwistedAction(a, left, right).reynolds(c);
}

bool is_equivariant(const PolyMatrix& c, const Representation& left, const Representation& right,
                    const GroupAction& a) {
    return TwistedAction(a, left, right).is_equivariant(c);
}

RepResult rep_on_subspace(const std::vector<PolyMatrix>& basis, const TwistedAction& tw) {
    const GroupAction& a = tw.action();
    const int n = static_cast<int>(basis.size());
    MonomialIndexer idx;
    Echelon ech(true);
    for (const auto& b : basis)
        if (!ech.insert(flatten(b, idx))) throw AlgebraError("basis is linearly dependent");
    RepResult out;
    Representation rep;
    rep.dim = n;
    auto express = [&](const PolyMatrix& img, QMatrix& m, int k) -> bool {
        SparseVec combo;
        if (!ech.reduce(flatten(img, idx), &combo).empty()) {
            out.witness = img;
            return false;
        }
        for (const auto& [l, c] : combo) m(static_cast<int>(l), k) = c;
        return true;
    };
    for (int dual = 0; dual < 2; ++dual)
        for (std::size_t i = 0; i < a.lie.size(); ++i) {
            QMatrix m(n, n);
            for (int k = 0; k < n; ++k)
                if (!express(tw.lie(basis[static_cast<std::size_t>(k)], i, dual == 1), m, k)) return out;
            (dual ? rep.lie_dual : rep.lie).push_back(std::move(m));
        }
    for (std::size_t g = 0; g < a.finite.size(); ++g) {
        QMatrix m(n, n);
        for (int k = 0; k < n; ++k)
            if (!express(tw.finite(basis[static_cast<std::size_t>(k)], g), m, k)) return out;
        rep.finite.push_back(std::move(m));
    }
    rep.torus.assign(a.torus.size(), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (int k = 0; k < n; ++k) {
        if (a.torus.empty()) break;
        auto w = tw.torus_weight(basis[static_cast<std::size_t>(k)]);
        if (!w) {
            out.witness = basis[static_cast<std::size_t>(k)];
            return out;
        }
        for (std::size_t r = 0; r < w->size(); ++r) rep.torus[r][static_cast<std::size_t>(k)] = (*w)[r];
    }
    out.rep = std::move(rep);
    return out;
}

RepResult rep_on_subspace(const std::vector<Polynomial>& basis, const GroupAction& a) {
    TwistedAction tw(a, Representation::trivial(a, 1), Representation::trivial(a, 1));
    std::vector<PolyMatrix> mats;
    for (const auto& f : basis) mats.push_back(PolyMatrix::row(f.ring(), {f}));
    return rep_on_subspace(mats, tw);
}

namespace {

// Splits c into its torus weight components.
std::vector<PolyMatrix> torus_parts(const PolyMatrix& c, const TwistedAction& tw) {
    const GroupAction& a = tw.action();
    if (a.torus.empty()) return {c};
    Bound b = bind(a, *c.ring());
    auto w = torus_of_ring(a, b);
    std::map<std::vector<long>, PolyMatrix> parts;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            for (const auto& t : c.at(i, j).terms()) {
                std::vector<long> x;
                for (std::size_t r = 0; r < w.size(); ++r)
                    x.push_back(static_cast<long>(mono_weight(t.m, w[r])) + tw.left().torus[r][static_cast<std::size_t>(i)] -
                                tw.right().torus[r][static_cast<std::size_t>(j)]);
                auto it = parts.try_emplace(x, c.ring(), c.rows(), c.cols()).first;
                it->second.at(i, j) += Polynomial::monomial(c.ring(), t.m, t.c);
            }
    std::vector<PolyMatrix> out;
    for (auto& [k, m] : parts) out.push_back(std::move(m));
    return out;
}

}  // namespace

std::vector<PolyMatrix> g_closure(const std::vector<PolyMatrix>& seed, const TwistedAction& tw, std::size_t cap) {
    const GroupAction& a = tw.action();
    MonomialIndexer idx;
    Echelon ech;
    std::vector<PolyMatrix> basis;
    std::deque<PolyMatrix> todo;
    auto add = [&](const PolyMatrix& m) {
        for (auto& part : torus_parts(m, tw)) {
            if (part.is_zero() || !ech.insert(flatten(part, idx))) continue;
            basis.push_back(part);
            todo.push_back(std::move(part));
            if (basis.size() > cap) throw CapError("G-closure exceeded the dimension cap");
        }
    };
    for (const auto& s : seed) add(s);
    while (!todo.empty()) {
        PolyMatrix m = std::move(todo.front());
        todo.pop_front();
        for (std::size_t i = 0; i < a.lie.size(); ++i) {
            add(tw.lie(m, i));
            add(tw.lie(m, i, true));
        }
        for (std::size_t g = 0; g < a.finite.size(); ++g) add(tw.finite(m, g));
    }
    return basis;
}

std::vector<Polynomial> g_closure(const std::vector<Polynomial>& seed, const GroupAction& a, std::size_t cap) {
    TwistedAction tw(a, Representation::trivial(a, 1), Representation::trivial(a, 1));
    std::vector<PolyMatrix> mats;
    for (const auto& f : seed) mats.push_back(PolyMatrix::row(f.ring(), {f}));
    std::vector<Polynomial> out;
    for (auto& m : g_closure(mats, tw, cap)) out.push_back(m.at(0, 0));
    return out;
}

}  // namespace invdef
