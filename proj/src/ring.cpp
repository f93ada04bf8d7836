#include "invdef/ring.hpp"

#include <set>

namespace invdef {

void Monomial::set(int v, unsigned x) {
    if (x > 0xFFFFu) throw AlgebraError("exponent overflow");
    auto& slot = e[static_cast<std::size_t>(v)];
    deg = deg - slot + x;
    slot = static_cast<std::uint16_t>(x);
    if (x) mask |= (1u << v);
    else mask &= ~(1u << v);
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ m.comp;
    for (int i = 0; i < kMaxVars; ++i) {
        h ^= m.e[static_cast<std::size_t>(i)];
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.comp = a.comp + b.comp;
    r.deg = a.deg + b.deg;
    r.mask = a.mask | b.mask;
    if (r.deg > 0xFFFFu) {
        for (int i = 0; i < kMaxVars; ++i)
            if (unsigned(a.e[i]) + b.e[i] > 0xFFFFu) throw AlgebraError("exponent overflow");
    }
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    return r;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial r;
    r.deg = b.deg - a.deg;
    for (int i = 0; i < kMaxVars; ++i) {
        r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
        if (r.e[i]) r.mask |= (1u << i);
    }
    return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.comp = a.comp;
    r.mask = a.mask | b.mask;
    for (int i = 0; i < kMaxVars; ++i) {
        r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
        r.deg += r.e[i];
    }
    return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    if (a.comp != b.comp || a.deg > b.deg || (a.mask & ~b.mask)) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

long long mono_weight(const Monomial& m, const std::vector<long>& w) {
    long long s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<long long>(w[i]) * m.e[i];
    return s;
}

VariableSet::VariableSet(std::vector<std::string> n, std::vector<long> w)
    : names(std::move(n)), gm_weights(std::move(w)) {
    if (names.size() != gm_weights.size())
        throw AlgebraError("variable names and weights differ in length");
    if (names.size() > static_cast<std::size_t>(kMaxVars))
        throw AlgebraError("too many variables (max " + std::to_string(kMaxVars) + ")");
    std::set<std::string> seen;
    for (const auto& s : names)
        if (!seen.insert(s).second) throw AlgebraError("duplicate variable name: " + s);
}

VariableSet VariableSet::unweighted(std::vector<std::string> n) {
    std::vector<long> w(n.size(), 1);
    return VariableSet(std::move(n), std::move(w));
}

int VariableSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

int revlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
    for (int v = hi - 1; v >= lo; --v) {
        if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? 1 : -1;
    }
    return 0;
}

int grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
    unsigned da = 0, db = 0;
    for (int v = lo; v < hi; ++v) {
        da += a.e[v];
        db += b.e[v];
    }
    if (da != db) return da > db ? 1 : -1;
    return revlex_range(a, b, lo, hi);
}

}  // namespace

bool MonomialOrder::is_global() const {
    if (kind != Kind::WeightThenGrevLex) return true;
    for (long w : weights)
        if (w < 0) return false;
    return true;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b, int nvars) const {
    switch (kind) {
    case Kind::GrevLex:
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        return revlex_range(a, b, 0, nvars);
    case Kind::Lex:
        for (int v = 0; v < nvars; ++v)
            if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? 1 : -1;
        return 0;
    case Kind::WeightThenGrevLex: {
        long long wa = mono_weight(a, weights), wb = mono_weight(b, weights);
        if (wa != wb) return wa > wb ? 1 : -1;
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        return revlex_range(a, b, 0, nvars);
    }
    case Kind::Elimination: {
        int c = grevlex_range(a, b, 0, block);
        if (c) return c;
        return grevlex_range(a, b, block, nvars);
    }
    }
    return 0;
}

std::string MonomialOrder::describe() const {
    switch (kind) {
    case Kind::GrevLex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::WeightThenGrevLex: {
        std::string s = "weight(";
        for (std::size_t i = 0; i < weights.size(); ++i)
            s += (i ? "," : "") + std::to_string(weights[i]);
        return s + ")+grevlex";
    }
    case Kind::Elimination: return "elimination(" + std::to_string(block) + ")";
    }
    return "?";
}

Ring::Ring(VariableSet vars, MonomialOrder order) : vars_(std::move(vars)), order_(std::move(order)) {
    if (order_.kind == MonomialOrder::Kind::WeightThenGrevLex &&
        order_.weights.size() != vars_.names.size())
        throw AlgebraError("order weight vector length mismatch");
    if (order_.kind == MonomialOrder::Kind::Elimination &&
        (order_.block < 0 || order_.block > vars_.size()))
        throw AlgebraError("elimination block out of range");
}

RingPtr make_ring(VariableSet vars, MonomialOrder order) {
    return std::make_shared<const Ring>(std::move(vars), std::move(order));
}

RingPtr with_order(const RingPtr& r, MonomialOrder order) {
    if (r->order() == order) return r;
    return make_ring(r->vars(), std::move(order));
}

}  // namespace invdef
