#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace invdef {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kMaxVars = 32;

// Exponent vector plus a module component index. Polynomials always use comp 0.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};
    std::uint32_t comp = 0;
    std::uint32_t deg = 0;
    std::uint32_t mask = 0;

    unsigned operator[](int v) const { return e[static_cast<std::size_t>(v)]; }
    void set(int v, unsigned x);
    bool is_one() const { return deg == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.comp == b.comp && a.deg == b.deg && a.mask == b.mask && a.e == b.e;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

// a*b; the component of the result is a.comp + b.comp (one of them is 0 in practice).
Monomial mono_mul(const Monomial& a, const Monomial& b);
// b / a, assuming divides(a, b); the result has comp 0.
Monomial mono_div(const Monomial& b, const Monomial& a);
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);
inline bool mono_coprime(const Monomial& a, const Monomial& b) { return (a.mask & b.mask) == 0; }
long long mono_weight(const Monomial& m, const std::vector<long>& w);

struct VariableSet {
    std::vector<std::string> names;
    std::vector<long> gm_weights;

    VariableSet() = default;
    VariableSet(std::vector<std::string> n, std::vector<long> w);
    static VariableSet unweighted(std::vector<std::string> n);

    int size() const { return static_cast<int>(names.size()); }
    int index_of(std::string_view name) const;  // -1 if absent
    bool operator==(const VariableSet& o) const {
        return names == o.names && gm_weights == o.gm_weights;
    }
};

struct MonomialOrder {
    enum class Kind { GrevLex, Lex, WeightThenGrevLex, Elimination };
    Kind kind = Kind::GrevLex;
    std::vector<long> weights;
    int block = 0;

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::Lex, {}, 0}; }
    static MonomialOrder weighted(std::vector<long> w) {
        return {Kind::WeightThenGrevLex, std::move(w), 0};
    }
    // The first `k` variables form the dominant block; grevlex inside each block.
    static MonomialOrder elimination(int k) { return {Kind::Elimination, {}, k}; }

    bool is_global() const;
    // Sign of a - b, ignoring components.
    int compare(const Monomial& a, const Monomial& b, int nvars) const;
    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && weights == o.weights && block == o.block;
    }
    std::string describe() const;
};

class Ring {
public:
    Ring(VariableSet vars, MonomialOrder order);

    const VariableSet& vars() const { return vars_; }
    const MonomialOrder& order() const { return order_; }
    int nvars() const { return vars_.size(); }
    const std::string& name(int v) const { return vars_.names[static_cast<std::size_t>(v)]; }
    long weight(int v) const { return vars_.gm_weights[static_cast<std::size_t>(v)]; }

    int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, nvars()); }
    long long gm_weight(const Monomial& m) const { return mono_weight(m, vars_.gm_weights); }
    bool same_as(const Ring& o) const { return vars_ == o.vars_ && order_ == o.order_; }

private:
    VariableSet vars_;
    MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(VariableSet vars, MonomialOrder order = MonomialOrder::grevlex());
RingPtr with_order(const RingPtr& r, MonomialOrder order);

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace invdef
