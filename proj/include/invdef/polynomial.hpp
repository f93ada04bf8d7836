#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invdef/ring.hpp"

namespace invdef {

struct Term {
    Monomial m;
    Rational c;
};

// Sparse polynomial over Q; terms are kept sorted by decreasing monomial in the ring's order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr ring, const Rational& c);
    static Polynomial variable(RingPtr ring, int v);
    static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1);
    // Sorts and combines like terms; drops zeros.
    static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
    // Caller guarantees terms are sorted, combined, nonzero.
    static Polynomial from_sorted(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    const Term& leading() const { return terms_.front(); }
    unsigned total_degree() const;
    Rational coefficient(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial mul_term(const Monomial& m, const Rational& c) const;
    Polynomial pow(unsigned k) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Re-expresses the polynomial in another ring, matching variables by name.
    Polynomial in_ring(const RingPtr& target) const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);
std::string to_string(const Polynomial& p);

// Integer coefficients with content 1 and positive leading coefficient.
Polynomial primitive(const Polynomial& p);
// Leading coefficient 1.
Polynomial monic(const Polynomial& p);

std::optional<long long> gm_weight(const Polynomial& f);
std::optional<long long> weighted_degree(const Polynomial& f, const std::vector<long>& w);

class ParseError : public AlgebraError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : AlgebraError(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

}  // namespace invdef
