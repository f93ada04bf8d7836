#include "invdef/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace invdef {

namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
    if (a.ring() == b.ring()) return;
    if (!a.ring() || !b.ring() || !a.ring()->same_as(*b.ring()))
        throw AlgebraError("polynomials live in different rings");
}

}  // namespace

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, int v) {
    Monomial m;
    m.set(v, 1);
    return monomial(std::move(ring), m, 1);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    const Ring& r = *p.ring_;
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return r.compare(a.m, b.m) > 0; });
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().m == t.m) {
            p.terms_.back().c += t.c;
            if (p.terms_.back().c == 0) p.terms_.pop_back();
        } else if (t.c != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Polynomial Polynomial::from_sorted(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.deg);
    return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.m == m) return t.c;
    return 0;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        Polynomial r = o;
        if (ring_) r.ring_ = ring_;
        return r;
    }
    require_same_ring(*this, o);
    const Ring& r = *ring_;
    Polynomial out(ring_);
    out.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = r.compare(terms_[i].m, o.terms_[j].m);
        if (c > 0) out.terms_.push_back(terms_[i++]);
        else if (c < 0) out.terms_.push_back(o.terms_[j++]);
        else {
            Rational s = terms_[i].c + o.terms_[j].c;
            if (s != 0) out.terms_.push_back({terms_[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.terms_.push_back(o.terms_[j]);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
    Polynomial out(ring_);
    if (c == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({mono_mul(t.m, m), t.c * c});
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial(ring_ ? ring_ : o.ring_);
    require_same_ring(*this, o);
    const Polynomial& big = terms_.size() >= o.terms_.size() ? *this : o;
    const Polynomial& small = terms_.size() >= o.terms_.size() ? o : *this;
    if (small.terms_.size() == 1) return big.mul_term(small.terms_[0].m, small.terms_[0].c);
    std::vector<Term> all;
    all.reserve(big.terms_.size() * small.terms_.size());
    for (const auto& s : small.terms_)
        for (const auto& b : big.terms_) all.push_back({mono_mul(s.m, b.m), s.c * b.c});
    return from_terms(ring_, std::move(all));
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial out(ring_);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.c *= c;
    return out;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    if (!terms_.empty()) require_same_ring(*this, o);
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

Polynomial Polynomial::in_ring(const RingPtr& target) const {
    if (ring_ == target) return *this;
    if (is_zero()) return Polynomial(target);
    std::vector<int> map(static_cast<std::size_t>(ring_->nvars()), -1);
    for (int v = 0; v < ring_->nvars(); ++v) map[v] = target->vars().index_of(ring_->name(v));
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m;
        m.comp = t.m.comp;
        for (int v = 0; v < ring_->nvars(); ++v) {
            if (!t.m.e[v]) continue;
            if (map[v] < 0)
                throw AlgebraError("variable " + ring_->name(v) + " missing from target ring");
            m.set(map[v], t.m.e[v]);
        }
        out.push_back({m, t.c});
    }
    return from_terms(target, std::move(out));
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
public:
    Parser(std::string_view s, const RingPtr& ring) : s_(s), ring_(ring) {}

    Polynomial parse() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    Polynomial expr() {
        Polynomial acc(ring_);
        bool first = true;
        for (;;) {
            skip();
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            Polynomial t = term();
            acc = sign > 0 ? acc + t : acc - t;
            first = false;
            skip();
            if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial t = factor();
        while (peek('*')) {
            ++pos_;
            t = t * factor();
        }
        return t;
    }

    Polynomial factor() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        Polynomial base(ring_);
        if (c == '(') {
            ++pos_;
            base = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            Rational q(num);
            if (peek('/')) {
                ++pos_;
                skip();
                std::size_t at = pos_;
                Integer den = integer();
                if (den == 0) throw ParseError("zero denominator", at);
                q = Rational(num, den);
                q.canonicalize();
            }
            base = Polynomial::constant(ring_, q);
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            int v = ring_->vars().index_of(name);
            if (v < 0) throw ParseError("unknown identifier '" + name + "'", start);
            base = Polynomial::variable(ring_, v);
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
        }
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t at = pos_;
            Integer k = integer();
            if (k > 65535) throw ParseError("exponent too large", at);
            base = base.pow(static_cast<unsigned>(k.get_ui()));
        }
        return base;
    }

    Integer integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", pos_);
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    std::string_view s_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
    return Parser(text, ring).parse();
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const Ring& r = *p.ring();
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.c;
        bool neg = c < 0;
        if (neg) c = -c;
        if (neg) out += '-';
        else if (!first) out += '+';
        first = false;
        bool unit = (c == 1);
        bool wrote = false;
        if (!unit || t.m.is_one()) {
            out += c.get_str();
            wrote = true;
        }
        for (int v = 0; v < r.nvars(); ++v) {
            unsigned e = t.m.e[v];
            if (!e) continue;
            if (wrote) out += '*';
            out += r.name(v);
            if (e > 1) out += '^' + std::to_string(e);
            wrote = true;
        }
    }
    return out;
}

Polynomial primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    Integer den = 1, num = 0;
    for (const auto& t : p.terms()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
    }
    Rational scale(den, num);
    scale.canonicalize();
    if (p.leading().c < 0) scale = -scale;
    return p * scale;
}

Polynomial monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    Rational inv = 1 / p.leading().c;
    return p * inv;
}

std::optional<long long> weighted_degree(const Polynomial& f, const std::vector<long>& w) {
    if (f.is_zero()) throw AlgebraError("weight of the zero polynomial");
    long long d = mono_weight(f.terms()[0].m, w);
    for (const auto& t : f.terms())
        if (mono_weight(t.m, w) != d) return std::nullopt;
    return d;
}

std::optional<long long> gm_weight(const Polynomial& f) {
    return weighted_degree(f, f.ring()->vars().gm_weights);
}

}  // namespace invdef
