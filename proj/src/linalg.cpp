#include "invdef/linalg.hpp"

#include <algorithm>

namespace invdef {

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y) {
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, a * y[j].second);
            ++j;
        } else {
            Rational s = x[i].second + a * y[j].second;
            if (s != 0) out.emplace_back(x[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec Echelon::reduce(const SparseVec& v, SparseVec* combo) const {
    SparseVec cur = v;
    SparseVec acc;
    std::size_t pos = 0;
    while (pos < cur.size()) {
        auto it = pivot_.find(cur[pos].first);
        if (it == pivot_.end()) {
            ++pos;
            continue;
        }
        const Row& row = rows_[it->second];
        Rational f = cur[pos].second;
        SparseVec next;
        next.reserve(cur.size() + row.v.size());
        next.insert(next.end(), cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pos));
        SparseVec tail(cur.begin() + static_cast<std::ptrdiff_t>(pos), cur.end());
        SparseVec red = sparse_axpy(tail, -f, row.v);
        next.insert(next.end(), red.begin(), red.end());
        cur.swap(next);
        if (combo && track_) acc = sparse_axpy(acc, f, row.combo);
    }
    if (combo) *combo = std::move(acc);
    return cur;
}

bool Echelon::insert(const SparseVec& v) {
    std::size_t id = inserted_++;
    SparseVec combo;
    SparseVec r = reduce(v, track_ ? &combo : nullptr);
    if (r.empty()) return false;
    Rational inv = 1 / r[0].second;
    for (auto& e : r) e.second *= inv;
    Row row;
    row.v = std::move(r);
    if (track_) {
        // row = (v - sum combo_k inserted_k) * inv
        SparseVec c;
        for (auto& e : combo) c.emplace_back(e.first, -e.second * inv);
        c = sparse_axpy(c, inv, SparseVec{{static_cast<std::uint32_t>(id), Rational(1)}});
        row.combo = std::move(c);
    }
    pivot_[row.v[0].first] = rows_.size();
    rows_.push_back(std::move(row));
    return true;
}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (c_ != o.r_) throw AlgebraError("QMatrix dimension mismatch");
    QMatrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Rational& x = (*this)(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.c_; ++j)
                if (o(k, j) != 0) m(i, j) += x * o(k, j);
        }
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    QMatrix m = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    QMatrix m = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
}

QMatrix QMatrix::scaled(const Rational& s) const {
    QMatrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool QMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x == 0; });
}

std::vector<int> QMatrix::rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int p = -1;
        for (int i = row; i < r_; ++i)
            if ((*this)(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
        Rational inv = 1 / (*this)(row, col);
        for (int j = col; j < c_; ++j) (*this)(row, j) *= inv;
        for (int i = 0; i < r_; ++i) {
            if (i == row || (*this)(i, col) == 0) continue;
            Rational f = (*this)(i, col);
            for (int j = col; j < c_; ++j)
                if ((*this)(row, j) != 0) (*this)(i, j) -= f * (*this)(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int QMatrix::rank() const {
    QMatrix m = *this;
    return static_cast<int>(m.rref().size());
}

std::vector<std::vector<Rational>> QMatrix::kernel() const {
    QMatrix m = *this;
    auto piv = m.rref();
    std::vector<char> is_pivot(static_cast<std::size_t>(c_), 0);
    for (int p : piv) is_pivot[static_cast<std::size_t>(p)] = 1;
    std::vector<std::vector<Rational>> out;
    for (int f = 0; f < c_; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(c_));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[static_cast<std::size_t>(piv[r])] = -m(static_cast<int>(r), f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<QMatrix> QMatrix::inverse() const {
    if (r_ != c_) return std::nullopt;
    if (r_ == 0) return *this;
    QMatrix aug(r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, c_ + i) = 1;
    }
    auto piv = aug.rref();
    if (static_cast<int>(piv.size()) < r_ || piv[static_cast<std::size_t>(r_ - 1)] >= c_) return std::nullopt;
    QMatrix inv(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
}

std::uint32_t MonomialIndexer::index(const Monomial& m) {
    auto [it, fresh] = map_.try_emplace(m, static_cast<std::uint32_t>(list_.size()));
    if (fresh) list_.push_back(m);
    return it->second;
}

std::optional<std::uint32_t> MonomialIndexer::find(const Monomial& m) const {
    auto it = map_.find(m);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

SparseVec flatten(const std::vector<Polynomial>& slots, MonomialIndexer& idx) {
    SparseVec v;
    for (std::size_t k = 0; k < slots.size(); ++k)
        for (const auto& t : slots[k].terms()) {
            Monomial m = t.m;
            m.comp = static_cast<std::uint32_t>(k);
            v.emplace_back(idx.index(m), t.c);
        }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

SparseVec flatten(const PolyMatrix& m, MonomialIndexer& idx) { return flatten(m.entries(), idx); }

}  // namespace invdef
