#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "invdef/matrix.hpp"

namespace invdef {

// Sparse rational vector, entries sorted by index, no zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Rational>>;

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y);  // x + a*y

// Incremental row echelon form. Rows have distinct leading indices (pivots) and
// leading coefficient 1. Optionally records every row as a combination of the
// inserted vectors, so that dependencies can be read off.
class Echelon {
public:
    explicit Echelon(bool track = false) : track_(track) {}

    // Returns true if v was independent of everything inserted so far.
    bool insert(const SparseVec& v);
    // Reduces v; when tracking, `combo` receives coefficients c with v = sum c_k inserted_k + residual.
    SparseVec reduce(const SparseVec& v, SparseVec* combo = nullptr) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }

private:
    struct Row {
        SparseVec v;
        SparseVec combo;
    };
    bool track_;
    std::size_t inserted_ = 0;
    std::vector<Row> rows_;
    std::unordered_map<std::uint32_t, std::size_t> pivot_;
};

// Dense rational matrix.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols)) {}
    static QMatrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const Rational& s) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool is_zero() const;

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<int> rref();
    int rank() const;
    // Basis of the right kernel, one vector per free column (in column order).
    std::vector<std::vector<Rational>> kernel() const;
    std::optional<QMatrix> inverse() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

// Assigns consecutive indices to monomials (with component) on first sight.
class MonomialIndexer {
public:
    std::uint32_t index(const Monomial& m);
    std::optional<std::uint32_t> find(const Monomial& m) const;
    const Monomial& monomial(std::uint32_t i) const { return list_[i]; }
    std::size_t size() const { return list_.size(); }

private:
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> map_;
    std::vector<Monomial> list_;
};

// Flattens a list of polynomials (slot k stored as component k) into a sparse vector.
SparseVec flatten(const std::vector<Polynomial>& slots, MonomialIndexer& idx);
SparseVec flatten(const PolyMatrix& m, MonomialIndexer& idx);

}  // namespace invdef
