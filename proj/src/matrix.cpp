#include "invdef/matrix.hpp"

#include <string>

namespace invdef {

PolyMatrix::PolyMatrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows * cols), Polynomial(ring_)) {
    if (rows < 0 || cols < 0) throw AlgebraError("negative matrix dimension");
}

PolyMatrix PolyMatrix::row(RingPtr ring, const std::vector<Polynomial>& entries) {
    PolyMatrix m(std::move(ring), 1, static_cast<int>(entries.size()));
    for (int j = 0; j < m.cols_; ++j) m.at(0, j) = entries[static_cast<std::size_t>(j)];
    return m;
}

PolyMatrix PolyMatrix::column(RingPtr ring, const std::vector<Polynomial>& entries) {
    PolyMatrix m(std::move(ring), static_cast<int>(entries.size()), 1);
    for (int i = 0; i < m.rows_; ++i) m.at(i, 0) = entries[static_cast<std::size_t>(i)];
    return m;
}

PolyMatrix PolyMatrix::identity(RingPtr ring, int n) {
    PolyMatrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(ring, 1);
    return m;
}

PolyMatrix PolyMatrix::from_columns(RingPtr ring, int rows, const std::vector<FreeModuleElement>& cols) {
    PolyMatrix m(std::move(ring), rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols_; ++j) {
        const auto& c = cols[static_cast<std::size_t>(j)];
        if (static_cast<int>(c.size()) != rows) throw AlgebraError("column length mismatch");
        for (int i = 0; i < rows; ++i) m.at(i, j) = c[static_cast<std::size_t>(i)];
    }
    return m;
}

FreeModuleElement PolyMatrix::column_vector(int j) const {
    FreeModuleElement v;
    v.reserve(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

FreeModuleElement PolyMatrix::row_vector(int i) const {
    FreeModuleElement v;
    v.reserve(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) v.push_back(at(i, j));
    return v;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : data_)
        if (!p.is_zero()) return false;
    return true;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

PolyMatrix PolyMatrix::in_ring(const RingPtr& target) const {
    PolyMatrix t(target, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = data_[k].in_ring(target);
    return t;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw AlgebraError("matrix shape mismatch in addition");
    PolyMatrix r(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw AlgebraError("matrix shape mismatch in subtraction");
    PolyMatrix r(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const { return matrix_mul(*this, o); }

PolyMatrix PolyMatrix::operator*(const Rational& c) const {
    PolyMatrix r(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * c;
    return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

PolyMatrix matrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows())
        throw AlgebraError("matrix dimension mismatch: " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()));
    PolyMatrix r(a.ring() ? a.ring() : b.ring(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            std::vector<Term> acc;
            for (int k = 0; k < a.cols(); ++k) {
                const auto& x = a.at(i, k);
                const auto& y = b.at(k, j);
                if (x.is_zero() || y.is_zero()) continue;
                for (const auto& s : x.terms())
                    for (const auto& t : y.terms()) acc.push_back({mono_mul(s.m, t.m), s.c * t.c});
            }
            r.at(i, j) = Polynomial::from_terms(r.ring(), std::move(acc));
        }
    return r;
}

}  // namespace invdef
