#pragma once

#include <vector>

#include "invdef/polynomial.hpp"

namespace invdef {

using FreeModuleElement = std::vector<Polynomial>;

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(RingPtr ring, int rows, int cols);

    static PolyMatrix row(RingPtr ring, const std::vector<Polynomial>& entries);
    static PolyMatrix column(RingPtr ring, const std::vector<Polynomial>& entries);
    static PolyMatrix identity(RingPtr ring, int n);
    // Columns given as module elements of equal length.
    static PolyMatrix from_columns(RingPtr ring, int rows, const std::vector<FreeModuleElement>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingPtr& ring() const { return ring_; }

    Polynomial& at(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Polynomial& at(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const std::vector<Polynomial>& entries() const { return data_; }

    FreeModuleElement column_vector(int j) const;
    FreeModuleElement row_vector(int i) const;

    bool is_zero() const;
    PolyMatrix transpose() const;
    PolyMatrix in_ring(const RingPtr& target) const;

    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix operator*(const Rational& c) const;
    bool operator==(const PolyMatrix& o) const;
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

private:
    RingPtr ring_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Polynomial> data_;
};

PolyMatrix matrix_mul(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace invdef
