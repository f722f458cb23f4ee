/// @file genmatrix.hpp
/// @brief Matrix with NCPoly entries over a shared algebra.
#pragma once

#include <vector>

#include "qrs/ncalg.hpp"

namespace qrs {

class GenMatrix {
public:
    GenMatrix() = default;
    GenMatrix(int rows, int cols, const NCPoly& fill = NCPoly())
        : rows_(rows), cols_(cols), entries_(std::size_t(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    /// 1-based access, matching the usual matrix index conventions.
    NCPoly& at(int i, int j) { return entries_.at(idx(i, j)); }
    const NCPoly& at(int i, int j) const { return entries_.at(idx(i, j)); }

private:
    std::size_t idx(int i, int j) const {
        if (i < 1 || i > rows_ || j < 1 || j > cols_)
            throw std::out_of_range("GenMatrix: index out of range");
        return std::size_t(i - 1) * cols_ + (j - 1);
    }
    int rows_ = 0, cols_ = 0;
    std::vector<NCPoly> entries_;
};

} // namespace qrs
