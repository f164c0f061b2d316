#pragma once

#include <vector>

#include "chiral/laurent.hpp"

namespace chiral {

// Rectangular matrix over Q[t, t^-1]. Dimensions are explicit and fixed.
class LaurentMatrix {
  public:
    LaurentMatrix() = default;
    LaurentMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    static LaurentMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    LaurentPoly& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const LaurentPoly& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    std::vector<LaurentPoly> row(size_t r) const;
    void set_row(size_t r, const std::vector<LaurentPoly>& v);

    LaurentMatrix transposed() const;
    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
    friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_zero_row(size_t r) const;
    // largest pole order over all entries, 0 if every entry is regular
    long max_pole_order() const;

    std::string str() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<LaurentPoly> data_;
};

// Exact determinant (fraction-free Bareiss elimination over Q[t] after a
// uniform t-power rescale). Throws DimensionMismatch on non-square input.
LaurentPoly det(const LaurentMatrix& m);

// Inverse with entries in Q[t, t^-1]. Defined exactly when det = c*t^m, the
// units of the Laurent ring; throws DetNotUnit otherwise.
LaurentMatrix invert_if_unit_det(const LaurentMatrix& m);

bool is_laurent_unit(const LaurentPoly& p);

}  // namespace chiral
