#pragma once

#include <cstddef>
#include <vector>

#include "ddlab/bigfloat.hpp"
#include "ddlab/exact_matrix.hpp"

namespace ddlab {

using FloatVec = std::vector<BigFloat>;

class BigFloatMatrix {
public:
    BigFloatMatrix() = default;
    BigFloatMatrix(std::size_t rows, std::size_t cols);

    // Entry (i, j) becomes scale[i] * m(i, j); no scale means 1.
    static BigFloatMatrix from_exact(const ExactMatrix& m, const FloatVec* row_scale = nullptr);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int precision() const;

    BigFloat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigFloat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    BigFloatMatrix transpose() const;
    BigFloat max_abs() const;
    BigFloat frobenius() const;
    void check_finite() const;

    friend BigFloatMatrix operator*(const BigFloatMatrix& a, const BigFloatMatrix& b);
    friend FloatVec operator*(const BigFloatMatrix& a, const FloatVec& x);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigFloat> data_;
};

struct SingularExtremes {
    BigFloat sigma_min;
    BigFloat sigma_max;
};

// Householder bidiagonalization followed by Sturm-count bisection on the
// Golub-Kahan tridiagonal form.
SingularExtremes min_max_singular(const BigFloatMatrix& m);

struct NumericalRank {
    std::size_t rank = 0;
    BigFloat smallest_kept;     // relative to the largest pivot
    BigFloat largest_dropped;   // relative to the largest pivot
    bool gap_ok = true;         // smallest_kept / largest_dropped >= required gap
};

// Complete-pivoting elimination; pivots below rel_tol * (largest pivot) are
// treated as zero.
NumericalRank numerical_rank(const BigFloatMatrix& m, const BigFloat& rel_tol, const BigFloat& min_gap);

// Gauss-Jordan with partial pivoting; throws InputError when singular.
BigFloatMatrix inverse(const BigFloatMatrix& m);

// Minimum-norm solution of A x = b for A with full row rank.
FloatVec min_norm_solve(const BigFloatMatrix& a, const FloatVec& b);

BigFloat norm2(const FloatVec& v);

}  // namespace ddlab
