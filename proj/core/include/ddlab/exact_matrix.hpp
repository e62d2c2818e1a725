#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ddlab/rational.hpp"

namespace ddlab {

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix from_columns(const std::vector<RatVec>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatVec column(std::size_t j) const;
    RatVec row(std::size_t i) const;
    ExactMatrix transpose() const;
    bool is_zero() const;

    // Rows listed in `rows` (in that order), all columns.
    ExactMatrix select_rows(const std::vector<std::size_t>& rows) const;
    ExactMatrix select_cols(const std::vector<std::size_t>& cols) const;

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend RatVec operator*(const ExactMatrix& a, const RatVec& x);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

// Exact rank. Rows are cleared of denominators, the matrix is split into
// independent blocks (connected components of its nonzero pattern), and
// each block is eliminated fraction-free with first-nonzero pivoting.
std::size_t rank(const ExactMatrix& m);

// cols − rank independent vectors spanning {v : M v = 0}.
std::vector<RatVec> nullspace_basis(const ExactMatrix& m);

// Lexicographically first set of linearly independent columns.
std::vector<std::size_t> pivot_columns(const ExactMatrix& m);

// Solves B c = f for B of full column rank; the factorization is computed
// once and reused. Inconsistent right-hand sides yield nullopt.
class ExactSolver {
public:
    explicit ExactSolver(const ExactMatrix& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::optional<RatVec> solve(const RatVec& f) const;

private:
    struct Block {
        std::vector<std::size_t> cols;
        std::vector<std::size_t> pivot_rows;
        ExactMatrix inverse;  // of B[pivot_rows, cols]
    };
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Block> blocks_;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> row_entries_;
};

}  // namespace ddlab
