#include "ddlab/exact_matrix.hpp"

#include <algorithm>
#include <numeric>

#include "ddlab/errors.hpp"

namespace ddlab {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<RatVec>& columns, std::size_t rows) {
    ExactMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw InputError("from_columns: column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

RatVec ExactMatrix::column(std::size_t j) const {
    RatVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

RatVec ExactMatrix::row(std::size_t i) const {
    return RatVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& q) { return q == 0; });
}

ExactMatrix ExactMatrix::select_rows(const std::vector<std::size_t>& rows) const {
    ExactMatrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(rows[i], j);
    return m;
}

ExactMatrix ExactMatrix::select_cols(const std::vector<std::size_t>& cols) const {
    ExactMatrix m(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
    return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product: inner dimensions differ");
    ExactMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rat& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatVec operator*(const ExactMatrix& a, const RatVec& x) {
    if (a.cols_ != x.size()) throw InputError("matrix-vector product: size mismatch");
    RatVec y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            if (a(i, j) != 0 && x[j] != 0) y[i] += a(i, j) * x[j];
    return y;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

struct Component {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

struct Split {
    std::vector<Component> blocks;
    std::vector<std::size_t> empty_cols;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

// Connected components of the bipartite row/column graph of the nonzeros.
Split split_blocks(const ExactMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    std::vector<std::size_t> parent(r + c);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<char> row_used(r, 0), col_used(c, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (m(i, j) != 0) {
                row_used[i] = col_used[j] = 1;
                std::size_t a = find_root(parent, i), b = find_root(parent, r + j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    Split out;
    std::vector<std::ptrdiff_t> slot(r + c, -1);
    auto block_of = [&](std::size_t node) -> Component& {
        std::size_t root = find_root(parent, node);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::ptrdiff_t>(out.blocks.size());
            out.blocks.emplace_back();
        }
        return out.blocks[static_cast<std::size_t>(slot[root])];
    };
    for (std::size_t i = 0; i < r; ++i)
        if (row_used[i]) block_of(i).rows.push_back(i);
    for (std::size_t j = 0; j < c; ++j) {
        if (col_used[j])
            block_of(r + j).cols.push_back(j);
        else
            out.empty_cols.push_back(j);
    }
    return out;
}

using IntRows = std::vector<std::vector<BigInt>>;

IntRows integer_block(const ExactMatrix& m, const Component& b) {
    IntRows a(b.rows.size(), std::vector<BigInt>(b.cols.size()));
    std::vector<Rat> buf(b.cols.size());
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
        for (std::size_t j = 0; j < b.cols.size(); ++j) buf[j] = m(b.rows[i], b.cols[j]);
        BigInt l = lcm_of_denominators(buf.data(), buf.size());
        for (std::size_t j = 0; j < b.cols.size(); ++j) {
            if (buf[j] == 0) continue;
            BigInt t = l / buf[j].get_den();
            a[i][j] = t * buf[j].get_num();
        }
    }
    return a;
}

// Fraction-free elimination to row echelon form. Row k of the result has its
// leading entry in column pivots[k]; rows past pivots.size() are zero.
std::vector<std::size_t> bareiss_echelon(IntRows& a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    const std::size_t n = a.size();
    std::size_t r = 0;
    BigInt prev = 1, t;
    for (std::size_t c = 0; c < ncols && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[r]);
        const BigInt& piv = a[r][c];
        for (std::size_t i = r + 1; i < n; ++i) {
            BigInt& aic = a[i][c];
            for (std::size_t j = c + 1; j < ncols; ++j) {
                BigInt& aij = a[i][j];
                const BigInt& arj = a[r][j];
                if (aic == 0) {
                    if (aij == 0) continue;
                    mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), aij.get_mpz_t());
                } else {
                    mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), aij.get_mpz_t());
                    if (arj != 0) mpz_submul(t.get_mpz_t(), aic.get_mpz_t(), arj.get_mpz_t());
                }
                mpz_divexact(aij.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            aic = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
    std::size_t total = 0;
    for (const Component& b : split_blocks(m).blocks) {
        if (b.rows.size() == 1 || b.cols.size() == 1) {
            total += 1;
            continue;
        }
        IntRows a = integer_block(m, b);
        total += bareiss_echelon(a, b.cols.size()).size();
    }
    return total;
}

std::vector<RatVec> nullspace_basis(const ExactMatrix& m) {
    Split s = split_blocks(m);
    std::vector<RatVec> out;
    for (std::size_t j : s.empty_cols) {
        RatVec v(m.cols());
        v[j] = 1;
        out.push_back(std::move(v));
    }
    for (const Component& b : s.blocks) {
        IntRows a = integer_block(m, b);
        const std::size_t nc = b.cols.size();
        std::vector<std::size_t> piv = bareiss_echelon(a, nc);
        std::vector<char> is_pivot(nc, 0);
        for (std::size_t c : piv) is_pivot[c] = 1;
        for (std::size_t f = 0; f < nc; ++f) {
            if (is_pivot[f]) continue;
            RatVec x(nc);
            x[f] = 1;
            for (std::size_t k = piv.size(); k-- > 0;) {
                Rat acc = 0;
                for (std::size_t j = piv[k] + 1; j < nc; ++j)
                    if (a[k][j] != 0 && x[j] != 0) acc += Rat(a[k][j]) * x[j];
                x[piv[k]] = -acc / Rat(a[k][piv[k]]);
            }
            RatVec v(m.cols());
            for (std::size_t j = 0; j < nc; ++j) v[b.cols[j]] = x[j];
            out.push_back(std::move(v));
        }
    }
    // Deterministic order: by position of the free column that generated the vector.
    std::vector<std::pair<std::size_t, std::size_t>> key;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t last = 0;
        for (std::size_t j = out[i].size(); j-- > 0;)
            if (out[i][j] != 0) {
                last = j;
                break;
            }
        key.emplace_back(last, i);
    }
    std::sort(key.begin(), key.end());
    std::vector<RatVec> sorted;
    sorted.reserve(out.size());
    for (auto& k : key) sorted.push_back(std::move(out[k.second]));
    return sorted;
}

std::vector<std::size_t> pivot_columns(const ExactMatrix& m) {
    std::vector<std::size_t> out;
    for (const Component& b : split_blocks(m).blocks) {
        IntRows a = integer_block(m, b);
        for (std::size_t c : bareiss_echelon(a, b.cols.size())) out.push_back(b.cols[c]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

ExactMatrix invert_square(ExactMatrix a) {
    const std::size_t n = a.rows();
    ExactMatrix inv = ExactMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw InternalError("invert_square: singular block");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rat s = 1 / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            if (a(c, j) != 0) a(c, j) *= s;
            if (inv(c, j) != 0) inv(c, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (a(c, j) != 0) a(i, j) -= f * a(c, j);
                if (inv(c, j) != 0) inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace

ExactSolver::ExactSolver(const ExactMatrix& b) : rows_(b.rows()), cols_(b.cols()), row_entries_(b.rows()) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (b(i, j) != 0) row_entries_[i].emplace_back(j, b(i, j));
    Split s = split_blocks(b);
    if (!s.empty_cols.empty()) throw InternalError("ExactSolver: zero column, basis is dependent");
    for (const Component& blk : s.blocks) {
        ExactMatrix sub(blk.rows.size(), blk.cols.size());
        for (std::size_t i = 0; i < blk.rows.size(); ++i)
            for (std::size_t j = 0; j < blk.cols.size(); ++j) sub(i, j) = b(blk.rows[i], blk.cols[j]);
        std::vector<std::size_t> prow = pivot_columns(sub.transpose());
        if (prow.size() != blk.cols.size()) throw InternalError("ExactSolver: matrix lacks full column rank");
        Block out;
        out.cols = blk.cols;
        for (std::size_t r : prow) out.pivot_rows.push_back(blk.rows[r]);
        out.inverse = invert_square(sub.select_rows(prow));
        blocks_.push_back(std::move(out));
    }
}

std::optional<RatVec> ExactSolver::solve(const RatVec& f) const {
    if (f.size() != rows_) throw InputError("ExactSolver::solve: right-hand side has wrong length");
    RatVec x(cols_);
    for (const Block& blk : blocks_) {
        const std::size_t n = blk.cols.size();
        for (std::size_t i = 0; i < n; ++i) {
            Rat acc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const Rat& fj = f[blk.pivot_rows[j]];
                if (fj != 0 && blk.inverse(i, j) != 0) acc += blk.inverse(i, j) * fj;
            }
            x[blk.cols[i]] = acc;
        }
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat acc = 0;
        for (const auto& [j, v] : row_entries_[i])
            if (x[j] != 0) acc += v * x[j];
        if (acc != f[i]) return std::nullopt;
    }
    return x;
}

}  // namespace ddlab
