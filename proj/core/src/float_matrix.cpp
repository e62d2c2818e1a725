#include "ddlab/float_matrix.hpp"

#include <algorithm>

#include "ddlab/errors.hpp"

namespace ddlab {

BigFloatMatrix::BigFloatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

BigFloatMatrix BigFloatMatrix::from_exact(const ExactMatrix& m, const FloatVec* row_scale) {
    if (row_scale && row_scale->size() != m.rows()) throw InputError("from_exact: scale length mismatch");
    BigFloatMatrix f(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            mpfr_set_q(f(i, j).get(), m(i, j).get_mpq_t(), MPFR_RNDN);
            if (row_scale) f(i, j) *= (*row_scale)[i];
        }
    return f;
}

int BigFloatMatrix::precision() const { return data_.empty() ? default_precision() : data_.front().precision(); }

BigFloatMatrix BigFloatMatrix::transpose() const {
    BigFloatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

BigFloat BigFloatMatrix::max_abs() const {
    BigFloat m;
    for (const BigFloat& x : data_)
        if (mpfr_cmpabs(x.get(), m.get()) > 0) m = abs(x);
    return m;
}

BigFloat BigFloatMatrix::frobenius() const {
    BigFloat s;
    for (const BigFloat& x : data_) s.add_mul(x, x);
    return sqrt(s);
}

void BigFloatMatrix::check_finite() const {
    for (const BigFloat& x : data_)
        if (!x.is_finite()) throw InputError("matrix has a non-finite entry");
}

BigFloatMatrix operator*(const BigFloatMatrix& a, const BigFloatMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product: inner dimensions differ");
    BigFloatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const BigFloat& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j).add_mul(aik, b(k, j));
        }
    return c;
}

FloatVec operator*(const BigFloatMatrix& a, const FloatVec& x) {
    if (a.cols_ != x.size()) throw InputError("matrix-vector product: size mismatch");
    FloatVec y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            if (!a(i, j).is_zero()) y[i].add_mul(a(i, j), x[j]);
    return y;
}

BigFloat norm2(const FloatVec& v) {
    BigFloat s;
    for (const BigFloat& x : v) s.add_mul(x, x);
    return sqrt(s);
}

namespace {

// Reflects x (length n) to alpha*e1; returns alpha and leaves v = x - alpha e1 in x
// together with beta = 2 / (v.v) (zero if x is already zero).
void householder(std::vector<BigFloat*>& x, BigFloat& alpha, BigFloat& beta) {
    BigFloat s;
    for (BigFloat* xi : x) s.add_mul(*xi, *xi);
    if (s.is_zero()) {
        alpha = BigFloat();
        beta = BigFloat();
        return;
    }
    alpha = sqrt(s);
    if (x[0]->sign() > 0) alpha = -alpha;
    *x[0] -= alpha;
    BigFloat vv;
    for (BigFloat* xi : x) vv.add_mul(*xi, *xi);
    beta = BigFloat(2L) / vv;
}

// Number of eigenvalues below x of the symmetric tridiagonal matrix with zero
// diagonal and off-diagonal b.
std::size_t sturm_count(const std::vector<BigFloat>& b2, const BigFloat& x, const BigFloat& tiny) {
    std::size_t count = 0;
    BigFloat q = -x, t;
    if (q.sign() < 0) ++count;
    for (const BigFloat& bb : b2) {
        if (q.is_zero()) q = -tiny;
        mpfr_div(t.get(), bb.get(), q.get(), MPFR_RNDN);
        mpfr_neg(q.get(), x.get(), MPFR_RNDN);
        q -= t;
        if (q.sign() < 0) ++count;
    }
    return count;
}

}  // namespace

SingularExtremes min_max_singular(const BigFloatMatrix& input) {
    input.check_finite();
    BigFloatMatrix a = input.rows() >= input.cols() ? input : input.transpose();
    const std::size_t m = a.rows(), n = a.cols();
    if (n == 0) return {BigFloat(), BigFloat()};
    std::vector<BigFloat> d(n), e(n > 1 ? n - 1 : 0);
    BigFloat alpha, beta, s;
    std::vector<BigFloat*> x;
    for (std::size_t k = 0; k < n; ++k) {
        x.clear();
        for (std::size_t i = k; i < m; ++i) x.push_back(&a(i, k));
        householder(x, alpha, beta);
        if (!beta.is_zero())
            for (std::size_t j = k + 1; j < n; ++j) {
                s = BigFloat();
                for (std::size_t i = k; i < m; ++i) s.add_mul(a(i, k), a(i, j));
                s *= beta;
                for (std::size_t i = k; i < m; ++i) a(i, j).sub_mul(s, a(i, k));
            }
        d[k] = alpha;
        if (k + 1 < n) {
            x.clear();
            for (std::size_t j = k + 1; j < n; ++j) x.push_back(&a(k, j));
            householder(x, alpha, beta);
            if (!beta.is_zero())
                for (std::size_t i = k + 1; i < m; ++i) {
                    s = BigFloat();
                    for (std::size_t j = k + 1; j < n; ++j) s.add_mul(a(k, j), a(i, j));
                    s *= beta;
                    for (std::size_t j = k + 1; j < n; ++j) a(i, j).sub_mul(s, a(k, j));
                }
            e[k] = alpha;
        }
    }
    std::vector<BigFloat> b2;
    BigFloat bound;
    for (std::size_t k = 0; k < n; ++k) {
        b2.push_back(d[k] * d[k]);
        BigFloat row = abs(d[k]);
        if (k < e.size()) {
            b2.push_back(e[k] * e[k]);
            row += abs(e[k]);
        }
        if (k > 0) row += abs(e[k - 1]);
        bound = max(bound, row);
    }
    if (bound.is_zero()) return {BigFloat(), BigFloat()};
    const int p = default_precision();
    BigFloat tiny = bound * pow2(-2L * p);
    auto below = [&](const BigFloat& t) { return sturm_count(b2, t, tiny) - n; };

    BigFloat lo, hi = bound * BigFloat(2L);
    BigFloat width_tol = hi * pow2(-(p - 4));
    for (int it = 0; it < 4 * p && hi - lo > width_tol; ++it) {
        BigFloat mid = (lo + hi) / BigFloat(2L);
        if (below(mid) >= n) hi = mid; else lo = mid;
    }
    BigFloat smax = hi;

    lo = BigFloat();
    hi = smax;
    width_tol = smax * pow2(-(p - 4));
    for (int it = 0; it < 4 * p && hi - lo > width_tol; ++it) {
        BigFloat mid = (lo + hi) / BigFloat(2L);
        if (below(mid) >= 1) hi = mid; else lo = mid;
        if (lo.sign() > 0 && hi - lo <= lo * pow2(-(p / 2 + 8))) break;
    }
    return {(lo + hi) / BigFloat(2L), smax};
}

NumericalRank numerical_rank(const BigFloatMatrix& input, const BigFloat& rel_tol, const BigFloat& min_gap) {
    input.check_finite();
    BigFloatMatrix a = input;
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::size_t> colperm(n);
    for (std::size_t j = 0; j < n; ++j) colperm[j] = j;
    NumericalRank out;
    BigFloat first, f;
    const std::size_t steps = std::min(m, n);
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pi = k, pj = k;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (mpfr_cmpabs(a(i, j).get(), a(pi, pj).get()) > 0) {
                    pi = i;
                    pj = j;
                }
        BigFloat piv = abs(a(pi, pj));
        if (k == 0) {
            if (piv.is_zero()) {
                out.smallest_kept = BigFloat(1L);
                out.largest_dropped = BigFloat();
                return out;
            }
            first = piv;
        }
        BigFloat rel = piv / first;
        if (rel <= rel_tol) {
            out.largest_dropped = rel;
            out.gap_ok = rel.is_zero() || out.smallest_kept >= rel * min_gap;
            return out;
        }
        out.smallest_kept = rel;
        ++out.rank;
        if (pi != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pi, j), a(k, j));
        if (pj != k)
            for (std::size_t i = 0; i < m; ++i) std::swap(a(i, pj), a(i, k));
        for (std::size_t i = k + 1; i < m; ++i) {
            if (a(i, k).is_zero()) continue;
            mpfr_div(f.get(), a(i, k).get(), a(k, k).get(), MPFR_RNDN);
            for (std::size_t j = k + 1; j < n; ++j)
                if (!a(k, j).is_zero()) a(i, j).sub_mul(f, a(k, j));
            a(i, k) = BigFloat();
        }
    }
    out.largest_dropped = BigFloat();
    out.gap_ok = true;
    return out;
}

BigFloatMatrix inverse(const BigFloatMatrix& input) {
    if (input.rows() != input.cols()) throw InputError("inverse: matrix not square");
    input.check_finite();
    const std::size_t n = input.rows();
    BigFloatMatrix a = input;
    BigFloatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) inv(i, i) = BigFloat(1L);
    BigFloat scale = a.max_abs(), f;
    if (scale.is_zero()) throw InputError("inverse: zero matrix");
    BigFloat tol = scale * pow2(-(default_precision() - 8));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (mpfr_cmpabs(a(i, c).get(), a(p, c).get()) > 0) p = i;
        if (abs(a(p, c)) <= tol) throw InputError("inverse: matrix is numerically singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        BigFloat s = BigFloat(1L) / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero()) continue;
            f = a(i, c);
            for (std::size_t j = c; j < n; ++j)
                if (!a(c, j).is_zero()) a(i, j).sub_mul(f, a(c, j));
            for (std::size_t j = 0; j < n; ++j)
                if (!inv(c, j).is_zero()) inv(i, j).sub_mul(f, inv(c, j));
        }
    }
    return inv;
}

FloatVec min_norm_solve(const BigFloatMatrix& a, const FloatVec& b) {
    if (b.size() != a.rows()) throw InputError("min_norm_solve: right-hand side has wrong length");
    BigFloatMatrix at = a.transpose();
    BigFloatMatrix g = a * at;
    FloatVec y = inverse(g) * b;
    return at * y;
}

}  // namespace ddlab
