#include "ddlab/tensor.hpp"

#include <sstream>

#include "ddlab/errors.hpp"

namespace ddlab {

int TensorClass::components() const {
    int n = dim;
    switch (kind) {
        case TensorKind::Scalar: return 1;
        case TensorKind::Vector: return n;
        case TensorKind::M: return n * n;
        case TensorKind::S: return n * (n + 1) / 2;
        case TensorKind::K: return n * (n - 1) / 2;
        case TensorKind::T: return n * n - 1;
    }
    return 0;
}

std::string TensorClass::name() const {
    std::string d = std::to_string(dim);
    switch (kind) {
        case TensorKind::Scalar: return "R";
        case TensorKind::Vector: return "R" + d;
        case TensorKind::M: return "M" + d;
        case TensorKind::S: return "S" + d;
        case TensorKind::K: return "K" + d;
        case TensorKind::T: return "T" + d;
    }
    return "?";
}

TensorClass scalar_class(int dim) { return {TensorKind::Scalar, dim}; }
TensorClass vector_class(int dim) { return {TensorKind::Vector, dim}; }
TensorClass matrix_class(TensorKind kind, int dim) { return {kind, dim}; }

PolyMatrix::PolyMatrix(int rows, int cols, int arity)
    : rows_(rows), cols_(cols), arity_(arity),
      data_(static_cast<std::size_t>(rows * cols), Poly(arity)) {
    if (rows < 1 || cols < 1) throw InputError("PolyMatrix: empty shape");
}

PolyMatrix PolyMatrix::scalar(const Poly& p) {
    PolyMatrix m(1, 1, p.arity());
    m[0] = p;
    return m;
}

PolyMatrix PolyMatrix::vector(const std::vector<Poly>& v) {
    if (v.empty()) throw InputError("PolyMatrix::vector: empty");
    PolyMatrix m(static_cast<int>(v.size()), 1, v[0].arity());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].arity() != m.arity_) throw InputError("PolyMatrix::vector: arity mismatch");
        m.data_[i] = v[i];
    }
    return m;
}

PolyMatrix PolyMatrix::constant(const ExactMatrix& c, int arity) {
    PolyMatrix m(static_cast<int>(c.rows()), static_cast<int>(c.cols()), arity);
    for (int i = 0; i < m.rows_; ++i)
        for (int j = 0; j < m.cols_; ++j) m(i, j) = Poly::constant(arity, c(i, j));
    return m;
}

PolyMatrix PolyMatrix::identity(int n, int arity) {
    PolyMatrix m(n, n, arity);
    for (int i = 0; i < n; ++i) m(i, i) = Poly::constant(arity, 1);
    return m;
}

PolyMatrix PolyMatrix::position(const RatVec& origin) {
    int n = static_cast<int>(origin.size());
    PolyMatrix m(n, 1, n);
    for (int i = 0; i < n; ++i) m[i] = Poly::variable(n, i) - Poly::constant(n, origin[static_cast<std::size_t>(i)]);
    return m;
}

TensorClass PolyMatrix::classify() const {
    if (rows_ == 1 && cols_ == 1) return scalar_class(arity_);
    if (cols_ == 1) return vector_class(rows_);
    if (rows_ != cols_) return matrix_class(TensorKind::M, rows_);
    bool symmetric = true;
    bool skew = true;
    for (int i = 0; i < rows_; ++i) {
        for (int j = i; j < cols_; ++j) {
            const Poly& a = (*this)(i, j);
            const Poly& b = (*this)(j, i);
            if (a != b) symmetric = false;
            if (a != -b) skew = false;
        }
    }
    if (symmetric) return matrix_class(TensorKind::S, rows_);
    if (skew) return matrix_class(TensorKind::K, rows_);
    if (trace(*this).is_zero()) return matrix_class(TensorKind::T, rows_);
    return matrix_class(TensorKind::M, rows_);
}

int PolyMatrix::degree() const {
    int d = -1;
    for (const Poly& p : data_) d = std::max(d, p.degree());
    return d;
}

bool PolyMatrix::is_zero() const {
    for (const Poly& p : data_)
        if (!p.is_zero()) return false;
    return true;
}

namespace {

void require_same_shape(const PolyMatrix& a, const PolyMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError(std::string(what) + ": shape mismatch");
    if (a.arity() != b.arity()) throw InputError(std::string(what) + ": arity mismatch");
}

void require_vector(const PolyMatrix& v, int n, const char* what) {
    if (v.cols() != 1 || v.rows() != n)
        throw InputError(std::string(what) + ": expected a " + std::to_string(n) + "-vector");
}

void require_square(const PolyMatrix& a, const char* what) {
    if (!a.is_square()) throw InputError(std::string(what) + ": matrix must be square");
}

}  // namespace

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
    require_same_shape(*this, o, "PolyMatrix +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
    require_same_shape(*this, o, "PolyMatrix -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Rat& s) {
    for (Poly& p : data_) p *= s;
    return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Poly& q) {
    for (Poly& p : data_) p *= q;
    return *this;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

PolyMatrix PolyMatrix::derivative(int axis) const {
    PolyMatrix r = *this;
    for (Poly& p : r.data_) p = p.derivative(axis);
    return r;
}

ExactMatrix PolyMatrix::evaluate(const RatVec& point) const {
    ExactMatrix m(static_cast<std::size_t>(rows_), static_cast<std::size_t>(cols_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = (*this)(i, j).evaluate(point);
    return m;
}

PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions differ");
    if (a.arity() != b.arity()) throw InputError("matmul: arity mismatch");
    PolyMatrix r(a.rows(), b.cols(), a.arity());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            for (int k = 0; k < a.cols(); ++k)
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
    return r;
}

PolyMatrix transpose(const PolyMatrix& a) {
    PolyMatrix r(a.cols(), a.rows(), a.arity());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

Poly trace(const PolyMatrix& a) {
    require_square(a, "trace");
    Poly t(a.arity());
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

PolyMatrix sym(const PolyMatrix& a) {
    require_square(a, "sym");
    return Rat(1, 2) * (a + transpose(a));
}

PolyMatrix skw(const PolyMatrix& a) {
    require_square(a, "skw");
    return Rat(1, 2) * (a - transpose(a));
}

PolyMatrix dev(const PolyMatrix& a) {
    require_square(a, "dev");
    PolyMatrix r = a;
    Poly t = trace(a) * Rat(1, a.rows());
    for (int i = 0; i < a.rows(); ++i) r(i, i) -= t;
    return r;
}

Decomposition decompose(const PolyMatrix& b) {
    require_square(b, "decompose");
    return {sym(b), skw(b), dev(b), trace(b)};
}

PolyMatrix mskw(const PolyMatrix& w) {
    require_vector(w, 3, "mskw");
    PolyMatrix m(3, 3, w.arity());
    m(0, 1) = -w[2];
    m(0, 2) = w[1];
    m(1, 0) = w[2];
    m(1, 2) = -w[0];
    m(2, 0) = -w[1];
    m(2, 1) = w[0];
    return m;
}

PolyMatrix vskw(const PolyMatrix& a) {
    if (a.rows() != 3 || a.cols() != 3) throw InputError("vskw: expected a 3x3 matrix");
    PolyMatrix s = skw(a);
    return PolyMatrix::vector({s(2, 1), s(0, 2), s(1, 0)});
}

namespace {

void cross3(const Poly& a0, const Poly& a1, const Poly& a2, const PolyMatrix& b, Poly* out) {
    out[0] = a1 * b[2] - a2 * b[1];
    out[1] = a2 * b[0] - a0 * b[2];
    out[2] = a0 * b[1] - a1 * b[0];
}

}  // namespace

PolyMatrix cross_right(const PolyMatrix& a, const PolyMatrix& b) {
    require_vector(b, 3, "cross_right");
    if (a.arity() != b.arity()) throw InputError("cross_right: arity mismatch");
    if (a.cols() == 1) {
        require_vector(a, 3, "cross_right");
        PolyMatrix r(3, 1, a.arity());
        Poly out[3];
        cross3(a[0], a[1], a[2], b, out);
        for (int i = 0; i < 3; ++i) r[i] = out[i];
        return r;
    }
    if (a.cols() != 3) throw InputError("cross_right: rows must be 3-vectors");
    PolyMatrix r(a.rows(), 3, a.arity());
    for (int i = 0; i < a.rows(); ++i) {
        Poly out[3];
        cross3(a(i, 0), a(i, 1), a(i, 2), b, out);
        for (int j = 0; j < 3; ++j) r(i, j) = out[j];
    }
    return r;
}

PolyMatrix cross_left(const PolyMatrix& b, const PolyMatrix& a) {
    require_vector(b, 3, "cross_left");
    if (a.rows() != 3) throw InputError("cross_left: columns must be 3-vectors");
    return -transpose(cross_right(transpose(a), b));
}

PolyMatrix dot_right(const PolyMatrix& a, const PolyMatrix& b) {
    require_vector(b, a.cols(), "dot_right");
    return matmul(a, b);
}

PolyMatrix dot_left(const PolyMatrix& b, const PolyMatrix& a) {
    require_vector(b, a.rows(), "dot_left");
    return matmul(transpose(a), b);
}

Poly inner(const PolyMatrix& u, const PolyMatrix& v) {
    require_same_shape(u, v, "inner");
    Poly r(u.arity());
    for (int i = 0; i < u.size(); ++i)
        if (!u[i].is_zero() && !v[i].is_zero()) r += u[i] * v[i];
    return r;
}

Poly frobenius(const PolyMatrix& a, const PolyMatrix& b) { return inner(a, b); }

PolyMatrix outer(const PolyMatrix& u, const PolyMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1) throw InputError("outer: expected vectors");
    return matmul(u, transpose(v));
}

PolyMatrix perp(const PolyMatrix& v) {
    require_vector(v, 2, "perp");
    return PolyMatrix::vector({v[1], -v[0]});
}

PolyMatrix restrict(const PolyMatrix& a, const AffineChart& chart) {
    CachedRestrictor r(chart);
    PolyMatrix out(a.rows(), a.cols(), chart.dim());
    for (int i = 0; i < a.size(); ++i) out[i] = r(a[i]);
    return out;
}

PolyMatrix substitute(const PolyMatrix& a, const std::vector<Poly>& images) {
    if (images.empty()) throw InputError("substitute: no images");
    PolyMatrix out(a.rows(), a.cols(), images[0].arity());
    for (int i = 0; i < a.size(); ++i) out[i] = substitute(a[i], images);
    return out;
}

std::vector<ExactMatrix> class_basis(const TensorClass& cls) {
    const auto n = static_cast<std::size_t>(cls.dim);
    std::vector<ExactMatrix> out;
    auto unit = [n](std::size_t i, std::size_t j) {
        ExactMatrix e(n, n);
        e(i, j) = 1;
        return e;
    };
    switch (cls.kind) {
        case TensorKind::Scalar: {
            ExactMatrix e(1, 1);
            e(0, 0) = 1;
            out.push_back(e);
            break;
        }
        case TensorKind::Vector:
            for (std::size_t i = 0; i < n; ++i) {
                ExactMatrix e(n, 1);
                e(i, 0) = 1;
                out.push_back(e);
            }
            break;
        case TensorKind::M:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) out.push_back(unit(i, j));
            break;
        case TensorKind::S:
            for (std::size_t i = 0; i < n; ++i) out.push_back(unit(i, i));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    ExactMatrix e = unit(i, j);
                    e(j, i) = 1;
                    out.push_back(e);
                }
            break;
        case TensorKind::K:
            if (n == 3) {
                for (std::size_t k = 0; k < 3; ++k) {
                    ExactMatrix w(3, 1);
                    w(k, 0) = 1;
                    PolyMatrix m = mskw(PolyMatrix::constant(w, 1));
                    out.push_back(m.evaluate({Rat(0)}));
                }
            } else {
                ExactMatrix e(n, n);
                e(0, 1) = -1;
                e(1, 0) = 1;
                out.push_back(e);
            }
            break;
        case TensorKind::T:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) out.push_back(unit(i, j));
            for (std::size_t i = 0; i + 1 < n; ++i) {
                ExactMatrix e = unit(i, i);
                e(n - 1, n - 1) = -1;
                out.push_back(e);
            }
            break;
    }
    return out;
}

std::string to_string(const PolyMatrix& a) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < a.rows(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < a.cols(); ++j) {
            if (j) os << ", ";
            os << to_string(a(i, j));
        }
    }
    os << "]";
    return os.str();
}

}  // namespace ddlab
