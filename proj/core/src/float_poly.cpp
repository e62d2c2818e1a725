#include "ddlab/float_poly.hpp"

#include "ddlab/errors.hpp"

namespace ddlab {

FloatPoly FloatPoly::from(const Poly& p) {
    FloatPoly f(p.arity());
    for (const auto& [a, c] : p.terms()) f.terms_.emplace(a, BigFloat(c));
    return f;
}

FloatPoly FloatPoly::constant(int arity, const BigFloat& c) {
    FloatPoly f(arity);
    f.add_term(MultiIndex(), c);
    return f;
}

int FloatPoly::degree() const {
    int d = -1;
    for (const auto& [a, c] : terms_) d = std::max(d, a.degree());
    return d;
}

void FloatPoly::add_term(const MultiIndex& a, const BigFloat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

FloatPoly& FloatPoly::operator+=(const FloatPoly& o) {
    if (o.arity_ != arity_) throw InputError("FloatPoly: arity mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
}

FloatPoly& FloatPoly::operator-=(const FloatPoly& o) {
    if (o.arity_ != arity_) throw InputError("FloatPoly: arity mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
}

FloatPoly& FloatPoly::operator*=(const BigFloat& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
}

FloatPoly operator*(const FloatPoly& a, const FloatPoly& b) {
    if (a.arity_ != b.arity_) throw InputError("FloatPoly: arity mismatch");
    FloatPoly r(a.arity_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    return r;
}

FloatPoly FloatPoly::derivative(int axis) const {
    FloatPoly r(arity_);
    for (const auto& [a, c] : terms_) {
        int e = a[axis];
        if (e == 0) continue;
        MultiIndex b = a;
        b.e[static_cast<std::size_t>(axis)] = static_cast<std::uint8_t>(e - 1);
        r.add_term(b, c * BigFloat(e));
    }
    return r;
}

BigFloat FloatPoly::evaluate(const RatVec& point) const {
    BigFloat s(0);
    for (const auto& [a, c] : terms_) {
        Rat m = 1;
        for (int i = 0; i < arity_; ++i)
            for (int k = 0; k < a[i]; ++k) m *= point[static_cast<std::size_t>(i)];
        s += c * BigFloat(m);
    }
    return s;
}

BigFloat FloatPoly::max_abs() const {
    BigFloat m(0);
    for (const auto& [a, c] : terms_) m = max(m, abs(c));
    return m;
}

FloatPoly directional(const FloatPoly& p, const FloatVec& d) {
    FloatPoly r(p.arity());
    for (int i = 0; i < p.arity(); ++i) r += p.derivative(i) * d[static_cast<std::size_t>(i)];
    return r;
}

FloatPoly restrict(const FloatPoly& p, const AffineChart& chart) {
    CachedRestrictor r(chart);
    FloatPoly out(chart.dim());
    for (const auto& [a, c] : p.terms())
        for (const auto& [b, q] : r.monomial(a).terms()) out.add_term(b, c * BigFloat(q));
    return out;
}

BigFloat integrate(const FloatPoly& p, const AffineChart& chart) {
    FloatPoly r = restrict(p, chart);
    BigFloat s(0);
    for (const auto& [a, c] : r.terms()) s += c * BigFloat(reference_moment(chart.dim(), a));
    return s * sqrt_rat(chart.gram_determinant());
}

FloatPolyMatrix::FloatPolyMatrix(int rows, int cols, int arity)
    : rows_(rows), cols_(cols), arity_(arity), data_(static_cast<std::size_t>(rows * cols), FloatPoly(arity)) {}

FloatPolyMatrix FloatPolyMatrix::from(const PolyMatrix& m) {
    FloatPolyMatrix r(m.rows(), m.cols(), m.arity());
    for (int i = 0; i < m.size(); ++i) r[i] = FloatPoly::from(m[i]);
    return r;
}

FloatPolyMatrix FloatPolyMatrix::constant(const std::vector<std::vector<BigFloat>>& m, int arity) {
    int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
    FloatPolyMatrix r(rows, cols, arity);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            r(i, j) = FloatPoly::constant(arity, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return r;
}

FloatPolyMatrix FloatPolyMatrix::vector(const FloatVec& v, int arity) {
    FloatPolyMatrix r(static_cast<int>(v.size()), 1, arity);
    for (std::size_t i = 0; i < v.size(); ++i) r[static_cast<int>(i)] = FloatPoly::constant(arity, v[i]);
    return r;
}

FloatPolyMatrix& FloatPolyMatrix::operator+=(const FloatPolyMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw InputError("FloatPolyMatrix: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

FloatPolyMatrix& FloatPolyMatrix::operator-=(const FloatPolyMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw InputError("FloatPolyMatrix: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

FloatPolyMatrix& FloatPolyMatrix::operator*=(const BigFloat& s) {
    for (FloatPoly& p : data_) p *= s;
    return *this;
}

FloatPolyMatrix FloatPolyMatrix::derivative(int axis) const {
    FloatPolyMatrix r(rows_, cols_, arity_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].derivative(axis);
    return r;
}

BigFloat FloatPolyMatrix::max_abs() const {
    BigFloat m(0);
    for (const FloatPoly& p : data_) m = max(m, p.max_abs());
    return m;
}

FloatPolyMatrix matmul(const FloatPolyMatrix& a, const FloatPolyMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions differ");
    FloatPolyMatrix r(a.rows(), b.cols(), a.arity());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            for (int k = 0; k < a.cols(); ++k) r(i, j) += a(i, k) * b(k, j);
    return r;
}

FloatPolyMatrix transpose(const FloatPolyMatrix& a) {
    FloatPolyMatrix r(a.cols(), a.rows(), a.arity());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

FloatPolyMatrix sym(const FloatPolyMatrix& a) { return (a + transpose(a)) * (BigFloat(1) / BigFloat(2)); }

namespace {

FloatPoly scaled(const FloatPoly& p, const BigFloat& s) { return s.is_zero() ? FloatPoly(p.arity()) : p * s; }

void cross_into(const FloatPoly& a0, const FloatPoly& a1, const FloatPoly& a2, const FloatVec& n, FloatPoly& r0,
                FloatPoly& r1, FloatPoly& r2) {
    r0 = scaled(a1, n[2]) - scaled(a2, n[1]);
    r1 = scaled(a2, n[0]) - scaled(a0, n[2]);
    r2 = scaled(a0, n[1]) - scaled(a1, n[0]);
}

}  // namespace

FloatPolyMatrix cross_right(const FloatPolyMatrix& a, const FloatVec& n) {
    if (a.cols() == 1 && a.rows() == 3) {
        FloatPolyMatrix r(3, 1, a.arity());
        cross_into(a[0], a[1], a[2], n, r[0], r[1], r[2]);
        return r;
    }
    if (a.cols() != 3) throw InputError("cross_right: rows must have length 3");
    FloatPolyMatrix r(a.rows(), 3, a.arity());
    for (int i = 0; i < a.rows(); ++i) cross_into(a(i, 0), a(i, 1), a(i, 2), n, r(i, 0), r(i, 1), r(i, 2));
    return r;
}

FloatPolyMatrix cross_left(const FloatVec& n, const FloatPolyMatrix& a) {
    FloatPolyMatrix r = transpose(cross_right(transpose(a), n));
    return r * BigFloat(-1);
}

FloatPolyMatrix dot_right(const FloatPolyMatrix& a, const FloatVec& n) {
    FloatPolyMatrix r(a.rows(), 1, a.arity());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += scaled(a(i, j), n[static_cast<std::size_t>(j)]);
    return r;
}

FloatPolyMatrix dot_left(const FloatVec& n, const FloatPolyMatrix& a) {
    FloatPolyMatrix r(a.cols(), 1, a.arity());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i) r[j] += scaled(a(i, j), n[static_cast<std::size_t>(i)]);
    return r;
}

FloatPoly bilinear(const FloatVec& a, const FloatPolyMatrix& m, const FloatVec& b) {
    FloatPoly s(m.arity());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            s += scaled(m(i, j), a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]);
    return s;
}

FloatPoly frobenius(const FloatPolyMatrix& a, const FloatPolyMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("frobenius: shape mismatch");
    FloatPoly s(a.arity());
    for (std::size_t i = 0; i < a.entries().size(); ++i) s += a.entries()[i] * b.entries()[i];
    return s;
}

FloatPolyMatrix div(const FloatPolyMatrix& a) {
    int d = a.arity();
    if (a.cols() == 1 && a.rows() == d) {
        FloatPolyMatrix r(1, 1, d);
        for (int i = 0; i < d; ++i) r[0] += a[i].derivative(i);
        return r;
    }
    if (a.cols() != d) throw InputError("div: row length must equal the space dimension");
    FloatPolyMatrix r(a.rows(), 1, d);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < d; ++j) r[i] += a(i, j).derivative(j);
    return r;
}

FloatPolyMatrix curl(const FloatPolyMatrix& a) {
    if (a.arity() != 3) throw InputError("curl: 3D only");
    auto row = [](const FloatPoly& u0, const FloatPoly& u1, const FloatPoly& u2, FloatPoly& r0, FloatPoly& r1,
                  FloatPoly& r2) {
        r0 = u2.derivative(1) - u1.derivative(2);
        r1 = u0.derivative(2) - u2.derivative(0);
        r2 = u1.derivative(0) - u0.derivative(1);
    };
    if (a.cols() == 1 && a.rows() == 3) {
        FloatPolyMatrix r(3, 1, 3);
        row(a[0], a[1], a[2], r[0], r[1], r[2]);
        return r;
    }
    if (a.cols() != 3) throw InputError("curl: rows must have length 3");
    FloatPolyMatrix r(a.rows(), 3, 3);
    for (int i = 0; i < a.rows(); ++i) row(a(i, 0), a(i, 1), a(i, 2), r(i, 0), r(i, 1), r(i, 2));
    return r;
}

FloatPolyMatrix directional(const FloatPolyMatrix& a, const FloatVec& d) {
    FloatPolyMatrix r(a.rows(), a.cols(), a.arity());
    for (int i = 0; i < a.rows() * a.cols(); ++i) r[i] = directional(a[i], d);
    return r;
}

FloatPolyMatrix restrict(const FloatPolyMatrix& a, const AffineChart& chart) {
    FloatPolyMatrix r(a.rows(), a.cols(), chart.dim());
    for (int i = 0; i < a.rows() * a.cols(); ++i) r[i] = restrict(a[i], chart);
    return r;
}

FloatVec to_floats(const RatVec& v) {
    FloatVec r;
    for (const Rat& q : v) r.emplace_back(q);
    return r;
}

FloatVec unit(const RatVec& v) {
    Rat n2 = 0;
    for (const Rat& q : v) n2 += q * q;
    if (n2 == 0) throw InputError("unit: zero vector");
    BigFloat inv = BigFloat(1) / sqrt_rat(n2);
    FloatVec r;
    for (const Rat& q : v) r.push_back(BigFloat(q) * inv);
    return r;
}

}  // namespace ddlab
