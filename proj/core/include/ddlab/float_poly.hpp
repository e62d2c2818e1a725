#pragma once

#include <map>
#include <vector>

#include "ddlab/bigfloat.hpp"
#include "ddlab/float_matrix.hpp"
#include "ddlab/poly.hpp"
#include "ddlab/tensor.hpp"

namespace ddlab {

// Polynomial with big-float coefficients; used where unit frame vectors
// multiply exact polynomials.
class FloatPoly {
public:
    using Terms = std::map<MultiIndex, BigFloat, GradedLex>;

    explicit FloatPoly(int arity = 3) : arity_(arity) {}
    static FloatPoly from(const Poly& p);
    static FloatPoly constant(int arity, const BigFloat& c);

    int arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    void add_term(const MultiIndex& a, const BigFloat& c);
    FloatPoly& operator+=(const FloatPoly& o);
    FloatPoly& operator-=(const FloatPoly& o);
    FloatPoly& operator*=(const BigFloat& s);
    friend FloatPoly operator+(FloatPoly a, const FloatPoly& b) { return a += b; }
    friend FloatPoly operator-(FloatPoly a, const FloatPoly& b) { return a -= b; }
    friend FloatPoly operator*(FloatPoly a, const BigFloat& s) { return a *= s; }
    friend FloatPoly operator*(const BigFloat& s, FloatPoly a) { return a *= s; }
    friend FloatPoly operator*(const FloatPoly& a, const FloatPoly& b);

    FloatPoly derivative(int axis) const;
    BigFloat evaluate(const RatVec& point) const;
    BigFloat max_abs() const;  // largest coefficient magnitude, 0 for the zero polynomial

private:
    int arity_;
    Terms terms_;
};

FloatPoly directional(const FloatPoly& p, const FloatVec& d);
FloatPoly restrict(const FloatPoly& p, const AffineChart& chart);
// Integral over the entity parameterized by the chart (true measure).
BigFloat integrate(const FloatPoly& p, const AffineChart& chart);

class FloatPolyMatrix {
public:
    FloatPolyMatrix() = default;
    FloatPolyMatrix(int rows, int cols, int arity);
    static FloatPolyMatrix from(const PolyMatrix& m);
    static FloatPolyMatrix constant(const std::vector<std::vector<BigFloat>>& m, int arity);
    static FloatPolyMatrix vector(const FloatVec& v, int arity);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int arity() const { return arity_; }
    FloatPoly& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const FloatPoly& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    FloatPoly& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
    const FloatPoly& operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }
    const std::vector<FloatPoly>& entries() const { return data_; }

    FloatPolyMatrix& operator+=(const FloatPolyMatrix& o);
    FloatPolyMatrix& operator-=(const FloatPolyMatrix& o);
    FloatPolyMatrix& operator*=(const BigFloat& s);
    friend FloatPolyMatrix operator+(FloatPolyMatrix a, const FloatPolyMatrix& b) { return a += b; }
    friend FloatPolyMatrix operator-(FloatPolyMatrix a, const FloatPolyMatrix& b) { return a -= b; }
    friend FloatPolyMatrix operator*(FloatPolyMatrix a, const BigFloat& s) { return a *= s; }

    FloatPolyMatrix derivative(int axis) const;
    BigFloat max_abs() const;

private:
    int rows_ = 0, cols_ = 0, arity_ = 3;
    std::vector<FloatPoly> data_;
};

FloatPolyMatrix matmul(const FloatPolyMatrix& a, const FloatPolyMatrix& b);
FloatPolyMatrix transpose(const FloatPolyMatrix& a);
FloatPolyMatrix sym(const FloatPolyMatrix& a);
// Row-wise a x n; for a column vector, the vector cross product.
FloatPolyMatrix cross_right(const FloatPolyMatrix& a, const FloatVec& n);
// Column-wise n x a.
FloatPolyMatrix cross_left(const FloatVec& n, const FloatPolyMatrix& a);
// a n, and n^T a (as a column).
FloatPolyMatrix dot_right(const FloatPolyMatrix& a, const FloatVec& n);
FloatPolyMatrix dot_left(const FloatVec& n, const FloatPolyMatrix& a);
FloatPoly bilinear(const FloatVec& a, const FloatPolyMatrix& m, const FloatVec& b);
FloatPoly frobenius(const FloatPolyMatrix& a, const FloatPolyMatrix& b);
// Row-wise divergence and curl.
FloatPolyMatrix div(const FloatPolyMatrix& a);
FloatPolyMatrix curl(const FloatPolyMatrix& a);
FloatPolyMatrix directional(const FloatPolyMatrix& a, const FloatVec& d);
FloatPolyMatrix restrict(const FloatPolyMatrix& a, const AffineChart& chart);

FloatVec to_floats(const RatVec& v);
FloatVec unit(const RatVec& v);

}  // namespace ddlab
