#pragma once

#include <string>
#include <vector>

#include "ddlab/exact_matrix.hpp"
#include "ddlab/poly.hpp"

namespace ddlab {

enum class TensorKind { Scalar, Vector, M, S, K, T };

struct TensorClass {
    TensorKind kind = TensorKind::M;
    int dim = 3;

    // Number of independent components (M=9, S=6, K=3, T=8 in 3D).
    int components() const;
    std::string name() const;
    friend bool operator==(const TensorClass& a, const TensorClass& b) {
        return a.kind == b.kind && a.dim == b.dim;
    }
};

TensorClass scalar_class(int dim);
TensorClass vector_class(int dim);
TensorClass matrix_class(TensorKind kind, int dim);

// Dense rows x cols grid of polynomials sharing one arity. Vectors are n x 1,
// scalars 1 x 1.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int rows, int cols, int arity);

    static PolyMatrix scalar(const Poly& p);
    static PolyMatrix vector(const std::vector<Poly>& v);
    static PolyMatrix constant(const ExactMatrix& m, int arity);
    static PolyMatrix identity(int n, int arity);
    // x - origin as an n x 1 vector.
    static PolyMatrix position(const RatVec& origin);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int arity() const { return arity_; }
    int size() const { return rows_ * cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_vector() const { return cols_ == 1; }

    Poly& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Poly& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    Poly& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
    const Poly& operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }
    const std::vector<Poly>& entries() const { return data_; }

    // Recomputes the tightest class from the entries.
    TensorClass classify() const;
    int degree() const;
    bool is_zero() const;

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    PolyMatrix& operator*=(const Rat& s);
    PolyMatrix& operator*=(const Poly& p);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator-(PolyMatrix a) { return a *= Rat(-1); }
    friend PolyMatrix operator*(PolyMatrix a, const Rat& s) { return a *= s; }
    friend PolyMatrix operator*(const Rat& s, PolyMatrix a) { return a *= s; }
    friend PolyMatrix operator*(const Poly& p, PolyMatrix a) { return a *= p; }
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

    PolyMatrix derivative(int axis) const;
    ExactMatrix evaluate(const RatVec& point) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    int arity_ = 3;
    std::vector<Poly> data_;
};

// Matrix product.
PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix transpose(const PolyMatrix& a);
Poly trace(const PolyMatrix& a);
PolyMatrix sym(const PolyMatrix& a);
PolyMatrix skw(const PolyMatrix& a);
PolyMatrix dev(const PolyMatrix& a);

struct Decomposition {
    PolyMatrix sym_part;
    PolyMatrix skw_part;
    PolyMatrix dev_part;
    Poly trace;
};
Decomposition decompose(const PolyMatrix& b);

// mskw(w) = [[0,-w3,w2],[w3,0,-w1],[-w2,w1,0]]
PolyMatrix mskw(const PolyMatrix& w);
PolyMatrix vskw(const PolyMatrix& a);

// A x b: row i is (row i of A) x b. A may also be a 3-vector.
PolyMatrix cross_right(const PolyMatrix& a, const PolyMatrix& b);
// b x A: column j is b x (column j of A).
PolyMatrix cross_left(const PolyMatrix& b, const PolyMatrix& a);
// A . b = A b for a vector b.
PolyMatrix dot_right(const PolyMatrix& a, const PolyMatrix& b);
// b . A = b^T A returned as a column vector.
PolyMatrix dot_left(const PolyMatrix& b, const PolyMatrix& a);
// u . v for two vectors.
Poly inner(const PolyMatrix& u, const PolyMatrix& v);
// Frobenius pairing A : B.
Poly frobenius(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix outer(const PolyMatrix& u, const PolyMatrix& v);
// v^perp = (v2, -v1) in 2D.
PolyMatrix perp(const PolyMatrix& v);

PolyMatrix restrict(const PolyMatrix& a, const AffineChart& chart);
PolyMatrix substitute(const PolyMatrix& a, const std::vector<Poly>& images);

// Constant bases of the matrix classes (S: E11,E22,E33,E12+E21,E13+E31,E23+E32;
// T: off-diagonal E_ij then E11-E33, E22-E33; K: mskw(e_i)).
std::vector<ExactMatrix> class_basis(const TensorClass& cls);

std::string to_string(const PolyMatrix& a);

}  // namespace ddlab
