#include <doctest.h>

#include "ddlab/tensor.hpp"

using namespace ddlab;

namespace {

Poly x(int i) { return Poly::variable(3, i); }
Poly c(const Rat& v) { return Poly::constant(3, v); }
PolyMatrix vec(const Poly& a, const Poly& b, const Poly& d) { return PolyMatrix::vector({a, b, d}); }

}  // namespace

TEST_CASE("tensor classes have the expected sizes") {
    CHECK(matrix_class(TensorKind::M, 3).components() == 9);
    CHECK(matrix_class(TensorKind::S, 3).components() == 6);
    CHECK(matrix_class(TensorKind::K, 3).components() == 3);
    CHECK(matrix_class(TensorKind::T, 3).components() == 8);
    CHECK(class_basis(matrix_class(TensorKind::T, 3)).size() == 8);
    CHECK(class_basis(matrix_class(TensorKind::S, 2)).size() == 3);
}

TEST_CASE("decompose identity and e1 e2^T") {
    PolyMatrix id = PolyMatrix::identity(3, 3);
    Decomposition d = decompose(id);
    CHECK(d.sym_part == id);
    CHECK(d.skw_part.is_zero());
    CHECK(d.dev_part.is_zero());
    CHECK(d.trace == c(3));

    PolyMatrix e(3, 3, 3);
    e(0, 1) = c(1);
    Decomposition de = decompose(e);
    PolyMatrix expect(3, 3, 3);
    expect(0, 1) = c(Rat(1, 2));
    expect(1, 0) = c(Rat(1, 2));
    CHECK(de.sym_part == expect);
    CHECK(de.trace.is_zero());
    CHECK(de.sym_part + de.skw_part == e);
    CHECK(trace(de.dev_part).is_zero());
}

TEST_CASE("mskw and vskw") {
    PolyMatrix m = mskw(vec(c(1), c(2), c(3)));
    ExactMatrix v = m.evaluate({0, 0, 0});
    int expect[3][3] = {{0, -3, 2}, {3, 0, -1}, {-2, 1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(v(i, j) == expect[i][j]);
    CHECK(decompose(m).sym_part.is_zero());
    CHECK(m.classify().kind == TensorKind::K);
    CHECK(vskw(PolyMatrix::identity(3, 3)).is_zero());
    PolyMatrix w = vec(x(0), Poly(3), x(2));
    CHECK(vskw(mskw(w)) == w);
}

TEST_CASE("row-wise and column-wise cross products") {
    PolyMatrix X = PolyMatrix::position({0, 0, 0});
    PolyMatrix u = vec(c(1), Poly(3), Poly(3));
    PolyMatrix v = vec(Poly(3), c(1), Poly(3));
    // (u v^T) x x = u (v x x)^T
    CHECK(cross_right(outer(u, v), X) == outer(u, cross_right(v, X)));

    // I x e3 has rows e_i x e3.
    PolyMatrix e3 = vec(Poly(3), Poly(3), c(1));
    ExactMatrix ie3 = cross_right(PolyMatrix::identity(3, 3), e3).evaluate({0, 0, 0});
    int expect[3][3] = {{0, -1, 0}, {1, 0, 0}, {0, 0, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(ie3(i, j) == expect[i][j]);

    PolyMatrix tau(3, 3, 3);
    tau(0, 0) = x(0) * x(1);
    tau(0, 2) = x(2);
    tau(1, 1) = c(2) + x(0);
    tau(2, 0) = x(1) * x(1);
    CHECK(dot_right(cross_right(tau, X), X).is_zero());
    // b x A = -(A^T x b)^T
    PolyMatrix b = vec(x(1), c(1), x(0));
    CHECK(cross_left(b, tau) == -transpose(cross_right(transpose(tau), b)));
    // associativity of b x A x c
    CHECK(cross_right(cross_left(b, tau), X) == cross_left(b, cross_right(tau, X)));
}

TEST_CASE("trace of tau x x equals -2 x . vskw tau") {
    PolyMatrix X = PolyMatrix::position({0, 0, 0});
    PolyMatrix tau(3, 3, 3);
    tau(0, 1) = x(2) * x(2);
    tau(1, 0) = x(0);
    tau(2, 1) = c(5);
    tau(1, 2) = x(1) * x(0);
    tau(2, 2) = x(0);
    CHECK(trace(cross_right(tau, X)) == Rat(-2) * inner(X, vskw(tau)));
}

TEST_CASE("2D rotation") {
    PolyMatrix X = PolyMatrix::position({0, 0});
    PolyMatrix xp = perp(X);
    CHECK(xp[0] == Poly::variable(2, 1));
    CHECK(xp[1] == -Poly::variable(2, 0));
    CHECK(inner(X, xp).is_zero());
}
