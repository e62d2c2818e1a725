#include <doctest.h>

#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"

using namespace ddlab;

namespace {

Poly x(int i) { return Poly::variable(3, i); }
Poly c(const Rat& v) { return Poly::constant(3, v); }

}  // namespace

TEST_CASE("dev grad x vanishes and divdiv xx^T is 12") {
    PolyMatrix X = PolyMatrix::position({0, 0, 0});
    CHECK(apply(OperatorSpec::of(OpName::dev_grad), X).is_zero());
    PolyMatrix q = apply(OperatorSpec::koszul(OpName::koszul_xxT, {0, 0, 0}), PolyMatrix::scalar(c(1)));
    CHECK(apply(OperatorSpec::of(OpName::div_div), q)[0] == c(12));
}

TEST_CASE("sym curl dev grad vanishes") {
    PolyMatrix v = PolyMatrix::vector({x(0) * x(0) * x(1), x(2) * x(2) * x(2), x(0) * x(1) * x(2)});
    PolyMatrix t = apply(OperatorSpec::of(OpName::dev_grad), v);
    CHECK(t.classify().kind == TensorKind::T);
    CHECK(apply(OperatorSpec::of(OpName::sym_curl), t).is_zero());
}

TEST_CASE("operator matrices have the expected ranks") {
    SpaceBasis p5 = polynomial_space(vector_class(3), 3, 5);
    SpaceBasis p4t = polynomial_space(matrix_class(TensorKind::T, 3), 3, 4);
    CHECK(p5.size() == 168);
    CHECK(p4t.size() == 280);
    OpMatrix dg = operator_matrix(OperatorSpec::of(OpName::dev_grad), p5, p4t);
    CHECK(rank(dg.matrix) == 164);

    SpaceBasis p3s = polynomial_space(matrix_class(TensorKind::S, 3), 3, 3);
    SpaceBasis p1 = polynomial_space(scalar_class(3), 3, 1);
    OpMatrix dd = operator_matrix(OperatorSpec::of(OpName::div_div), p3s, p1);
    CHECK(rank(dd.matrix) == 4);
    CHECK(nullspace_basis(dd.matrix).size() == 116);

    OpMatrix xx = operator_matrix(OperatorSpec::koszul(OpName::koszul_xxT, {0, 0, 0}), p1, p3s);
    CHECK(rank(xx.matrix) == 4);

    SpaceBasis p4 = polynomial_space(matrix_class(TensorKind::T, 3), 3, 4);
    OpMatrix sc = operator_matrix(OperatorSpec::of(OpName::sym_curl), p4, p3s);
    CHECK(rank(sc.matrix) == 116);
    CHECK((dd.matrix * sc.matrix).is_zero());
}

TEST_CASE("image outside the codomain is an error") {
    SpaceBasis p2 = polynomial_space(scalar_class(3), 3, 2);
    SpaceBasis p0 = polynomial_space(vector_class(3), 3, 0);
    CHECK_THROWS_AS(operator_matrix(OperatorSpec::of(OpName::grad), p2, p0), InputError);
}

TEST_CASE("pi_RT is a projector onto RT") {
    SpaceBasis rt = rt_space(3);
    OperatorSpec pi = OperatorSpec::koszul(OpName::pi_RT_3d, {0, 0, 0});
    for (const PolyMatrix& e : rt.elements) CHECK(apply(pi, e) == e);
    PolyMatrix v = PolyMatrix::vector({x(0) * x(1) + c(2), x(1) + x(2) * x(2), c(3) * x(2) - x(0)});
    PolyMatrix pv = apply(pi, v);
    CHECK(apply(pi, pv) == pv);
}

TEST_CASE("surface operators on a constant normal") {
    Vec3 n{Rat(1), Rat(1), Rat(1)};
    PolyMatrix v = PolyMatrix::vector({c(1), c(1), c(1)});
    Scaled r = apply_scaled(OperatorSpec::surface(OpName::rot_F, n), v);
    CHECK(r.value.is_zero());
    CHECK(r.scale_sq == Rat(1, 3));
    CHECK(apply_scaled(OperatorSpec::surface(OpName::div_F, n), v).value.is_zero());
    CHECK_THROWS_AS(apply(OperatorSpec::surface(OpName::curl_F, n), PolyMatrix::scalar(x(0))), InputError);
}

TEST_CASE("2D sym curl and divdiv compose to zero") {
    Poly y0 = Poly::variable(2, 0), y1 = Poly::variable(2, 1);
    PolyMatrix v = PolyMatrix::vector({y0 * y0 * y1, y1 * y1 * y1 + y0});
    PolyMatrix s = apply(OperatorSpec::of(OpName::sym_curl), v);
    CHECK(s.classify().kind == TensorKind::S);
    CHECK(apply(OperatorSpec::of(OpName::div_div), s).is_zero());
    PolyMatrix h = apply(OperatorSpec::of(OpName::hess), PolyMatrix::scalar(y0 * y0 * y0 * y1));
    CHECK(apply(OperatorSpec::of(OpName::rot), h).is_zero());
}
