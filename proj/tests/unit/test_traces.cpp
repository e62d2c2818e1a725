#include <doctest.h>

#include <random>

#include "ddlab/bubbles.hpp"
#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"
#include "ddlab/spaces.hpp"
#include "ddlab/traces.hpp"

using namespace ddlab;

namespace {

BigFloat tol60_() { return pow10(-60); }
BigFloat tol55_() { return pow10(-55); }

PolyMatrix random_field(TensorKind kind, int dim, int degree, unsigned seed) {
    SpaceBasis b = polynomial_space(matrix_class(kind, dim), dim, degree, Frame::standard(dim));
    std::mt19937 g(seed);
    std::uniform_int_distribution<int> d(-4, 4);
    PolyMatrix s(dim, dim, dim);
    for (const PolyMatrix& m : b.elements) s += m * Rat(d(g));
    return s;
}

Poly random_scalar(int dim, int degree, unsigned seed) {
    SpaceBasis b = polynomial_space(scalar_class(dim), dim, degree, Frame::standard(dim));
    std::mt19937 g(seed);
    std::uniform_int_distribution<int> d(-4, 4);
    Poly s(dim);
    for (const PolyMatrix& m : b.elements) s += m[0] * Rat(d(g));
    return s;
}

Poly x(int i, int arity = 3) { return Poly::variable(arity, i); }

PolyMatrix position_outer(int dim) {
    PolyMatrix p = PolyMatrix::position(RatVec(static_cast<std::size_t>(dim), Rat(0)));
    return outer(p, p);
}

int face_with_normal_axis(const Tet& t, int axis) {
    for (int f = 0; f < 4; ++f) {
        const Vec3& n = t.faces()[static_cast<std::size_t>(f)].normal;
        int nz = 0;
        for (int i = 0; i < 3; ++i) nz += n[static_cast<std::size_t>(i)] != 0;
        if (nz == 1 && n[static_cast<std::size_t>(axis)] != 0) return f;
    }
    return -1;
}

BigFloat diff(const FloatPolyMatrix& a, const FloatPolyMatrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("trace kinds round-trip through names") {
    for (const char* n : {"divdiv_tr1", "divdiv_tr2", "symcurl_tr1", "symcurl_tr1_perp", "symcurl_tr2", "edge_nn"})
        CHECK(to_string(trace_kind_from_string(n)) == n);
    CHECK_THROWS_AS(trace_kind_from_string("tr3"), InputError);
}

TEST_CASE("normal-normal trace of n n^T is one") {
    Tet t = reference_tet();
    int f = face_with_normal_axis(t, 2);
    REQUIRE(f >= 0);
    ExactMatrix m(3, 3);
    m(2, 2) = 1;
    for (int sign : {1, -1}) {
        TraceValue v = trace(PolyMatrix::constant(m, 3), t, f, TraceKind::divdiv_tr1, sign);
        REQUIRE(v.value.arity() == 2);
        FloatPolyMatrix one = FloatPolyMatrix::constant({{BigFloat(1)}}, 2);
        CHECK(diff(v.value, one) < tol60_());
    }
}

TEST_CASE("symcurl tr2 of dev grad v is -(n x grad)(v . n)") {
    Tet t = reference_tet();
    int f = face_with_normal_axis(t, 2);
    REQUIRE(f >= 0);
    // v . n = x3 * stuff vanishes on x3 = 0
    PolyMatrix v = PolyMatrix::vector({x(0) * x(1), x(2) * x(0) - x(1), x(2) * x(2) * x(1) + x(2) * x(0)});
    TraceValue tr = trace(dev(grad(v)), t, f, TraceKind::symcurl_tr2);
    CHECK(tr.max_abs() < tol60_());

    PolyMatrix w = PolyMatrix::vector({x(1) * x(1), x(0) * x(2), x(0) * x(1) + x(1) * x(1) * x(0)});
    tr = trace(dev(grad(w)), t, f, TraceKind::symcurl_tr2);
    // n = +-e3: -(n x grad)(w . n) = (d_2 w3, -d_1 w3, 0)
    Poly w3 = w[2];
    PolyMatrix expect = PolyMatrix::vector({w3.derivative(1), -w3.derivative(0), Poly(3)});
    FloatPolyMatrix oracle = restrict(FloatPolyMatrix::from(expect), t.face_chart(f));
    CHECK(diff(tr.value, oracle) < tol60_());
    CHECK(tr.max_abs() > BigFloat(0));
}

TEST_CASE("edge normal-normal trace of x x^T on the x3 axis") {
    Tet t = reference_tet();
    int e = t.edge_index(0, 3);
    TraceValue v = trace(position_outer(3), t, e, TraceKind::edge_nn);
    CHECK(v.value.rows() == 2);
    CHECK(v.value.arity() == 1);
    CHECK(v.max_abs() < tol60_());
    // not identically zero on an edge off the axis
    CHECK(trace(position_outer(3), t, t.edge_index(1, 2), TraceKind::edge_nn).max_abs() > BigFloat(0));
}

TEST_CASE("trace class and entity checks") {
    Tet t = reference_tet();
    PolyMatrix nonsym(3, 3, 3);
    nonsym(0, 1) = x(0);
    CHECK_THROWS_AS(trace(nonsym, t, 0, TraceKind::divdiv_tr1), InputError);
    CHECK_THROWS_AS(trace(nonsym, t, 0, TraceKind::edge_nn), InputError);
    CHECK_THROWS_AS(trace(PolyMatrix::identity(3, 3), t, 0, TraceKind::symcurl_tr2), InputError);
    CHECK_THROWS_AS(trace(PolyMatrix::identity(3, 3), t, 4, TraceKind::divdiv_tr1), InputError);
    CHECK_THROWS_AS(trace(PolyMatrix::identity(3, 3), t, 6, TraceKind::edge_nn), InputError);
    CHECK_NOTHROW(trace(nonsym, t, 0, TraceKind::symcurl_tr1));
}

TEST_CASE("Green identity in 3D") {
    Tet ref = reference_tet();
    SUBCASE("constant tau, linear v") {
        ExactMatrix c(3, 3);
        c(0, 0) = 2;
        c(0, 1) = c(1, 0) = -1;
        c(2, 2) = 5;
        IdentityResidual r = green_residual_3d(PolyMatrix::constant(c, 3), x(0) - x(1) * Rat(3) + Poly::constant(3, 1), ref);
        CHECK(r.lhs.is_zero());
        CHECK(r.pass(tol60_()));
    }
    SUBCASE("x x^T against x1^2") {
        // divdiv(x x^T) = 12, int_ref x1^2 = 1/60
        IdentityResidual r = green_residual_3d(position_outer(3), x(0) * x(0), ref);
        CHECK(abs(r.lhs - BigFloat(Rat(1, 5))) < tol60_());
        CHECK(r.pass(tol60_()));
    }
    SUBCASE("random pairs on random tets") {
        BigFloat worst(0);
        for (unsigned s = 1; s <= 10; ++s) {
            Tet t = random_rational_tet(100 + s);
            IdentityResidual r = green_residual_3d(random_field(TensorKind::S, 3, 3, s), random_scalar(3, 4, s + 50), t);
            CHECK(r.scale > BigFloat(0));
            worst = max(worst, r.relative());
        }
        CHECK(worst < tol55_());
    }
}

TEST_CASE("Green identity in 2D") {
    Triangle ref = reference_triangle();
    SUBCASE("constant tau, linear v") {
        ExactMatrix c(2, 2);
        c(0, 0) = 1;
        c(0, 1) = c(1, 0) = 3;
        c(1, 1) = -2;
        IdentityResidual r = green_residual_2d(PolyMatrix::constant(c, 2), x(0, 2) * Rat(2) + x(1, 2), ref);
        CHECK(r.lhs.is_zero());
        CHECK(r.pass(tol60_()));
    }
    SUBCASE("x x^T against x1 x2") {
        // divdiv(x x^T) = 6 in 2D, int_ref x1 x2 = 1/24
        IdentityResidual r = green_residual_2d(position_outer(2), x(0, 2) * x(1, 2), ref);
        CHECK(abs(r.lhs - BigFloat(Rat(1, 4))) < tol60_());
        CHECK(r.pass(tol60_()));
    }
    SUBCASE("random pairs on random triangles") {
        for (unsigned s = 1; s <= 10; ++s) {
            Triangle t = random_rational_triangle(s);
            IdentityResidual r = green_residual_2d(random_field(TensorKind::S, 2, 3, s), random_scalar(2, 4, s + 7), t);
            CHECK(r.pass(tol55_()));
        }
    }
    CHECK_THROWS_AS(green_residual_2d(position_outer(3), x(0, 2), ref), InputError);
}

TEST_CASE("Green identity for sym curl") {
    Tet ref = reference_tet();
    SUBCASE("constant tau") {
        ExactMatrix c(3, 3);
        c(0, 2) = 1;
        c(1, 0) = -2;
        IdentityResidual r = green_residual_symcurl(PolyMatrix::constant(c, 3), position_outer(3), ref);
        CHECK(r.lhs.is_zero());
        CHECK(r.pass(tol60_()));
    }
    SUBCASE("e1 x2 e3^T against I") {
        // curl of the first row (0, 0, x2) is e1, so sym curl tau : I = 1
        PolyMatrix tau(3, 3, 3);
        tau(0, 2) = x(1);
        IdentityResidual r = green_residual_symcurl(tau, PolyMatrix::identity(3, 3), ref);
        CHECK(abs(r.lhs - BigFloat(Rat(1, 6))) < tol60_());
        CHECK(r.pass(tol60_()));
    }
    SUBCASE("random pairs") {
        BigFloat worst(0);
        for (unsigned s = 1; s <= 10; ++s) {
            Tet t = random_rational_tet(200 + s);
            IdentityResidual r = green_residual_symcurl(random_field(TensorKind::M, 3, 2, s),
                                                        random_field(TensorKind::S, 3, 2, s + 30), t);
            worst = max(worst, r.relative());
        }
        CHECK(worst < tol55_());
    }
    PolyMatrix nonsym(3, 3, 3);
    nonsym(0, 1) = x(2);
    CHECK_THROWS_AS(green_residual_symcurl(nonsym, nonsym, ref), InputError);
}

TEST_CASE("trace relations for the symcurl traces") {
    SUBCASE("constant traceless tau") {
        ExactMatrix c(3, 3);
        c(0, 0) = 1;
        c(1, 1) = -1;
        c(1, 2) = 4;
        for (const IdentityResidual& r : trace_relation_checks(PolyMatrix::constant(c, 3), random_rational_tet(5))) {
            CHECK(r.lhs < tol60_());
            CHECK(r.rhs < tol60_());
        }
    }
    SUBCASE("quadratic tau on the reference tet") {
        auto rs = trace_relation_checks(random_field(TensorKind::T, 3, 2, 9), reference_tet());
        CHECK(rs.size() == 4 * 3 + 12 * 2);
        int edgeprop2 = 0;
        for (const IdentityResidual& r : rs) {
            INFO(r.name << " " << r.entity);
            CHECK(r.pass(tol55_()));
            edgeprop2 += r.name == "edgedofprop2";
        }
        CHECK(edgeprop2 == 12);
    }
    SUBCASE("cubic tau on random tets") {
        for (unsigned s = 1; s <= 3; ++s)
            for (const IdentityResidual& r : trace_relation_checks(random_field(TensorKind::T, 3, 3, s), random_rational_tet(300 + s))) {
                INFO(r.name << " " << r.entity);
                CHECK(r.pass(tol55_()));
                CHECK(r.scale > BigFloat(0));
            }
    }
    CHECK_THROWS_AS(trace_relation_checks(PolyMatrix::identity(3, 3), reference_tet()), InputError);
}

TEST_CASE("2D trace relation") {
    Triangle ref = reference_triangle();
    PolyMatrix v = PolyMatrix::vector({x(0, 2) * x(0, 2), x(0, 2) * x(1, 2)});
    auto rs = trace_relation_checks_2d(v, ref);
    REQUIRE(rs.size() == 3);
    for (const IdentityResidual& r : rs) CHECK(r.pass(tol60_()));
    // edge 2 lies on the x1 axis: d_1 d_1 v1 = 2
    CHECK(abs(rs[2].rhs - BigFloat(2)) < tol60_());
    for (unsigned s = 1; s <= 5; ++s) {
        PolyMatrix w = PolyMatrix::vector({random_scalar(2, 4, s), random_scalar(2, 3, s + 11)});
        for (const IdentityResidual& r : trace_relation_checks_2d(w, random_rational_triangle(s + 20))) CHECK(r.pass(tol55_()));
    }
}

TEST_CASE("traces agree across a shared face") {
    Tet a({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}, {0, 1, 2, 3});
    Tet b({Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{1, 1, 1}}, {1, 2, 3, 4});
    const int fa = 0, fb = 3;
    CHECK(a.faces()[fa].outward == -b.faces()[fb].outward);
    PolyMatrix s = random_field(TensorKind::S, 3, 3, 21);
    for (TraceKind k : {TraceKind::divdiv_tr1, TraceKind::divdiv_tr2})
        CHECK(diff(trace(s, a, fa, k).value, trace(s, b, fb, k).value) < tol55_());
    PolyMatrix tt = random_field(TensorKind::T, 3, 3, 22);
    for (TraceKind k : {TraceKind::symcurl_tr1, TraceKind::symcurl_tr1_perp, TraceKind::symcurl_tr2})
        CHECK(diff(trace(tt, a, fa, k).value, trace(tt, b, fb, k).value) < tol55_());
    // shared edges, matched by global ids
    for (auto [p, q] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        int ea = a.edge_index(p, q), eb = b.edge_index(p - 1, q - 1);
        CHECK(diff(trace(s, a, ea, TraceKind::edge_nn).value, trace(s, b, eb, TraceKind::edge_nn).value) < tol55_());
    }
}

TEST_CASE("tr2 changes sign with the normal") {
    Tet t = random_rational_tet(31);
    PolyMatrix s = random_field(TensorKind::S, 3, 3, 32);
    for (int f = 0; f < 4; ++f) {
        TraceValue p = trace(s, t, f, TraceKind::divdiv_tr2, 1);
        TraceValue m = trace(s, t, f, TraceKind::divdiv_tr2, -1);
        CHECK(p.max_abs() > BigFloat(0));
        CHECK((p.value + m.value).max_abs() < tol60_() * p.max_abs());
        TraceValue q = trace(s, t, f, TraceKind::divdiv_tr1, -1);
        CHECK(diff(q.value, trace(s, t, f, TraceKind::divdiv_tr1, 1).value) < tol60_() * q.max_abs());
    }
}

TEST_CASE("sym curl bubble traces vanish") {
    Tet t = random_rational_tet(33);
    for (const PolyMatrix& m : bubble_basis(3, t).all()) {
        BigFloat scale = FloatPolyMatrix::from(m).max_abs();
        for (int f = 0; f < 4; ++f) {
            CHECK(trace(m, t, f, TraceKind::symcurl_tr1_perp).max_abs() < tol60_() * scale);
            CHECK(trace(m, t, f, TraceKind::symcurl_tr2).max_abs() < tol60_() * scale);
        }
    }
}
