#include "doctest.h"

#include "ddlab/errors.hpp"
#include "ddlab/poly.hpp"

using namespace ddlab;

TEST_CASE("monomial counts") {
    CHECK(monomials_up_to(3, 3).size() == 20);
    CHECK(monomial_count(3, 3) == 20);
    CHECK(monomial_count(2, 4) == 15);
    auto d2 = monomials_of_degree(3, 2);
    REQUIRE(d2.size() == 6);
    CHECK(d2[0] == MultiIndex(2, 0, 0));
    CHECK(d2[1] == MultiIndex(1, 1, 0));
    CHECK(d2[5] == MultiIndex(0, 0, 2));
}

TEST_CASE("euler operator on homogeneous quartic") {
    Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
    Poly q = x * x * y * z + Rat(3) * pow(z, 4) - y * y * y * x;
    CHECK(q.euler() == q * Rat(4));
}

TEST_CASE("derivative and evaluate") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly p = x * x * y + Rat(1, 2) * y;
    CHECK(p.derivative(0) == Rat(2) * x * y);
    CHECK(p.evaluate({Rat(2), Rat(3)}) == Rat(27, 2));
    CHECK(p.homogeneous_component(1) == Rat(1, 2) * y);
}

TEST_CASE("integration over simplices") {
    Poly x = Poly::variable(3, 0);
    std::vector<RatVec> tet = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(integrate_simplex(x, tet) == Rat(1, 24));
    CHECK(integrate_simplex(Poly::constant(3, 1), tet) == Rat(1, 6));
    CHECK(integrate_reference(Poly::variable(2, 0) * Poly::variable(2, 1)) == Rat(1, 24));
    // edge of length 5 in the plane
    std::vector<RatVec> edge = {{0, 0}, {3, 4}};
    CHECK(integrate_simplex(Poly::constant(2, 1), edge) == 5);
    std::vector<RatVec> diag = {{0, 0}, {1, 1}};
    CHECK_THROWS_AS(integrate_simplex(Poly::constant(2, 1), diag), InputError);
}

TEST_CASE("restriction and parameter functions") {
    AffineChart c;
    c.origin = {1, 0, 0};
    c.directions = {{-1, 1, 0}, {-1, 0, 1}};
    Poly s = Poly::variable(3, 0) + Poly::variable(3, 1) + Poly::variable(3, 2);
    Poly r = restrict(s, c);
    CHECK(r == Poly::constant(2, 1));
    auto pf = c.parameter_functions();
    REQUIRE(pf.size() == 2);
    for (int j = 0; j < 2; ++j) {
        RatVec y = {j == 0 ? Rat(1, 3) : Rat(0), j == 1 ? Rat(2, 5) : Rat(0)};
        RatVec pt = c.point(y);
        CHECK(pf[0].evaluate(pt) == y[0]);
        CHECK(pf[1].evaluate(pt) == y[1]);
    }
    CachedRestrictor cr(c);
    Poly q = pow(Poly::variable(3, 1), 2) * Poly::variable(3, 0) - Poly::variable(3, 2);
    CHECK(cr(q) == restrict(q, c));
}
