#include <doctest.h>

#include "ddlab/errors.hpp"
#include "ddlab/identities.hpp"
#include "ddlab/operators.hpp"
#include "ddlab/tensor.hpp"

using namespace ddlab;

namespace {

Poly x(int i) { return Poly::variable(3, i); }

}  // namespace

TEST_CASE("Euler operator on x1^2 x2 x3") {
    Poly q = x(0) * x(0) * x(1) * x(2);
    Poly r(3);
    for (int i = 0; i < 3; ++i) r += x(i) * q.derivative(i);
    CHECK(r == q * Rat(4));
}

TEST_CASE("skw curl of a hand-picked matrix") {
    // A = x1 E12: curl of row 1 = (0, x1, 0) is e3, so curl A = E13;
    // div A^T = e2 and tr A = 0, so the right side is mskw(e2) / 2
    PolyMatrix a(3, 3, 3);
    a(0, 1) = x(0);
    PolyMatrix c = curl(a);
    CHECK(c(0, 2) == Poly::constant(3, 1));
    PolyMatrix e2 = PolyMatrix::vector({Poly(3), Poly::constant(3, 1), Poly(3)});
    CHECK(div(transpose(a)) == e2);
    CHECK(skw(c) == mskw(e2) * Rat(1, 2));
}

TEST_CASE("identity suite") {
    auto names = identity_names();
    CHECK(names.size() == 9);
    for (const IdentityCheck& r : identity_suite(20, 7)) {
        INFO(r.name << " " << r.max_residual.str(4));
        CHECK(r.samples == 20);
        CHECK(r.pass);
        if (r.exact) CHECK(r.max_residual.is_zero());
    }
    CHECK_THROWS_AS(check_identity("nope", 1, 1), InputError);
}
