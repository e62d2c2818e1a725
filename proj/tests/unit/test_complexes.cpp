#include <doctest.h>

#include "ddlab/complexes.hpp"

using namespace ddlab;

TEST_CASE("builtin complex list") {
    CHECK(builtin_complexes().size() >= 8);
}

TEST_CASE("divdiv 3D complex at k = 3") {
    ExactnessReport r = verify_complex(find_complex("divdiv3d"), 3);
    REQUIRE(r.slots.size() == 4);
    CHECK(r.head_dim == 4);
    CHECK(r.slots[0].dim == 168);
    CHECK(r.slots[1].dim == 280);
    CHECK(r.slots[2].dim == 120);
    CHECK(r.slots[3].dim == 4);
    CHECK(r.alternating_sum == 4);
    CHECK(r.pass);
}

TEST_CASE("Koszul 3D complex at k = 3") {
    ExactnessReport r = verify_complex(find_complex("koszul3d"), 3);
    // kernel of (.) x x on P_3(S) is x x^T P_1
    CHECK(r.slots[1].kernel_out == 4);
    CHECK(r.pass);
}

TEST_CASE("de Rham at k = 4 and Hessian forward div surjective") {
    CHECK(verify_complex(find_complex("derham3d"), 4).pass);
    ExactnessReport h = verify_complex(find_complex("hessian3d"), 3);
    CHECK(h.slots.back().dim == 12);
    CHECK(h.slots.back().rank_in == 12);
    CHECK(h.pass);
}

TEST_CASE("2D complexes at k = 3") {
    ExactnessReport d = verify_complex(find_complex("divdiv2d"), 3);
    CHECK(d.slots[0].dim == 30);
    CHECK(d.slots[1].dim == 30);
    CHECK(d.slots[2].dim == 3);
    CHECK(d.alternating_sum == 3);
    CHECK(d.pass);
    CHECK(verify_complex(find_complex("hessian2d"), 3).pass);
    CHECK(verify_complex(find_complex("divdiv2d_koszul"), 3).pass);
    CHECK(verify_complex(find_complex("hessian2d_koszul"), 3).pass);
    CHECK(verify_complex(find_complex("divdiv2d_fe"), 3).pass);
}

TEST_CASE("a broken chain is detected") {
    SpaceBasis p2 = polynomial_space(scalar_class(3), 3, 2);
    SpaceBasis v1 = polynomial_space(vector_class(3), 3, 1);
    SpaceBasis s0 = polynomial_space(matrix_class(TensorKind::M, 3), 3, 0);
    // grad then grad is not a complex.
    ExactnessReport r = verify_sequence("grad-grad", 2, nullptr, {p2, v1, s0}, {OperatorSpec::of(OpName::grad), OperatorSpec::of(OpName::grad)});
    CHECK_FALSE(r.pass);
}
