#include "doctest.h"

#include "ddlab/bigfloat.hpp"
#include "ddlab/errors.hpp"
#include "ddlab/exact_matrix.hpp"
#include "ddlab/float_matrix.hpp"

using namespace ddlab;

TEST_CASE("parse_rat") {
    CHECK(parse_rat("3/6") == Rat(1, 2));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK_THROWS_AS(parse_rat("1/0"), InputError);
    CHECK_THROWS_AS(parse_rat("abc"), InputError);
}

TEST_CASE("rank of identity") {
    CHECK(rank(ExactMatrix::identity(3)) == 3);
}

TEST_CASE("nullspace of [1 -1]") {
    ExactMatrix m(1, 2);
    m(0, 0) = 1;
    m(0, 1) = -1;
    auto ns = nullspace_basis(m);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] == ns[0][1]);
    CHECK(ns[0][0] != 0);
}

TEST_CASE("rank of a block matrix with dependent rows") {
    ExactMatrix m(4, 4);
    m(0, 0) = Rat(1, 3);
    m(0, 1) = 2;
    m(1, 0) = Rat(2, 3);
    m(1, 1) = 4;
    m(2, 2) = 5;
    m(3, 3) = Rat(-1, 7);
    CHECK(rank(m) == 3);
    CHECK(nullspace_basis(m).size() == 1);
    auto ns = nullspace_basis(m);
    auto r = m * ns[0];
    for (const auto& x : r) CHECK(x == 0);
}

TEST_CASE("exact solver") {
    ExactMatrix b(3, 2);
    b(0, 0) = 1;
    b(1, 1) = 2;
    b(2, 0) = 1;
    b(2, 1) = 1;
    ExactSolver s(b);
    auto x = s.solve({Rat(1), Rat(4), Rat(3)});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
    CHECK_FALSE(s.solve({Rat(1), Rat(4), Rat(0)}));
}

TEST_CASE("singular values of diag(2, 1/2)") {
    ExactMatrix m(2, 2);
    m(0, 0) = 2;
    m(1, 1) = Rat(1, 2);
    auto sv = min_max_singular(BigFloatMatrix::from_exact(m));
    CHECK(abs(sv.sigma_min - BigFloat(0.5)) < BigFloat(1e-35));
    CHECK(abs(sv.sigma_max - BigFloat(2)) < BigFloat(1e-60));
}

TEST_CASE("singular values of a rectangular matrix") {
    // [[3,0],[4,5]] has singular values sqrt(45) and sqrt(5)
    ExactMatrix m(3, 2);
    m(0, 0) = 3;
    m(1, 0) = 4;
    m(1, 1) = 5;
    auto sv = min_max_singular(BigFloatMatrix::from_exact(m.transpose()));
    CHECK(abs(sv.sigma_max - sqrt(BigFloat(45))) < BigFloat(1e-60));
    CHECK(abs(sv.sigma_min - sqrt(BigFloat(5))) < BigFloat(1e-35));
}

TEST_CASE("numerical rank and inverse") {
    ExactMatrix m(3, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(2, 2) = 3;
    auto r = numerical_rank(BigFloatMatrix::from_exact(m), BigFloat(1e-40), BigFloat(1e3));
    CHECK(r.rank == 2);
    CHECK(r.gap_ok);
    auto inv = inverse(BigFloatMatrix::from_exact(ExactMatrix::identity(2)));
    CHECK(inv(0, 0) == BigFloat(1));
    CHECK_THROWS_AS(inverse(BigFloatMatrix::from_exact(m)), InputError);
}
