#include <doctest.h>

#include "ddlab/errors.hpp"
#include "ddlab/suite.hpp"

using namespace ddlab;

TEST_CASE("dims table on two_tets") {
    Mesh m = resolve_mesh("two_tets");
    const long long expected[] = {264, 449, 197, 8};
    auto names = global_space_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        CheckResult r = run_dims(names[i], m, 3, 3);
        CHECK(r.pass);
        CHECK(r.metric_int("dim") == expected[i]);
    }
    CHECK_THROWS_AS(run_dims("W_h", m, 3, 3), InputError);
    CHECK_THROWS_AS(resolve_mesh("/nonexistent/mesh"), InputError);
}

TEST_CASE("results carry tags, params and metrics") {
    CheckResult r = run_decomposition("kernel_divdiv", 3);
    CHECK(r.tag == "decomp.kernel_divdiv");
    CHECK(r.pass);
    CHECK(r.metric_int("nullity") == 116);
    CHECK(r.metric("missing") == nullptr);
    CHECK_THROWS_AS(r.metric_int("missing"), InternalError);
    CHECK_THROWS_AS(run_decomposition("nope", 3), InputError);
}

TEST_CASE("seeded inputs are reproducible") {
    CHECK(random_tensor(matrix_class(TensorKind::S, 3), 3, 2, 5) == random_tensor(matrix_class(TensorKind::S, 3), 3, 2, 5));
    CHECK(random_scalar(2, 3, 1) != random_scalar(2, 3, 2));
    CHECK(seeded_tet(0).volume() == Rat(1, 6));
    CheckResult a = run_green("divdiv2d", 2, 1, 2), b = run_green("divdiv2d", 2, 1, 2);
    CHECK(a.pass);
    CHECK(std::get<double>(*a.metric("max_relative_residual")) == std::get<double>(*b.metric("max_relative_residual")));
    CHECK_THROWS_AS(run_green("divdiv4d", 2, 1, 1), InputError);
    CHECK_THROWS_AS(run_trace("3d", 2, 1, 0), InputError);
}

TEST_CASE("cell selection") {
    CHECK(run_unisolvence("divdiv2d", 3, 3, "reference", 9).pass);
    CHECK_THROWS_AS(run_unisolvence("divdiv2d", 3, 3, "sphere", 1), InputError);
}
