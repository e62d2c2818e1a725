#include <doctest.h>

#include "ddlab/errors.hpp"
#include "ddlab/spaces.hpp"

using namespace ddlab;

namespace {

SpaceBasis sp(const std::string& name, int k, int l = 3) {
    SpaceParams p;
    p.k = k;
    p.l = l;
    return space_basis(name, p);
}

}  // namespace

TEST_CASE("space dimensions") {
    CHECK(sp("P_S", 3).size() == 120);
    CHECK(sp("C_plus", 3).size() == 4);
    CHECK(sp("RT", 0).size() == 4);
    CHECK(sp("P", 0).size() == 1);
    CHECK(sp("P2", 3).size() == 10);
    for (int k = 3; k <= 5; ++k) CHECK(sp("C", k).size() == static_cast<std::size_t>((5 * k * k * k + 36 * k * k + 67 * k + 36) / 6));
}

TEST_CASE("direct sums at k = 3") {
    DirectSumReport a = verify_direct_sum({sp("C", 3), sp("C_plus", 3)}, sp("P_S", 3));
    CHECK(a.part_dims[0].second == 116);
    CHECK(a.pass);
    DirectSumReport b = verify_direct_sum({sp("hess_P", 3), sp("sym_T_cross_x", 3)}, sp("P_S", 3));
    CHECK(b.part_dims[0].second == 52);
    CHECK(b.part_dims[1].second == 68);
    CHECK(b.pass);
    DirectSumReport c = verify_direct_sum({sp("S_cross_x", 3), sp("dev_grad_P", 4)}, sp("P_T", 4));
    CHECK(c.part_dims[0].second == 116);
    CHECK(c.part_dims[1].second == 164);
    CHECK(c.pass);
    // A sum that is not direct fails.
    CHECK_FALSE(verify_direct_sum({sp("C", 3), sp("hess_P", 3)}, sp("P_S", 3)).pass);
}

TEST_CASE("frames") {
    SpaceParams p;
    p.k = 3;
    p.frame = Frame{{Rat(1, 4), Rat(1, 4), Rat(1, 4)}, Rat(1, 2)};
    SpaceBasis shifted = space_basis("C_plus", p);
    CHECK(shifted.size() == 4);
    CHECK_THROWS_AS(verify_direct_sum({shifted}, sp("P_S", 3)), InputError);
    SpaceBasis sigma = space_basis("Sigma", p);
    CHECK(sigma.size() == 120);
    CHECK(span_rank(sigma.elements) == 120);
}
