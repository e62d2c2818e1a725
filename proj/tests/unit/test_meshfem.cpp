#include <doctest.h>

#include <random>
#include <sstream>

#include "ddlab/errors.hpp"
#include "ddlab/meshfem.hpp"
#include "ddlab/spaces.hpp"

using namespace ddlab;

namespace {

Mesh parse(const std::string& text) {
    std::istringstream in(text);
    return parse_mesh(in, "inline");
}

PolyMatrix random_field(const TensorClass& cls, int degree, unsigned seed) {
    SpaceBasis b = polynomial_space(cls, 3, degree, Frame::standard(3));
    std::mt19937 g(seed);
    std::uniform_int_distribution<int> d(-6, 6);
    PolyMatrix s(b.rows, b.cols, 3);
    for (const PolyMatrix& m : b.elements) s += m * Rat(d(g));
    return s;
}

}  // namespace

TEST_CASE("builtin meshes and Euler counts") {
    Mesh a = builtin_mesh("single_tet");
    CHECK(a.num_vertices() == 4);
    CHECK(a.num_edges() == 6);
    CHECK(a.num_faces() == 4);
    CHECK(a.num_cells() == 1);
    CHECK(a.euler() == 1);

    Mesh b = builtin_mesh("two_tets");
    CHECK(b.num_vertices() == 5);
    CHECK(b.num_edges() == 9);
    CHECK(b.num_faces() == 7);
    CHECK(b.num_cells() == 2);
    CHECK(b.euler() == 1);
    CHECK(std::count(b.boundary_face.begin(), b.boundary_face.end(), false) == 1);

    Mesh c = builtin_mesh("cube6");
    CHECK(c.num_cells() == 6);
    // 12 cube edges, 6 face diagonals, 1 body diagonal
    CHECK(c.num_edges() == 19);
    CHECK(c.num_faces() == 18);
    CHECK(c.euler() == 1);
    CHECK(std::count(c.boundary_face.begin(), c.boundary_face.end(), true) == 12);
    Rat volume = 0;
    for (std::size_t i = 0; i < c.num_cells(); ++i) volume += c.cell(i).volume();
    CHECK(volume == 1);

    CHECK_THROWS_AS(builtin_mesh("torus"), InputError);
}

TEST_CASE("mesh file parsing") {
    Mesh m = parse("# two cells\n5 2\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n2/3 2/3 1/2\n0 1 2 3\n1 2 3 4\n");
    CHECK(m.num_cells() == 2);
    CHECK(m.vertices[4][2] == Rat(1, 2));
    CHECK(m.euler() == 1);

    CHECK_THROWS_AS(parse("4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 4\n"), InputError);   // index range
    CHECK_THROWS_AS(parse("4 1\n0 0 0\n1 0 0\n2 0 0\n0 0 1\n0 1 2 3\n"), InputError);   // degenerate
    CHECK_THROWS_AS(parse("4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n"), InputError);            // truncated
    CHECK_THROWS_AS(parse("4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 x\n0 1 2 3\n"), InputError);   // bad rational
    CHECK_THROWS_AS(parse("4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 3 9\n"), InputError); // trailing
    // vertex 4 sits on the face (1, 2, 3) of the first cell without being in it
    CHECK_THROWS_AS(parse("6 2\n0 0 0\n2 0 0\n0 2 0\n0 0 2\n1 1 0\n3 3 3\n0 1 2 3\n1 4 3 5\n"), InputError);
    CHECK_THROWS_AS(load_mesh("/nonexistent/mesh.txt"), InputError);
}

TEST_CASE("disconnected meshes are flagged") {
    Mesh m = parse("8 2\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n5 0 0\n6 0 0\n5 1 0\n5 0 1\n0 1 2 3\n4 5 6 7\n");
    CHECK_FALSE(m.connected());
    CHECK(m.euler() == 2);
    CHECK(builtin_mesh("cube6").connected());
}

TEST_CASE("global dimensions match the closed forms") {
    for (const std::string& name : builtin_mesh_names()) {
        Mesh m = builtin_mesh(name);
        for (auto [l, k] : {std::pair{3, 3}, std::pair{4, 4}})
            for (const char* e : {"hermite3d", "symcurl3d", "divdiv3d"}) {
                INFO(name << " " << e << " " << l << "," << k);
                CHECK(global_space(e, l, k, m).size() == global_dimension_formula(e, l, k, m));
            }
    }
    Mesh two = builtin_mesh("two_tets");
    CHECK(global_dimension_formula("hermite3d", 3, 3, two) == 264);
    CHECK(global_dimension_formula("symcurl3d", 3, 3, two) == 449);
    CHECK(global_dimension_formula("divdiv3d", 3, 3, two) == 197);
    CHECK(global_dimension_formula("q", 3, 3, two) == 8);
    Mesh one = builtin_mesh("single_tet");
    CHECK(global_dimension_formula("hermite3d", 3, 3, one) == 168);
    CHECK(global_dimension_formula("symcurl3d", 3, 3, one) == 280);
    CHECK(global_dimension_formula("divdiv3d", 3, 3, one) == 120);
    CHECK_THROWS_AS(global_dimension_formula("divdiv2d", 3, 3, one), InputError);
    CHECK_THROWS_AS(global_space("divdiv2d", 3, 3, one), InputError);
}

TEST_CASE("interior functionals are not shared") {
    Mesh m = builtin_mesh("two_tets");
    GlobalSpace s = global_space("divdiv3d", 3, 3, m);
    std::size_t per_cell = 0, shared = 0;
    for (const GlobalDofKey& key : s.dofs) (key.cell >= 0 ? per_cell : shared)++;
    std::size_t local_interior = 0;
    for (const DofFunctional& f : s.cell_dofs[0].functionals) local_interior += f.interior;
    CHECK(per_cell == 2 * local_interior);
    // the F1 moments are among them
    bool f1 = false;
    for (const GlobalDofKey& key : s.dofs) f1 = f1 || (key.cell >= 0 && key.entity_gids.size() == 3);
    CHECK(f1);
    CHECK(shared + per_cell == 197);
    // the shared face (1, 2, 3) carries nn and tr2 functionals once
    std::size_t on_shared_face = 0;
    for (const GlobalDofKey& key : s.dofs) on_shared_face += key.cell < 0 && key.entity_gids == std::vector<int>{1, 2, 3};
    CHECK(on_shared_face == 7);
}

TEST_CASE("shared functionals are single-valued") {
    Mesh m = builtin_mesh("cube6");
    BigFloat tol = pow10(-55);
    CHECK(single_valuedness(global_space("divdiv3d", 3, 3, m), m, random_field(matrix_class(TensorKind::S, 3), 3, 1)) < tol);
    CHECK(single_valuedness(global_space("symcurl3d", 3, 3, m), m, random_field(matrix_class(TensorKind::T, 3), 3, 2)) < tol);
    CHECK(single_valuedness(global_space("hermite3d", 3, 3, m), m, random_field(vector_class(3), 4, 3)) < tol);
}

TEST_CASE("global divdiv complex") {
    GlobalComplexReport one = verify_global_complex(builtin_mesh("single_tet"), 3, 3);
    CHECK(one.pass);
    CHECK(one.dims == std::array<std::size_t, 4>{168, 280, 120, 4});
    CHECK(one.alternating_sum == 4);

    GlobalComplexReport two = verify_global_complex(builtin_mesh("two_tets"), 3, 3);
    CHECK(two.exactness_expected);
    CHECK(two.dims == std::array<std::size_t, 4>{264, 449, 197, 8});
    CHECK(two.formula_dims == two.dims);
    CHECK(two.alternating_sum == 4);
    CHECK(two.ranks == std::array<std::size_t, 3>{260, 189, 8});
    CHECK(two.complex_ok);
    CHECK(two.exact);
    CHECK(two.surjectivity_residual < pow10(-40));
    CHECK(two.composition_residual[1] < pow10(-55));
    CHECK(two.pass);
    CHECK(to_json(two).find("\"pass\": true") != std::string::npos);
}
