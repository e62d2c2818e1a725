#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ddlab/dofs.hpp"
#include "ddlab/float_matrix.hpp"
#include "ddlab/simplex.hpp"

namespace ddlab {

struct Mesh {
    std::string name;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> tets;
    // Derived, sorted by global vertex ids.
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> faces;
    std::vector<bool> boundary_face;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_edges() const { return edges.size(); }
    std::size_t num_faces() const { return faces.size(); }
    std::size_t num_cells() const { return tets.size(); }
    long euler() const;
    bool connected() const;
    Tet cell(std::size_t c) const;
};

// Builds the derived entities; throws InputError for bad indices, degenerate
// or overlapping-face cells, and hanging vertices.
Mesh make_mesh(std::string name, std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets);

std::vector<std::string> builtin_mesh_names();
// single_tet, two_tets, cube6
Mesh builtin_mesh(const std::string& name);
// Text format: "nv nt", nv lines of three rationals ("1/3" allowed), nt
// lines of four 0-based vertex indices. '#' starts a comment.
Mesh parse_mesh(std::istream& in, const std::string& name = "file");
Mesh load_mesh(const std::string& path);

// Global functional identity; cell = -1 for shared functionals.
struct GlobalDofKey {
    std::vector<int> entity_gids;
    std::string tag;
    std::size_t occurrence = 0;  // among groups with this tag on the entity
    std::size_t index = 0;
    long cell = -1;
    friend bool operator<(const GlobalDofKey& a, const GlobalDofKey& b);
};

struct GlobalSpace {
    ElementDef element;
    std::vector<GlobalDofKey> dofs;
    std::vector<ElementDofs> cell_dofs;
    std::vector<std::vector<std::size_t>> local_to_global;  // [cell][local functional]
    std::size_t size() const { return dofs.size(); }
};

// Functionals on shared entities are glued by (sorted entity gids, tag,
// index); interior ones, including the F1 face moments of divdiv3d, stay
// per cell.
GlobalSpace global_space(const std::string& element, int l, int k, const Mesh& mesh);
// Closed-form global dimensions in terms of #V, #E, #F, #T; the name
// "q" gives the discontinuous P_{k-2} space.
std::size_t global_dimension_formula(const std::string& element, int l, int k, const Mesh& mesh);

// Largest relative disagreement between the copies of each shared functional
// evaluated on a globally polynomial field.
BigFloat single_valuedness(const GlobalSpace& space, const Mesh& mesh, const PolyMatrix& field);

struct GlobalComplexReport {
    std::string mesh;
    int l = 3, k = 3;
    std::size_t nv = 0, ne = 0, nf = 0, nt = 0;
    long euler = 0;
    bool exactness_expected = true;  // connected with Euler characteristic 1
    std::array<std::size_t, 4> dims{};          // V_h, Sigma_h^T, Sigma_h^S, Q_h
    std::array<std::size_t, 4> formula_dims{};
    long alternating_sum = 0;
    std::array<BigFloat, 3> inclusion_residual;    // shared-DOF mismatch of the images
    std::array<BigFloat, 2> composition_residual;  // B2 B1, B3 B2
    std::array<std::size_t, 3> ranks{};
    std::array<bool, 3> rank_gap_ok{};
    BigFloat rt_kernel_residual;    // dev grad of interpolated RT fields
    BigFloat surjectivity_residual; // worst relative least-squares residual
    std::array<BigFloat, 3> single_valued;  // V_h, Sigma_h^T, Sigma_h^S
    bool complex_ok = false;
    bool exact = false;
    bool pass = false;
    double seconds = 0;
};

struct GlobalComplexOptions {
    unsigned seed = 1;
    int surjectivity_samples = 20;
};

GlobalComplexReport verify_global_complex(const Mesh& mesh, int l, int k, const GlobalComplexOptions& opt = {});
std::string to_json(const GlobalComplexReport& r);

}  // namespace ddlab
