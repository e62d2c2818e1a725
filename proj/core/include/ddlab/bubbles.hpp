#pragma once

#include <array>
#include <vector>

#include "ddlab/complexes.hpp"
#include "ddlab/dofs.hpp"
#include "ddlab/simplex.hpp"

namespace ddlab {

// psi_1 = T1 N^T, psi_2 = (N x T1) N^T, psi_3 = |N|^2 I - 3 N N^T for the
// face normal N and the first face chart direction T1 (unnormalized).
std::array<PolyMatrix, 3> psi_matrices(const Tet& t, int face);

// Face blocks b_F P_{l-2}(F) (x) {psi_1, psi_2, psi_3} and the interior block
// b_K P_{l-3}(K) (x) {psi_1, psi_2 : all faces}.
struct BubbleBasis {
    int l = 3;
    std::array<std::vector<PolyMatrix>, 4> face;
    std::vector<PolyMatrix> interior;
    std::vector<PolyMatrix> all() const;
    std::size_t size() const;
};

BubbleBasis bubble_basis(int l, const Tet& t);
std::size_t bubble_dimension(int l);  // (4l^3 + 6l^2 - 10l) / 3

// Elements of Sigma_{l,k}(K) on which every boundary functional vanishes
// (vertex, edge, face nn and tr2 moments); an exact nullspace.
SpaceBasis ring_sigma_basis(int l, int k, const Tet& t);
// Triangle analog: vertex values and both edge traces vanish.
SpaceBasis ring_sigma_basis_2d(int l, int k, const Triangle& f);

// b_K P_{l-2}(R^3) -dev grad-> B_{l+1} -sym curl-> ring Sigma -div div-> P_{k-2} cap P_1^perp -> 0
ExactnessReport verify_bubble_complex(int l, int k, const Tet& t);
// 0 -> b_F P_{l-2}(R^2) -sym curl-> ring Sigma(F) -div div-> P_{k-2} cap P_1^perp -> 0
ExactnessReport verify_2d_bubble_complex(int l, int k, const Triangle& f);

}  // namespace ddlab
