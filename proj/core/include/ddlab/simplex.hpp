#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ddlab/bigfloat.hpp"
#include "ddlab/poly.hpp"
#include "ddlab/spaces.hpp"

namespace ddlab {

using FloatVec3 = std::array<BigFloat, 3>;

// Unit vector d / |d| kept as the exact direction plus |d|^2.
struct Direction {
    Vec3 dir{};
    Rat norm_sq = 0;

    FloatVec3 unit() const;
};

// Edge of a tetrahedron, oriented from the lower to the higher global index.
struct TetEdge {
    std::array<int, 2> v{};  // local vertex indices, gid[v[0]] < gid[v[1]]
    Vec3 tangent{};          // v_hi - v_lo
};

// Face opposite local vertex `opposite`; vertices sorted by global index.
struct TetFace {
    int opposite = 0;
    std::array<int, 3> v{};
    Vec3 normal{};     // right-hand normal of the sorted triple (global)
    int outward = 1;   // +1 when `normal` points out of this tet
    Vec3 outward_normal() const { return outward > 0 ? normal : Rat(-1) * normal; }
};

// Edge frame {t, n1, n2}: n1 = t x a for the axis a minimizing |t . a|,
// n2 = t x n1. Depends only on the edge direction.
struct EdgeFrame {
    Direction t, n1, n2;
};
EdgeFrame edge_frame(const Vec3& tangent);

// Unit face frame with t1 x t2 = n (floats).
struct FaceFrame {
    FloatVec3 n, t1, t2;
};

class Tet {
public:
    Tet(const std::array<Vec3, 4>& vertices, const std::array<int, 4>& global_ids);

    const Vec3& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
    const std::array<Vec3, 4>& vertices() const { return v_; }
    int gid(int i) const { return gid_[static_cast<std::size_t>(i)]; }
    const std::array<int, 4>& gids() const { return gid_; }
    const Rat& volume() const { return volume_; }  // positive
    const Poly& lambda(int i) const { return lambda_[static_cast<std::size_t>(i)]; }
    const Vec3& barycenter() const { return center_; }
    // Frame centered at the barycenter with scale = max |v_i - c|_inf.
    Frame local_frame() const;

    // Edges in local pair order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
    const std::array<TetEdge, 6>& edges() const { return edges_; }
    // Face i is opposite local vertex i.
    const std::array<TetFace, 4>& faces() const { return faces_; }
    // Local index of the vertex with the lowest global index.
    int lowest_vertex() const;

    AffineChart edge_chart(int e) const;
    AffineChart face_chart(int f) const;
    // n_{F,e} (unnormalized, in the plane of F, pointing out of F across e)
    Vec3 face_edge_normal(int f, int e) const;
    FaceFrame face_frame(int f) const;
    std::vector<RatVec> face_vertices(int f) const;
    std::vector<RatVec> edge_vertices(int e) const;
    std::vector<RatVec> vertex_list() const;
    // Index of the edge joining local vertices a and b.
    int edge_index(int a, int b) const;

    Poly face_bubble(int f) const;
    Poly cell_bubble() const;

private:
    std::array<Vec3, 4> v_;
    std::array<int, 4> gid_;
    Rat volume_;
    Vec3 center_;
    std::array<Poly, 4> lambda_;
    std::array<TetEdge, 6> edges_;
    std::array<TetFace, 4> faces_;
};

Tet reference_tet();
// Rational coordinates p/q with |p| <= 16, 1 <= q <= 16, volume >= 1/100 and
// a shape-regularity floor; deterministic in the seed.
Tet random_rational_tet(std::uint64_t seed);

struct Bubbles {
    std::array<Poly, 4> face;
    Poly cell;
};
Bubbles bubbles(const Tet& t);

struct TriEdge {
    std::array<int, 2> v{};  // gid order
    RatVec tangent;          // v_hi - v_lo
    RatVec outward;          // rotated tangent pointing out of the triangle
};

class Triangle {
public:
    Triangle(const std::array<RatVec, 3>& vertices, const std::array<int, 3>& global_ids);

    const RatVec& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
    int gid(int i) const { return gid_[static_cast<std::size_t>(i)]; }
    const Rat& area() const { return area_; }
    const Poly& lambda(int i) const { return lambda_[static_cast<std::size_t>(i)]; }
    const RatVec& barycenter() const { return center_; }
    Frame local_frame() const;
    // Edge i is opposite local vertex i.
    const std::array<TriEdge, 3>& edges() const { return edges_; }
    AffineChart edge_chart(int e) const;
    std::vector<RatVec> edge_vertices(int e) const;
    std::vector<RatVec> vertex_list() const;
    Poly bubble() const;

private:
    std::array<RatVec, 3> v_;
    std::array<int, 3> gid_;
    Rat area_;
    RatVec center_;
    std::array<Poly, 3> lambda_;
    std::array<TriEdge, 3> edges_;
};

Triangle reference_triangle();
Triangle random_rational_triangle(std::uint64_t seed);

RatVec to_ratvec(const Vec3& v);

}  // namespace ddlab
