#include <doctest.h>

#include "ddlab/simplex.hpp"

using namespace ddlab;

TEST_CASE("reference tetrahedron") {
    Tet t = reference_tet();
    CHECK(t.volume() == Rat(1, 6));
    Poly l0 = Poly::affine(1, {-1, -1, -1});
    CHECK(t.lambda(0) == l0);
    Poly s(3);
    for (int i = 0; i < 4; ++i) s += t.lambda(i);
    CHECK(s == Poly::constant(3, 1));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(t.lambda(i).evaluate(to_ratvec(t.vertex(j))) == (i == j ? 1 : 0));
    // face x3 = 0 is opposite vertex 3
    Vec3 n = t.faces()[3].outward_normal();
    CHECK(n[0] == 0);
    CHECK(n[1] == 0);
    CHECK(n[2] < 0);
    Vec3 n0 = t.faces()[0].outward_normal();
    CHECK(n0[0] > 0);
    CHECK(n0[0] == n0[1]);
    CHECK(n0[1] == n0[2]);
    FaceFrame fr = t.face_frame(0);
    BigFloat inv3 = BigFloat(1) / sqrt_rat(3);
    CHECK(abs(fr.n[0] - inv3) < pow2(-250));
}

TEST_CASE("lambda vanishes on the opposite face and its gradient is inward") {
    Tet t = random_rational_tet(3);
    for (int f = 0; f < 4; ++f) {
        CHECK(restrict(t.lambda(f), t.face_chart(f)).is_zero());
        Vec3 g{t.lambda(f).derivative(0).evaluate({0, 0, 0}), t.lambda(f).derivative(1).evaluate({0, 0, 0}),
               t.lambda(f).derivative(2).evaluate({0, 0, 0})};
        Vec3 n = t.faces()[static_cast<std::size_t>(f)].outward_normal();
        CHECK(is_zero(cross(g, n)));
        CHECK(dot(g, n) < 0);
    }
}

TEST_CASE("edge frame rule") {
    EdgeFrame a = edge_frame({0, 0, 1});
    CHECK(a.n1.dir == Vec3{0, 1, 0});
    CHECK(a.n2.dir == Vec3{-1, 0, 0});
    EdgeFrame b = edge_frame({1, 0, 0});
    CHECK(b.n1.dir == Vec3{0, 0, 1});
    CHECK(b.n2.dir == Vec3{0, -1, 0});
    for (std::uint64_t s = 0; s < 50; ++s) {
        Tet t = random_rational_tet(s);
        EdgeFrame f = edge_frame(t.edges()[s % 6].tangent);
        CHECK(dot(f.t.dir, f.n1.dir) == 0);
        CHECK(dot(f.t.dir, f.n2.dir) == 0);
        CHECK(dot(f.n1.dir, f.n2.dir) == 0);
        CHECK(f.n2.norm_sq == f.t.norm_sq * f.n1.norm_sq);
        FloatVec3 u = f.n2.unit();
        BigFloat len = u[0] * u[0] + u[1] * u[1] + u[2] * u[2] - BigFloat(1);
        CHECK(abs(len) < pow2(-233));
    }
}

TEST_CASE("random tets are deterministic and face-edge normals point outward") {
    Tet a = random_rational_tet(7), b = random_rational_tet(7);
    CHECK(a.vertices() == b.vertices());
    CHECK(a.volume() >= Rat(1, 100));
    for (std::uint64_t s = 0; s < 20; ++s) {
        Tet t = random_rational_tet(s);
        for (int f = 0; f < 4; ++f) {
            std::vector<RatVec> fv = t.face_vertices(f);
            Vec3 mid_f = Rat(1, 3) * (t.vertex(t.faces()[f].v[0]) + t.vertex(t.faces()[f].v[1]) + t.vertex(t.faces()[f].v[2]));
            for (int e = 0; e < 6; ++e) {
                const TetEdge& ed = t.edges()[static_cast<std::size_t>(e)];
                if (ed.v[0] == f || ed.v[1] == f) continue;
                Vec3 mid_e = Rat(1, 2) * (t.vertex(ed.v[0]) + t.vertex(ed.v[1]));
                Vec3 m = t.face_edge_normal(f, e);
                CHECK(dot(m, mid_f - mid_e) < 0);
                CHECK(dot(m, t.faces()[f].normal) == 0);
            }
        }
    }
}

TEST_CASE("bubbles") {
    Tet t = reference_tet();
    Bubbles b = bubbles(t);
    CHECK(b.cell.evaluate({Rat(1, 4), Rat(1, 4), Rat(1, 4)}) == Rat(1, 256));
    CHECK(b.cell.degree() == 4);
    for (int f = 0; f < 4; ++f) {
        CHECK(b.face[static_cast<std::size_t>(f)].degree() == 3);
        CHECK(restrict(b.cell, t.face_chart(f)).is_zero());
        for (int g = 0; g < 4; ++g)
            if (g != f) CHECK(restrict(b.face[static_cast<std::size_t>(f)], t.face_chart(g)).is_zero());
    }
}

TEST_CASE("triangles") {
    Triangle t = reference_triangle();
    CHECK(t.area() == Rat(1, 2));
    CHECK(t.bubble().evaluate({Rat(1, 3), Rat(1, 3)}) == Rat(1, 27));
    Triangle r = random_rational_triangle(4);
    for (int e = 0; e < 3; ++e) {
        const TriEdge& ed = r.edges()[static_cast<std::size_t>(e)];
        Rat s = ed.outward[0] * (r.vertex(e)[0] - r.vertex(ed.v[0])[0]) + ed.outward[1] * (r.vertex(e)[1] - r.vertex(ed.v[0])[1]);
        CHECK(s < 0);
        CHECK(restrict(r.lambda(e), r.edge_chart(e)).is_zero());
    }
}
