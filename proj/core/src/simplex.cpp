#include "ddlab/simplex.hpp"

#include <algorithm>
#include <random>

#include "ddlab/errors.hpp"

namespace ddlab {

FloatVec3 Direction::unit() const {
    BigFloat inv = BigFloat(1) / sqrt_rat(norm_sq);
    return {BigFloat(dir[0]) * inv, BigFloat(dir[1]) * inv, BigFloat(dir[2]) * inv};
}

RatVec to_ratvec(const Vec3& v) { return {v[0], v[1], v[2]}; }

namespace {

Direction direction(const Vec3& d) { return {d, norm2(d)}; }

FloatVec3 fcross(const FloatVec3& a, const FloatVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace

EdgeFrame edge_frame(const Vec3& tangent) {
    if (is_zero(tangent)) throw InputError("edge_frame: zero tangent");
    int axis = 0;
    for (int i = 1; i < 3; ++i)
        if (abs_rat(tangent[static_cast<std::size_t>(i)]) < abs_rat(tangent[static_cast<std::size_t>(axis)])) axis = i;
    Vec3 a{Rat(0), Rat(0), Rat(0)};
    a[static_cast<std::size_t>(axis)] = 1;
    Vec3 n1 = cross(tangent, a);
    Vec3 n2 = cross(tangent, n1);
    return {direction(tangent), direction(n1), direction(n2)};
}

Tet::Tet(const std::array<Vec3, 4>& vertices, const std::array<int, 4>& global_ids) : v_(vertices), gid_(global_ids) {
    std::array<int, 4> sorted = gid_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("Tet: global vertex indices must be distinct");
    Vec3 a1 = v_[1] - v_[0], a2 = v_[2] - v_[0], a3 = v_[3] - v_[0];
    Rat det = dot(a1, cross(a2, a3));
    if (det == 0) throw InputError("Tet: degenerate tetrahedron");
    volume_ = abs_rat(det) / 6;
    center_ = Rat(1, 4) * (v_[0] + v_[1] + v_[2] + v_[3]);

    std::array<Vec3, 3> inv_rows{cross(a2, a3), cross(a3, a1), cross(a1, a2)};
    Poly sum(3);
    for (int j = 0; j < 3; ++j) {
        Vec3 r = (1 / det) * inv_rows[static_cast<std::size_t>(j)];
        RatVec lin{r[0], r[1], r[2]};
        lambda_[static_cast<std::size_t>(j + 1)] = Poly::affine(-dot(r, v_[0]), lin);
        sum += lambda_[static_cast<std::size_t>(j + 1)];
    }
    lambda_[0] = Poly::constant(3, 1) - sum;

    const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int e = 0; e < 6; ++e) {
        int a = pairs[e][0], b = pairs[e][1];
        if (gid(a) > gid(b)) std::swap(a, b);
        edges_[static_cast<std::size_t>(e)] = {{a, b}, v_[static_cast<std::size_t>(b)] - v_[static_cast<std::size_t>(a)]};
    }
    for (int f = 0; f < 4; ++f) {
        TetFace& face = faces_[static_cast<std::size_t>(f)];
        face.opposite = f;
        int n = 0;
        for (int i = 0; i < 4; ++i)
            if (i != f) face.v[static_cast<std::size_t>(n++)] = i;
        std::sort(face.v.begin(), face.v.end(), [this](int x, int y) { return gid(x) < gid(y); });
        const Vec3& p0 = vertex(face.v[0]);
        face.normal = cross(vertex(face.v[1]) - p0, vertex(face.v[2]) - p0);
        face.outward = dot(face.normal, p0 - vertex(f)) > 0 ? 1 : -1;
    }
}

Frame Tet::local_frame() const {
    Rat h = 0;
    for (const Vec3& p : v_)
        for (std::size_t i = 0; i < 3; ++i) h = std::max(h, abs_rat(p[i] - center_[i]));
    return Frame{to_ratvec(center_), h};
}

int Tet::lowest_vertex() const {
    return static_cast<int>(std::min_element(gid_.begin(), gid_.end()) - gid_.begin());
}

AffineChart Tet::edge_chart(int e) const {
    const TetEdge& ed = edges_.at(static_cast<std::size_t>(e));
    return AffineChart{to_ratvec(vertex(ed.v[0])), {to_ratvec(ed.tangent)}};
}

AffineChart Tet::face_chart(int f) const {
    const TetFace& face = faces_.at(static_cast<std::size_t>(f));
    const Vec3& p0 = vertex(face.v[0]);
    return AffineChart{to_ratvec(p0), {to_ratvec(vertex(face.v[1]) - p0), to_ratvec(vertex(face.v[2]) - p0)}};
}

Vec3 Tet::face_edge_normal(int f, int e) const {
    const TetFace& face = faces_.at(static_cast<std::size_t>(f));
    const TetEdge& ed = edges_.at(static_cast<std::size_t>(e));
    int other = -1;
    for (int i : face.v)
        if (i != ed.v[0] && i != ed.v[1]) other = i;
    if (f == ed.v[0] || f == ed.v[1] || other < 0) throw InputError("face_edge_normal: edge not on face");
    Vec3 m = cross(ed.tangent, face.normal);
    if (dot(m, vertex(other) - vertex(ed.v[0])) > 0) m = Rat(-1) * m;
    return m;
}

FaceFrame Tet::face_frame(int f) const {
    const TetFace& face = faces_.at(static_cast<std::size_t>(f));
    FaceFrame fr;
    fr.n = direction(face.outward_normal()).unit();
    fr.t1 = direction(vertex(face.v[1]) - vertex(face.v[0])).unit();
    fr.t2 = fcross(fr.n, fr.t1);
    return fr;
}

std::vector<RatVec> Tet::face_vertices(int f) const {
    const TetFace& face = faces_.at(static_cast<std::size_t>(f));
    return {to_ratvec(vertex(face.v[0])), to_ratvec(vertex(face.v[1])), to_ratvec(vertex(face.v[2]))};
}

std::vector<RatVec> Tet::edge_vertices(int e) const {
    const TetEdge& ed = edges_.at(static_cast<std::size_t>(e));
    return {to_ratvec(vertex(ed.v[0])), to_ratvec(vertex(ed.v[1]))};
}

std::vector<RatVec> Tet::vertex_list() const {
    return {to_ratvec(v_[0]), to_ratvec(v_[1]), to_ratvec(v_[2]), to_ratvec(v_[3])};
}

int Tet::edge_index(int a, int b) const {
    for (int e = 0; e < 6; ++e) {
        const TetEdge& ed = edges_[static_cast<std::size_t>(e)];
        if ((ed.v[0] == a && ed.v[1] == b) || (ed.v[0] == b && ed.v[1] == a)) return e;
    }
    throw InputError("edge_index: no such edge");
}

Poly Tet::face_bubble(int f) const {
    const TetFace& face = faces_.at(static_cast<std::size_t>(f));
    return lambda(face.v[0]) * lambda(face.v[1]) * lambda(face.v[2]);
}

Poly Tet::cell_bubble() const { return lambda_[0] * lambda_[1] * lambda_[2] * lambda_[3]; }

Tet reference_tet() {
    return Tet({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}, {0, 1, 2, 3});
}

namespace {

Rat random_coordinate(std::mt19937_64& rng) {
    long num = static_cast<long>(rng() % 33) - 16;
    long den = static_cast<long>(rng() % 16) + 1;
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat max_edge_sq(const std::vector<RatVec>& pts) {
    Rat m = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rat s = 0;
            for (std::size_t d = 0; d < pts[i].size(); ++d) s += (pts[i][d] - pts[j][d]) * (pts[i][d] - pts[j][d]);
            m = std::max(m, s);
        }
    return m;
}

}  // namespace

Tet random_rational_tet(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x51ED27AULL);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::array<Vec3, 4> v;
        for (auto& p : v)
            for (auto& c : p) c = random_coordinate(rng);
        Rat det = dot(v[1] - v[0], cross(v[2] - v[0], v[3] - v[0]));
        Rat vol = abs_rat(det) / 6;
        if (vol < Rat(1, 100)) continue;
        Rat l2 = max_edge_sq({to_ratvec(v[0]), to_ratvec(v[1]), to_ratvec(v[2]), to_ratvec(v[3])});
        // V^2 / L^6 against 1/400 of the regular tetrahedron's value 1/72.
        if (vol * vol * 72 * 400 < l2 * l2 * l2) continue;
        return Tet(v, {0, 1, 2, 3});
    }
    throw InternalError("random_rational_tet: rejection sampling exhausted");
}

Bubbles bubbles(const Tet& t) {
    Bubbles b;
    for (int f = 0; f < 4; ++f) b.face[static_cast<std::size_t>(f)] = t.face_bubble(f);
    b.cell = t.cell_bubble();
    return b;
}

Triangle::Triangle(const std::array<RatVec, 3>& vertices, const std::array<int, 3>& global_ids)
    : v_(vertices), gid_(global_ids) {
    for (const RatVec& p : v_)
        if (p.size() != 2) throw InputError("Triangle: vertices must be 2D");
    if (gid_[0] == gid_[1] || gid_[0] == gid_[2] || gid_[1] == gid_[2])
        throw InputError("Triangle: global vertex indices must be distinct");
    RatVec a1{v_[1][0] - v_[0][0], v_[1][1] - v_[0][1]};
    RatVec a2{v_[2][0] - v_[0][0], v_[2][1] - v_[0][1]};
    Rat det = a1[0] * a2[1] - a1[1] * a2[0];
    if (det == 0) throw InputError("Triangle: degenerate triangle");
    area_ = abs_rat(det) / 2;
    center_ = {(v_[0][0] + v_[1][0] + v_[2][0]) / 3, (v_[0][1] + v_[1][1] + v_[2][1]) / 3};
    // rows of the inverse of [a1 a2]
    std::array<RatVec, 2> rows{RatVec{a2[1] / det, -a2[0] / det}, RatVec{-a1[1] / det, a1[0] / det}};
    Poly sum(2);
    for (int j = 0; j < 2; ++j) {
        const RatVec& r = rows[static_cast<std::size_t>(j)];
        lambda_[static_cast<std::size_t>(j + 1)] = Poly::affine(-(r[0] * v_[0][0] + r[1] * v_[0][1]), r);
        sum += lambda_[static_cast<std::size_t>(j + 1)];
    }
    lambda_[0] = Poly::constant(2, 1) - sum;
    for (int e = 0; e < 3; ++e) {
        int a = (e + 1) % 3, b = (e + 2) % 3;
        if (gid(a) > gid(b)) std::swap(a, b);
        TriEdge& ed = edges_[static_cast<std::size_t>(e)];
        ed.v = {a, b};
        ed.tangent = {vertex(b)[0] - vertex(a)[0], vertex(b)[1] - vertex(a)[1]};
        ed.outward = {ed.tangent[1], -ed.tangent[0]};
        Rat s = ed.outward[0] * (vertex(e)[0] - vertex(a)[0]) + ed.outward[1] * (vertex(e)[1] - vertex(a)[1]);
        if (s > 0) ed.outward = {-ed.outward[0], -ed.outward[1]};
    }
}

Frame Triangle::local_frame() const {
    Rat h = 0;
    for (const RatVec& p : v_)
        for (std::size_t i = 0; i < 2; ++i) h = std::max(h, abs_rat(p[i] - center_[i]));
    return Frame{center_, h};
}

AffineChart Triangle::edge_chart(int e) const {
    const TriEdge& ed = edges_.at(static_cast<std::size_t>(e));
    return AffineChart{vertex(ed.v[0]), {ed.tangent}};
}

std::vector<RatVec> Triangle::edge_vertices(int e) const {
    const TriEdge& ed = edges_.at(static_cast<std::size_t>(e));
    return {vertex(ed.v[0]), vertex(ed.v[1])};
}

std::vector<RatVec> Triangle::vertex_list() const { return {v_[0], v_[1], v_[2]}; }

Poly Triangle::bubble() const { return lambda_[0] * lambda_[1] * lambda_[2]; }

Triangle reference_triangle() { return Triangle({RatVec{0, 0}, RatVec{1, 0}, RatVec{0, 1}}, {0, 1, 2}); }

Triangle random_rational_triangle(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x7A1ULL);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::array<RatVec, 3> v;
        for (auto& p : v) p = {random_coordinate(rng), random_coordinate(rng)};
        Rat det = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[1][1] - v[0][1]) * (v[2][0] - v[0][0]);
        Rat area = abs_rat(det) / 2;
        if (area < Rat(1, 50)) continue;
        Rat l2 = max_edge_sq({v[0], v[1], v[2]});
        // A^2 / L^4 against 1/400 of the equilateral value 3/16.
        if (area * area * 16 * 400 < 3 * l2 * l2) continue;
        return Triangle(v, {0, 1, 2});
    }
    throw InternalError("random_rational_triangle: rejection sampling exhausted");
}

}  // namespace ddlab
