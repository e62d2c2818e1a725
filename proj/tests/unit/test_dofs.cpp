#include <doctest.h>

#include <random>

#include "ddlab/dofs.hpp"
#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"

using namespace ddlab;

namespace {

long binom(long n, long r) {
    if (r < 0 || n < r) return 0;
    long v = 1;
    for (long i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

long dimP(int d, int m) { return m < 0 ? 0 : binom(m + d, d); }

// Functional counts entity by entity.
long divdiv3d_count(int l, int k) {
    return 4 * 6 + 6 * 3 * dimP(1, l - 2) + 4 * dimP(2, l - 3) + 4 * dimP(2, l - 1) + (dimP(3, k - 2) - 4) +
           l * (l - 1) * (5 * l + 14) / 6 + dimP(2, l - 2);
}

long symcurl3d_count(int l) {
    long vert = 14, edge = 3 * dimP(1, l - 2) + 2 * dimP(1, l - 1) + dimP(1, l);
    long face = (dimP(2, l - 1) - 3) + 2 * dimP(2, l - 1) + (dimP(2, l - 3) - 1 > 0 ? dimP(2, l - 3) - 1 : 0) +
                dimP(2, l - 1);
    long bubble = (4 * l * l * l + 6 * l * l - 10 * l) / 3;
    return 4 * vert + 6 * edge + 4 * face + bubble;
}

PolyMatrix random_element(const SpaceBasis& b, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    PolyMatrix s(b.rows, b.cols, b.arity);
    for (const PolyMatrix& e : b.elements) s += e * (Rat(num(rng)) / den(rng));
    return s;
}

std::size_t find_group(const ElementDofs& d, const std::string& tag, int entity) {
    for (std::size_t g = 0; g < d.groups.size(); ++g)
        if (d.groups[g].tag == tag && d.groups[g].entity == entity) return g;
    FAIL("group not found: " << tag);
    return 0;
}

std::size_t first_row(const ElementDofs& d, std::size_t group) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d.functionals[i].group == group) return i;
    return d.size();
}

Poly bilinear(const Vec3& a, const PolyMatrix& m, const Vec3& b) {
    Poly s(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += m(i, j) * (a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]);
    return s;
}

}  // namespace

TEST_CASE("functional counts match the shape space dimension") {
    Tet t = random_rational_tet(5);
    for (auto [l, k] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {4, 3}, {4, 4}, {4, 5}}) {
        ElementDef e = make_element("divdiv3d", l, k);
        CHECK(static_cast<long>(e.dofs(t).size()) == divdiv3d_count(l, k));
        CHECK(e.shape(t).size() == e.dofs(t).size());
        CHECK(expected_dimension(e) == e.shape(t).size());
        ElementDef b = make_element("divdiv3d_bubbleDofs", l, k);
        CHECK(b.dofs(t).size() == b.shape(t).size());
    }
    for (int l : {3, 4}) {
        ElementDef e = make_element("symcurl3d", l, 3);
        CHECK(static_cast<long>(e.dofs(t).size()) == symcurl3d_count(l));
        CHECK(static_cast<long>(e.dofs(t).size()) == 4 * (l + 4) * (l + 3) * (l + 2) / 3);
        CHECK(make_element("symcurl3d_lagrange", l, 3).dofs(t).size() == e.dofs(t).size());
        ElementDef h = make_element("hermite3d", l, 3);
        CHECK(static_cast<long>(h.dofs(t).size()) ==
              4 * 12 + 6 * 3 * dimP(1, l - 2) + 4 * 3 * dimP(2, l - 1) + 3 * dimP(3, l - 2));
        CHECK(h.dofs(t).size() == h.shape(t).size());
    }
    CHECK(make_element("divdiv3d", 3, 3).dofs(t).size() == 120);
    CHECK(make_element("symcurl3d", 3, 3).dofs(t).size() == 280);
    CHECK(make_element("hermite3d", 3, 3).dofs(t).size() == 168);
    CHECK(make_element("divdiv3d", 3, 4).dofs(t).size() == 116 + 10);
    Triangle f = random_rational_triangle(2);
    for (auto [l, k] : std::vector<std::pair<int, int>>{{3, 3}, {4, 4}, {4, 5}}) {
        ElementDef e = make_element("divdiv2d", l, k);
        CHECK(static_cast<long>(e.dofs(f).size()) == l * l + 5 * l + 3 + k * (k - 1) / 2);
        CHECK(e.shape(f).size() == e.dofs(f).size());
    }
    CHECK(make_element("divdiv2d", 3, 3).dofs(f).size() == 30);
}

TEST_CASE("parameter ranges and cell types are enforced") {
    CHECK_THROWS_AS(make_element("divdiv3d", 2, 3), InputError);
    CHECK_THROWS_AS(make_element("divdiv3d", 3, 2), InputError);
    CHECK_THROWS_AS(make_element("divdiv3d", 3, 5), InputError);
    CHECK_THROWS_AS(make_element("symcurl3d", 2, 3), InputError);
    CHECK_THROWS_AS(make_element("hermite3d", 2, 3), InputError);
    CHECK_THROWS_AS(make_element("nedelec", 3, 3), InputError);
    CHECK_THROWS_AS(make_element("divdiv2d", 3, 3).dofs(reference_tet()), InputError);
    CHECK_THROWS_AS(make_element("divdiv3d", 3, 3).dofs(reference_triangle()), InputError);
}

TEST_CASE("functional values on simple fields") {
    Tet t = reference_tet();
    ElementDofs d = make_element("divdiv3d", 3, 3).dofs(t);
    PolyMatrix x = PolyMatrix::position({0, 0, 0});
    PolyMatrix xxT = matmul(x, transpose(x));
    // face x3 = 0 is opposite vertex 3; the nn moment has weight 1 at l = 3
    std::size_t g = find_group(d, "face n^T tau n", 3);
    CHECK(d.groups[g].count == 1);
    CHECK(evaluate_dof(d, first_row(d, g), xxT).is_zero());

    PolyMatrix id = PolyMatrix::identity(3, 3);
    FloatVec v = evaluate_dofs(d, id);
    REQUIRE(v.size() == 120);
    const int expect[6] = {1, 1, 1, 0, 0, 0};
    for (int vtx = 0; vtx < 4; ++vtx)
        for (int c = 0; c < 6; ++c) CHECK(v[static_cast<std::size_t>(6 * vtx + c)] == BigFloat(expect[c]));

    ExactMatrix c(3, 3);
    c(0, 0) = 2;
    c(0, 1) = c(1, 0) = Rat(1, 3);
    c(1, 2) = c(2, 1) = -1;
    c(2, 2) = 5;
    PolyMatrix tc = PolyMatrix::constant(c, 3);
    for (int f = 0; f < 4; ++f) {
        std::size_t gt = find_group(d, "face tr2(tau)", f);
        FloatVec all = evaluate_dofs(d, tc);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.functionals[i].group == gt) CHECK(all[i].is_zero());
    }
    CHECK_THROWS_AS(evaluate_dof(d, 0, PolyMatrix::constant(ExactMatrix(2, 2), 2)), InputError);
    ExactMatrix ns(3, 3);
    ns(0, 1) = 1;
    CHECK_THROWS_AS(evaluate_dof(d, 0, PolyMatrix::constant(ns, 3)), InputError);
}

TEST_CASE("edge normal moment and scale against an independent float computation") {
    Tet t = random_rational_tet(11);
    ElementDofs d = make_element("divdiv3d", 3, 3).dofs(t);
    PolyMatrix x = PolyMatrix::position({0, 0, 0});
    PolyMatrix tau = matmul(x, transpose(x)) + PolyMatrix::identity(3, 3) * Rat(2);
    for (int e = 0; e < 6; ++e) {
        std::size_t g = find_group(d, "edge n_i^T tau n_j", e);
        std::size_t row = first_row(d, g);  // (n1, n1) against weight 1
        EdgeFrame fr = edge_frame(t.edges()[static_cast<std::size_t>(e)].tangent);
        // int_e n1^T tau n1 ds by Simpson's rule on the quadratic restriction
        Poly p = restrict(bilinear(fr.n1.dir, tau, fr.n1.dir), t.edge_chart(e));
        Rat simpson = (p.evaluate({0}) + 4 * p.evaluate({Rat(1, 2)}) + p.evaluate({1})) / 6;
        BigFloat expect = BigFloat(simpson) * sqrt_rat(fr.t.norm_sq) / BigFloat(fr.n1.norm_sq);
        CHECK(abs(evaluate_dof(d, row, tau) - expect) < pow2(-240));
    }
}

TEST_CASE("F1 is the face opposite the lowest global vertex") {
    Tet t({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}, {7, 3, 9, 5});
    ElementDofs d = make_element("divdiv3d", 3, 3).dofs(t);
    std::size_t g = find_group(d, "face tau n . (n x x) q on F1", 1);
    CHECK(d.groups[g].interior);
    CHECK(d.groups[g].count == 3);
    CHECK(d.groups[g].entity_gids == std::vector<int>{5, 7, 9});
}

TEST_CASE("restricted traces of Sigma have the stated degrees") {
    Tet t = random_rational_tet(21);
    SpaceBasis sigma = make_element("divdiv3d", 3, 4).shape(t);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        PolyMatrix tau = random_element(sigma, rng);
        for (int e = 0; e < 6; ++e) {
            EdgeFrame fr = edge_frame(t.edges()[static_cast<std::size_t>(e)].tangent);
            for (const Vec3* a : {&fr.n1.dir, &fr.n2.dir})
                for (const Vec3* b : {&fr.n1.dir, &fr.n2.dir})
                    CHECK(restrict(bilinear(*a, tau, *b), t.edge_chart(e)).degree() <= 3);
        }
        for (int f = 0; f < 4; ++f) {
            const Vec3& N = t.faces()[static_cast<std::size_t>(f)].normal;
            PolyMatrix tn(3, 1, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) tn[i] += tau(i, j) * N[static_cast<std::size_t>(j)];
            Poly nn = bilinear(N, tau, N);
            Poly tr2 = div(tn)[0] * (2 * norm2(N)) - directional(PolyMatrix::scalar(nn), to_ratvec(N))[0];
            CHECK(restrict(tr2, t.face_chart(f)).degree() <= 2);
        }
    }
}

TEST_CASE("vanishing boundary and cell functionals force div div = 0 and orthogonality") {
    Tet t = random_rational_tet(4);
    for (auto [l, k] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}}) {
        ElementDef e = make_element("divdiv3d", l, k);
        SpaceBasis sigma = e.shape(t);
        ElementDofs d = e.dofs(t);
        DofMatrix m = dof_matrix(d, sigma.elements);
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.groups[d.functionals[i].group].tag != "face tau n . (n x x) q on F1") rows.push_back(i);
        auto ns = nullspace_basis(m.rational.select_rows(rows));
        CHECK(ns.size() == static_cast<std::size_t>((l - 1) * l / 2));
        SpaceBasis ps = polynomial_space(matrix_class(TensorKind::S, 3), 3, l - 1);
        std::vector<RatVec> verts;
        for (const Vec3& v : t.vertices()) verts.push_back(to_ratvec(v));
        for (const RatVec& c : ns) {
            PolyMatrix tau(3, 3, 3);
            for (std::size_t j = 0; j < c.size(); ++j) tau += sigma.elements[j] * c[j];
            CHECK(divdiv(tau).is_zero());
            for (const PolyMatrix& s : ps.elements) CHECK(integrate_simplex(frobenius(tau, s), verts) == 0);
        }
    }
}

TEST_CASE("unisolvence") {
    SUBCASE("divdiv3d (3,3) on the reference tetrahedron") {
        UnisolvenceReport r = unisolvence_check(make_element("divdiv3d", 3, 3), reference_tet());
        CHECK(r.rows == 120);
        CHECK(r.cols == 120);
        CHECK(r.pass);
    }
    SUBCASE("divdiv3d (3,4) on random tet 1") {
        UnisolvenceReport r = unisolvence_check(make_element("divdiv3d", 3, 4), random_rational_tet(1));
        CHECK(r.rows == 126);
        CHECK(r.pass);
    }
    SUBCASE("hermite3d") {
        UnisolvenceReport r = unisolvence_check(make_element("hermite3d", 3, 3), random_rational_tet(2));
        CHECK(r.rows == 168);
        CHECK(r.pass);
    }
    SUBCASE("Lagrange-type sym curl set") {
        UnisolvenceReport r = unisolvence_check(make_element("symcurl3d_lagrange", 3, 3), reference_tet());
        CHECK(r.rows == 280);
        CHECK(r.pass);
    }
    SUBCASE("bubble moment variant") {
        UnisolvenceReport r = unisolvence_check(make_element("divdiv3d_bubbleDofs", 3, 3), random_rational_tet(3));
        CHECK(r.rows == 120);
        CHECK(r.pass);
    }
    SUBCASE("divdiv2d") {
        UnisolvenceReport r = unisolvence_check(make_element("divdiv2d", 3, 3), random_rational_triangle(1));
        CHECK(r.rows == 30);
        CHECK(r.pass);
    }
}

TEST_CASE("zero functional values force the zero function (exact rank)") {
    for (const char* name : {"divdiv3d", "hermite3d"}) {
        ElementDef e = make_element(name, 3, 3);
        Tet t = random_rational_tet(8);
        SpaceBasis shape = e.shape(t);
        CHECK(rank(dof_matrix(e.dofs(t), shape.elements).rational) == shape.size());
    }
    ElementDef e2 = make_element("divdiv2d", 4, 4);
    Triangle f = random_rational_triangle(8);
    SpaceBasis s2 = e2.shape(f);
    CHECK(rank(dof_matrix(e2.dofs(f), s2.elements).rational) == s2.size());
}

TEST_CASE("dual bases are biorthogonal") {
    BigFloat tol = pow2(-199);  // < 1e-60
    CHECK(dual_basis(make_element("hermite3d", 3, 3), reference_tet()).residual < tol);
    CHECK(dual_basis(make_element("divdiv3d", 3, 3), random_rational_tet(6)).residual < tol);
    CHECK(dual_basis(make_element("symcurl3d", 3, 3), reference_tet()).residual < tol);
}

TEST_CASE("L2-orthonormalizer on P_1 over the reference tet") {
    SpaceBasis p1 = polynomial_space(scalar_class(3), 3, 1, Frame::standard(3));
    REQUIRE(p1.size() == 4);
    // int_K x_i = 1/24, int_K x_i^2 = 1/60, int_K x_i x_j = 1/120, |K| = 1/6
    std::vector<std::vector<Rat>> g(4, std::vector<Rat>(4));
    auto lin = [&](int b) -> int {
        for (int i = 0; i < 3; ++i)
            if (p1.elements[static_cast<std::size_t>(b)][0].coeff(MultiIndex(i == 0, i == 1, i == 2)) != 0) return i;
        return -1;
    };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            int ia = lin(a), ib = lin(b);
            Rat v = ia < 0 && ib < 0 ? Rat(1, 6) : (ia < 0 || ib < 0) ? Rat(1, 24) : ia == ib ? Rat(1, 60) : Rat(1, 120);
            g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
        }
    BigFloatMatrix c = l2_orthonormalizer(p1, reference_tet().vertex_list());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            BigFloat s(0);
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = 0; b < 4; ++b) s += c(a, i) * BigFloat(g[a][b]) * c(b, j);
            CHECK(abs(s - BigFloat(i == j ? 1 : 0)) < pow10(-70));
        }
    CHECK(c(1, 0).is_zero());  // upper triangular
}

TEST_CASE("unisolvence ratio does not depend on the monomial basis conditioning") {
    // a flat random tet where the local monomial basis is poorly conditioned
    UnisolvenceReport r = unisolvence_check(make_element("divdiv3d", 3, 3), random_rational_tet(3));
    CHECK(r.pass);
    CHECK(r.ratio > r.monomial_ratio);
}
