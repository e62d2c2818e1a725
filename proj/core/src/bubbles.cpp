#include "ddlab/bubbles.hpp"

#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"

namespace ddlab {

namespace {

PolyMatrix constant_matrix(const std::array<std::array<Rat, 3>, 3>& a) {
    ExactMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i][j];
    return PolyMatrix::constant(m, 3);
}

PolyMatrix outer_const(const Vec3& a, const Vec3& b) {
    std::array<std::array<Rat, 3>, 3> m{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = a[i] * b[j];
    return constant_matrix(m);
}

SpaceBasis custom_space(std::string name, const TensorClass& cls, int arity, const Frame& frame,
                        std::vector<PolyMatrix> elements) {
    SpaceBasis b;
    b.name = std::move(name);
    b.cls = cls;
    b.arity = arity;
    b.frame = frame;
    if (cls.kind == TensorKind::Scalar) {
        b.rows = b.cols = 1;
    } else if (cls.kind == TensorKind::Vector) {
        b.rows = cls.dim;
        b.cols = 1;
    } else {
        b.rows = b.cols = cls.dim;
    }
    int deg = 0;
    for (const PolyMatrix& m : elements) deg = std::max(deg, m.degree());
    b.degree = deg;
    b.elements = std::move(elements);
    return b;
}

// Elements of `shape` annihilated by every non-interior functional.
SpaceBasis boundary_nullspace(std::string name, const SpaceBasis& shape, const ElementDofs& dofs) {
    DofMatrix m = dof_matrix(dofs, shape.elements);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < dofs.size(); ++i)
        if (!dofs.functionals[i].interior) rows.push_back(i);
    ExactMatrix b = m.rational.select_rows(rows);
    std::vector<PolyMatrix> elems;
    for (const RatVec& c : nullspace_basis(b)) {
        PolyMatrix s(shape.rows, shape.cols, shape.arity);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) s += shape.elements[j] * c[j];
        elems.push_back(std::move(s));
    }
    return custom_space(std::move(name), shape.cls, shape.arity, shape.frame, std::move(elems));
}

// P_{k-2} functions L2-orthogonal to P_1 on the simplex with the given vertices.
SpaceBasis orthogonal_to_p1(int arity, int k, const Frame& frame, const std::vector<RatVec>& vertices) {
    SpaceBasis p = polynomial_space(scalar_class(arity), arity, k - 2, frame);
    std::vector<Poly> lin = {Poly::constant(arity, 1)};
    for (int i = 0; i < arity; ++i) lin.push_back(Poly::variable(arity, i));
    ExactMatrix g(lin.size(), p.size());
    for (std::size_t i = 0; i < lin.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) g(i, j) = integrate_simplex(lin[i] * p.elements[j][0], vertices);
    std::vector<PolyMatrix> elems;
    for (const RatVec& c : nullspace_basis(g)) {
        Poly s(arity);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) s += p.elements[j][0] * c[j];
        elems.push_back(PolyMatrix::scalar(s));
    }
    return custom_space("P_" + std::to_string(k - 2) + "_perp_P1", scalar_class(arity), arity, frame,
                        std::move(elems));
}

std::vector<Poly> frame_monomials(const Frame& fr, int hi) {
    std::vector<Poly> out;
    if (hi < 0) return out;
    int d = static_cast<int>(fr.origin.size());
    std::vector<Poly> local;
    for (int i = 0; i < d; ++i)
        local.push_back((Poly::variable(d, i) - Poly::constant(d, fr.origin[static_cast<std::size_t>(i)])) *
                        Rat(1 / fr.scale));
    for (const MultiIndex& a : monomials_up_to(d, hi)) out.push_back(substitute(Poly::monomial(d, a), local));
    return out;
}

}  // namespace

std::array<PolyMatrix, 3> psi_matrices(const Tet& t, int face) {
    const TetFace& f = t.faces().at(static_cast<std::size_t>(face));
    const Vec3& N = f.normal;
    Vec3 T1 = t.vertex(f.v[1]) - t.vertex(f.v[0]);
    std::array<std::array<Rat, 3>, 3> p3{};
    Rat nn = norm2(N);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) p3[i][j] = (i == j ? nn : Rat(0)) - 3 * N[i] * N[j];
    return {outer_const(T1, N), outer_const(cross(N, T1), N), constant_matrix(p3)};
}

std::vector<PolyMatrix> BubbleBasis::all() const {
    std::vector<PolyMatrix> out;
    for (const auto& f : face) out.insert(out.end(), f.begin(), f.end());
    out.insert(out.end(), interior.begin(), interior.end());
    return out;
}

std::size_t BubbleBasis::size() const {
    std::size_t n = interior.size();
    for (const auto& f : face) n += f.size();
    return n;
}

std::size_t bubble_dimension(int l) {
    long m = l;
    return static_cast<std::size_t>((4 * m * m * m + 6 * m * m - 10 * m) / 3);
}

BubbleBasis bubble_basis(int l, const Tet& t) {
    if (l < 2) throw InputError("bubble_basis needs l >= 2");
    if (t.volume() == 0) throw InputError("bubble_basis: degenerate tetrahedron");
    BubbleBasis b;
    b.l = l;
    std::array<std::array<PolyMatrix, 3>, 4> psi;
    for (int f = 0; f < 4; ++f) psi[static_cast<std::size_t>(f)] = psi_matrices(t, f);
    for (int f = 0; f < 4; ++f) {
        const TetFace& face = t.faces()[static_cast<std::size_t>(f)];
        // Face polynomials in the barycentric coordinates of the sorted triple.
        std::vector<Poly> params = {t.lambda(face.v[1]), t.lambda(face.v[2])};
        Poly bf = t.face_bubble(f);
        for (const MultiIndex& a : monomials_up_to(2, l - 2)) {
            Poly q = bf * substitute(Poly::monomial(2, a), params);
            for (const PolyMatrix& p : psi[static_cast<std::size_t>(f)]) b.face[static_cast<std::size_t>(f)].push_back(q * p);
        }
    }
    Poly bk = t.cell_bubble();
    for (const Poly& m : frame_monomials(t.local_frame(), l - 3)) {
        Poly q = bk * m;
        for (int f = 0; f < 4; ++f)
            for (int i = 0; i < 2; ++i) b.interior.push_back(q * psi[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)]);
    }
    return b;
}

SpaceBasis ring_sigma_basis(int l, int k, const Tet& t) {
    ElementDef e = make_element("divdiv3d", l, k);
    return boundary_nullspace("ring_Sigma_" + std::to_string(l) + "," + std::to_string(k), e.shape(t), e.dofs(t));
}

SpaceBasis ring_sigma_basis_2d(int l, int k, const Triangle& f) {
    ElementDef e = make_element("divdiv2d", l, k);
    return boundary_nullspace("ring_Sigma2_" + std::to_string(l) + "," + std::to_string(k), e.shape(f), e.dofs(f));
}

ExactnessReport verify_bubble_complex(int l, int k, const Tet& t) {
    Frame fr = t.local_frame();
    std::vector<PolyMatrix> head;
    Poly bk = t.cell_bubble();
    for (const Poly& m : frame_monomials(fr, l - 2))
        for (int i = 0; i < 3; ++i) {
            PolyMatrix v(3, 1, 3);
            v[i] = bk * m;
            head.push_back(std::move(v));
        }
    std::vector<SpaceBasis> spaces;
    spaces.push_back(custom_space("b_K P_" + std::to_string(l - 2) + "(R3)", vector_class(3), 3, fr, std::move(head)));
    spaces.push_back(custom_space("B_" + std::to_string(l + 1) + "(sym curl)", matrix_class(TensorKind::T, 3), 3, fr,
                                  bubble_basis(l, t).all()));
    spaces.push_back(ring_sigma_basis(l, k, t));
    std::vector<RatVec> verts;
    for (const Vec3& v : t.vertices()) verts.push_back(to_ratvec(v));
    spaces.push_back(orthogonal_to_p1(3, k, fr, verts));
    return verify_sequence("bubble3d", k, nullptr, spaces,
                           {OperatorSpec::of(OpName::dev_grad), OperatorSpec::of(OpName::sym_curl),
                            OperatorSpec::of(OpName::div_div)});
}

ExactnessReport verify_2d_bubble_complex(int l, int k, const Triangle& f) {
    Frame fr = f.local_frame();
    std::vector<PolyMatrix> head;
    Poly bf = f.bubble();
    for (const Poly& m : frame_monomials(fr, l - 2))
        for (int i = 0; i < 2; ++i) {
            PolyMatrix v(2, 1, 2);
            v[i] = bf * m;
            head.push_back(std::move(v));
        }
    std::vector<SpaceBasis> spaces;
    spaces.push_back(custom_space("b_F P_" + std::to_string(l - 2) + "(R2)", vector_class(2), 2, fr, std::move(head)));
    spaces.push_back(ring_sigma_basis_2d(l, k, f));
    spaces.push_back(orthogonal_to_p1(2, k, fr, f.vertex_list()));
    return verify_sequence("bubble2d", k, nullptr, spaces,
                           {OperatorSpec::of(OpName::sym_curl), OperatorSpec::of(OpName::div_div)});
}

}  // namespace ddlab
