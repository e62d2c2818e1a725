#include "ddlab/traces.hpp"

#include <array>

#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"

namespace ddlab {

std::string to_string(TraceKind k) {
    switch (k) {
        case TraceKind::divdiv_tr1: return "divdiv_tr1";
        case TraceKind::divdiv_tr2: return "divdiv_tr2";
        case TraceKind::symcurl_tr1: return "symcurl_tr1";
        case TraceKind::symcurl_tr1_perp: return "symcurl_tr1_perp";
        case TraceKind::symcurl_tr2: return "symcurl_tr2";
        case TraceKind::edge_nn: return "edge_nn";
    }
    return "?";
}

TraceKind trace_kind_from_string(const std::string& name) {
    for (TraceKind k : {TraceKind::divdiv_tr1, TraceKind::divdiv_tr2, TraceKind::symcurl_tr1,
                        TraceKind::symcurl_tr1_perp, TraceKind::symcurl_tr2, TraceKind::edge_nn})
        if (to_string(k) == name) return k;
    throw InputError("unknown trace kind: " + name);
}

bool is_edge_trace(TraceKind k) { return k == TraceKind::edge_nn; }

BigFloat IdentityResidual::relative() const { return scale.is_zero() ? residual : residual / scale; }

namespace {

bool symmetric(const PolyMatrix& a) { return a.rows() == a.cols() && transpose(a) == a; }
bool traceless(const PolyMatrix& a) { return a.rows() == a.cols() && trace(a).is_zero(); }

FloatVec scaled(FloatVec v, const BigFloat& s) {
    for (BigFloat& x : v) x *= s;
    return v;
}

FloatVec cross(const FloatVec& a, const FloatVec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

BigFloat dot(const FloatVec& a, const FloatVec& b) {
    BigFloat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

FloatVec face_normal(const Tet& t, int f, int sign) {
    return scaled(unit(to_ratvec(t.faces()[static_cast<std::size_t>(f)].normal)), BigFloat(sign));
}

FloatVec outward_normal(const Tet& t, int f) {
    return unit(to_ratvec(t.faces()[static_cast<std::size_t>(f)].outward_normal()));
}

FloatPolyMatrix projector(const FloatVec& n, int arity) {
    std::vector<std::vector<BigFloat>> m(n.size(), std::vector<BigFloat>(n.size()));
    for (std::size_t i = 0; i < n.size(); ++i)
        for (std::size_t j = 0; j < n.size(); ++j) m[i][j] = BigFloat(i == j ? 1 : 0) - n[i] * n[j];
    return FloatPolyMatrix::constant(m, arity);
}

// Tangential divergence of a vector field: div w - n . d_n w.
FloatPoly div_F(const FloatPolyMatrix& w, const FloatVec& n) {
    FloatPoly s = div(w)[0];
    FloatPolyMatrix dn = directional(w, n);
    for (int i = 0; i < w.rows(); ++i) s -= dn[i] * n[static_cast<std::size_t>(i)];
    return s;
}

// Row-wise tangential divergence.
FloatPolyMatrix div_F_rows(const FloatPolyMatrix& a, const FloatVec& n) {
    FloatPolyMatrix r(a.rows(), 1, a.arity());
    for (int i = 0; i < a.rows(); ++i) {
        FloatPolyMatrix row(a.cols(), 1, a.arity());
        for (int j = 0; j < a.cols(); ++j) row[j] = a(i, j);
        r[i] = div_F(row, n);
    }
    return r;
}

// rot_F w = n . curl w, i.e. (n x grad) . w.
FloatPoly rot_F(const FloatPolyMatrix& w, const FloatVec& n) {
    FloatPolyMatrix c = curl(w);
    FloatPoly s(w.arity());
    for (int i = 0; i < 3; ++i) s += c[i] * n[static_cast<std::size_t>(i)];
    return s;
}

FloatPolyMatrix rot_F_rows(const FloatPolyMatrix& a, const FloatVec& n) {
    FloatPolyMatrix r(a.rows(), 1, a.arity());
    for (int i = 0; i < a.rows(); ++i) {
        FloatPolyMatrix row(3, 1, a.arity());
        for (int j = 0; j < 3; ++j) row[j] = a(i, j);
        r[i] = rot_F(row, n);
    }
    return r;
}

FloatPoly dot_poly(const FloatPolyMatrix& a, const FloatVec& b) { return dot_right(transpose(a), b)[0]; }

std::vector<int> edges_of_face(const Tet& t, int f) {
    std::vector<int> out;
    for (int e = 0; e < 6; ++e) {
        const auto& v = t.edges()[static_cast<std::size_t>(e)].v;
        if (v[0] != f && v[1] != f) out.push_back(e);
    }
    return out;
}

std::array<FloatVec, 3> edge_unit_frame(const Tet& t, int e) {
    EdgeFrame fr = edge_frame(t.edges()[static_cast<std::size_t>(e)].tangent);
    return {unit(to_ratvec(fr.t.dir)), unit(to_ratvec(fr.n1.dir)), unit(to_ratvec(fr.n2.dir))};
}

void check_face(int f) {
    if (f < 0 || f > 3) throw InputError("face index out of range: " + std::to_string(f));
}

void check_edge(int e) {
    if (e < 0 || e > 5) throw InputError("edge index out of range: " + std::to_string(e));
}

// Ambient (unrestricted) face traces.
FloatPoly divdiv_tr1(const FloatPolyMatrix& tau, const FloatVec& n) { return bilinear(n, tau, n); }

FloatPoly divdiv_tr2(const FloatPolyMatrix& tau, const FloatVec& n) {
    FloatPoly s = div_F(dot_right(tau, n), n) * BigFloat(2);
    return s + directional(divdiv_tr1(tau, n), n);
}

FloatPolyMatrix symcurl_tr1(const FloatPolyMatrix& tau, const FloatVec& n) {
    FloatPolyMatrix p = projector(n, tau.arity());
    return matmul(matmul(p, sym(cross_right(tau, n))), p);
}

FloatPolyMatrix symcurl_tr1_perp(const FloatPolyMatrix& tau, const FloatVec& n) {
    return cross_right(cross_left(n, sym(cross_right(tau, n))), n);
}

FloatPolyMatrix symcurl_tr2(const FloatPolyMatrix& tau, const FloatVec& n) {
    return cross_right(dot_left(n, tau), n);
}

FloatPolyMatrix scalar(const FloatPoly& p) {
    FloatPolyMatrix r(1, 1, p.arity());
    r[0] = p;
    return r;
}

struct Accumulator {
    BigFloat scale{0};
    void see(const BigFloat& x) { scale = max(scale, abs(x)); }
};

IdentityResidual pointwise(const std::string& name, const std::string& entity, const FloatPoly& lhs,
                           const FloatPoly& rhs, const AffineChart& chart) {
    FloatPoly l = restrict(lhs, chart), r = restrict(rhs, chart);
    IdentityResidual out;
    out.name = name;
    out.entity = entity;
    out.lhs = l.max_abs();
    out.rhs = r.max_abs();
    out.residual = (l - r).max_abs();
    out.scale = max(out.lhs, out.rhs);
    return out;
}

}  // namespace

TraceValue trace(const PolyMatrix& tau, const Tet& t, int entity, TraceKind kind, int normal_sign) {
    if (tau.rows() != 3 || tau.cols() != 3 || tau.arity() != 3)
        throw InputError("trace: expected a 3 x 3 field in three variables");
    bool divdiv_kind = kind == TraceKind::divdiv_tr1 || kind == TraceKind::divdiv_tr2 || kind == TraceKind::edge_nn;
    if (divdiv_kind && !symmetric(tau)) throw InputError("trace " + to_string(kind) + ": field is not symmetric");
    if (!divdiv_kind && !traceless(tau)) throw InputError("trace " + to_string(kind) + ": field is not traceless");
    if (normal_sign != 1 && normal_sign != -1) throw InputError("trace: normal_sign must be +1 or -1");

    FloatPolyMatrix f = FloatPolyMatrix::from(tau);
    TraceValue out;
    out.kind = kind;
    out.entity = entity;
    if (kind == TraceKind::edge_nn) {
        check_edge(entity);
        auto fr = edge_unit_frame(t, entity);
        FloatPolyMatrix m(2, 2, 3);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m(i, j) = bilinear(fr[static_cast<std::size_t>(i + 1)], f, fr[static_cast<std::size_t>(j + 1)]);
        out.value = restrict(m, t.edge_chart(entity));
        return out;
    }
    check_face(entity);
    FloatVec n = face_normal(t, entity, normal_sign);
    FloatPolyMatrix v;
    switch (kind) {
        case TraceKind::divdiv_tr1: v = scalar(divdiv_tr1(f, n)); break;
        case TraceKind::divdiv_tr2: v = scalar(divdiv_tr2(f, n)); break;
        case TraceKind::symcurl_tr1: v = symcurl_tr1(f, n); break;
        case TraceKind::symcurl_tr1_perp: v = symcurl_tr1_perp(f, n); break;
        case TraceKind::symcurl_tr2: v = symcurl_tr2(f, n); break;
        case TraceKind::edge_nn: break;
    }
    out.value = restrict(v, t.face_chart(entity));
    return out;
}

IdentityResidual green_residual_3d(const PolyMatrix& tau, const Poly& v, const Tet& t) {
    if (tau.rows() != 3 || tau.cols() != 3 || tau.arity() != 3 || v.arity() != 3)
        throw InputError("green_residual_3d: expected a 3 x 3 field and a scalar in three variables");
    auto verts = t.vertex_list();
    PolyMatrix vm = PolyMatrix::scalar(v);
    Rat lhs = integrate_simplex(divdiv(tau)[0] * v, verts);
    Rat vol = integrate_simplex(frobenius(tau, hess(vm)), verts);

    FloatPolyMatrix f = FloatPolyMatrix::from(tau);
    FloatPoly fv = FloatPoly::from(v);
    Accumulator acc;
    acc.see(BigFloat(lhs));
    acc.see(BigFloat(vol));
    BigFloat rhs(vol);
    for (int F = 0; F < 4; ++F) {
        FloatVec n = outward_normal(t, F);
        AffineChart fc = t.face_chart(F);
        BigFloat a = integrate(divdiv_tr1(f, n) * directional(fv, n), fc);
        BigFloat b = integrate(divdiv_tr2(f, n) * fv, fc);
        acc.see(a);
        acc.see(b);
        rhs -= a - b;
        FloatPolyMatrix tn = dot_right(f, n);
        for (int e : edges_of_face(t, F)) {
            FloatVec nfe = unit(to_ratvec(t.face_edge_normal(F, e)));
            BigFloat c = integrate(dot_poly(tn, nfe) * fv, t.edge_chart(e));
            acc.see(c);
            rhs -= c;
        }
    }
    IdentityResidual out;
    out.name = "green_divdiv_3d";
    out.entity = "cell";
    out.lhs = BigFloat(lhs);
    out.rhs = rhs;
    out.residual = abs(out.lhs - rhs);
    out.scale = acc.scale;
    return out;
}

IdentityResidual green_residual_2d(const PolyMatrix& tau, const Poly& v, const Triangle& t) {
    if (tau.rows() != 2 || tau.cols() != 2 || tau.arity() != 2 || v.arity() != 2)
        throw InputError("green_residual_2d: expected a 2 x 2 field and a scalar in two variables");
    auto verts = t.vertex_list();
    PolyMatrix vm = PolyMatrix::scalar(v);
    Rat lhs = integrate_simplex(divdiv(tau)[0] * v, verts);
    Rat vol = integrate_simplex(frobenius(tau, hess(vm)), verts);

    FloatPolyMatrix f = FloatPolyMatrix::from(tau);
    FloatPolyMatrix dvt = div(f);
    FloatPoly fv = FloatPoly::from(v);
    Accumulator acc;
    acc.see(BigFloat(lhs));
    acc.see(BigFloat(vol));
    BigFloat rhs(vol);
    for (int e = 0; e < 3; ++e) {
        AffineChart ec = t.edge_chart(e);
        FloatVec n = unit(t.edges()[static_cast<std::size_t>(e)].outward);
        FloatVec tg = unit(ec.directions[0]);
        FloatPoly tn = bilinear(tg, f, n);
        BigFloat a = integrate(bilinear(n, f, n) * directional(fv, n), ec);
        BigFloat b = integrate((directional(tn, tg) + dot_poly(dvt, n)) * fv, ec);
        RatVec start = ec.origin, end = ec.point(RatVec{Rat(1)});
        BigFloat c = tn.evaluate(end) * fv.evaluate(end) - tn.evaluate(start) * fv.evaluate(start);
        acc.see(a);
        acc.see(b);
        acc.see(c);
        rhs += b - a - c;
    }
    IdentityResidual out;
    out.name = "green_divdiv_2d";
    out.entity = "cell";
    out.lhs = BigFloat(lhs);
    out.rhs = rhs;
    out.residual = abs(out.lhs - rhs);
    out.scale = acc.scale;
    return out;
}

IdentityResidual green_residual_symcurl(const PolyMatrix& tau, const PolyMatrix& sigma, const Tet& t) {
    if (tau.rows() != 3 || tau.cols() != 3 || sigma.rows() != 3 || sigma.cols() != 3 || tau.arity() != 3 ||
        sigma.arity() != 3)
        throw InputError("green_residual_symcurl: expected 3 x 3 fields in three variables");
    if (!symmetric(sigma)) throw InputError("green_residual_symcurl: sigma is not symmetric");
    auto verts = t.vertex_list();
    Rat lhs = integrate_simplex(frobenius(sym(curl(tau)), sigma), verts);
    Rat vol = integrate_simplex(frobenius(tau, curl(sigma)), verts);

    FloatPolyMatrix f = FloatPolyMatrix::from(tau), s = FloatPolyMatrix::from(sigma);
    Accumulator acc;
    acc.see(BigFloat(lhs));
    acc.see(BigFloat(vol));
    BigFloat rhs(vol);
    for (int F = 0; F < 4; ++F) {
        FloatVec n = outward_normal(t, F);
        AffineChart fc = t.face_chart(F);
        FloatPolyMatrix p = projector(n, 3);
        FloatPolyMatrix psp = matmul(matmul(p, s), p);
        BigFloat a = integrate(frobenius(symcurl_tr1(f, n), psp), fc);
        FloatPolyMatrix w = symcurl_tr2(f, n);
        FloatPolyMatrix sn = matmul(p, dot_right(s, n));
        BigFloat b = integrate(frobenius(w, sn), fc);
        acc.see(a);
        acc.see(b);
        rhs -= a + b;
    }
    IdentityResidual out;
    out.name = "green_symcurl";
    out.entity = "cell";
    out.lhs = BigFloat(lhs);
    out.rhs = rhs;
    out.residual = abs(out.lhs - rhs);
    out.scale = acc.scale;
    return out;
}

std::vector<IdentityResidual> trace_relation_checks(const PolyMatrix& tau, const Tet& t) {
    if (tau.rows() != 3 || tau.cols() != 3 || tau.arity() != 3 || !traceless(tau))
        throw InputError("trace_relation_checks: expected a traceless 3 x 3 field");
    FloatPolyMatrix f = FloatPolyMatrix::from(tau);
    FloatPolyMatrix c = FloatPolyMatrix::from(curl(tau));
    FloatPolyMatrix s = sym(c);
    FloatPolyMatrix divs = div(s);
    std::vector<IdentityResidual> out;
    for (int F = 0; F < 4; ++F) {
        FloatVec n = face_normal(t, F, 1);
        AffineChart fc = t.face_chart(F);
        std::string fname = "face " + std::to_string(F);

        // n^T sigma n = div_F(n . tau x n)
        out.push_back(pointwise("trace1", fname, bilinear(n, s, n), div_F(symcurl_tr2(f, n), n), fc));

        // rot_F(n x sigma n) + n^T div sigma
        FloatPoly lhs = rot_F(cross_left(n, dot_right(s, n)), n) + dot_poly(divs, n);
        FloatPoly rr = rot_F(rot_F_rows(symcurl_tr1_perp(f, n), n), n) * BigFloat(-1);
        FloatPolyMatrix tr1 = symcurl_tr1(f, n);
        FloatPoly dd = div_F(div_F_rows(tr1, n), n);
        out.push_back(pointwise("trace2_rotrot", fname, lhs, rr, fc));
        out.push_back(pointwise("trace2_divdiv", fname, lhs, dd, fc));

        for (int e : edges_of_face(t, F)) {
            auto fr = edge_unit_frame(t, e);
            const FloatVec &tg = fr[0], &n1 = fr[1], &n2 = fr[2];
            FloatVec nfe = cross(tg, n);
            std::string ename = fname + " edge " + std::to_string(e);
            AffineChart ec = t.edge_chart(e);

            BigFloat c1 = dot(n, n1), c2 = dot(n, n2);
            FloatPoly l1 = bilinear(nfe, c, n);
            FloatPoly r1 = (bilinear(n2, s, n2) - bilinear(n1, s, n1)) * (c1 * c2) -
                           bilinear(n1, s, n2) * (BigFloat(2) * c2 * c2) + bilinear(n2, c, n1);
            out.push_back(pointwise("edgedofprop1", ename, l1, r1, ec));

            FloatPoly l2 = directional(bilinear(tg, tr1, nfe), tg) + dot_poly(div_F_rows(tr1, n), nfe);
            FloatPoly r2 = bilinear(nfe, c, n) + directional(bilinear(tg, f, tg), tg);
            out.push_back(pointwise("edgedofprop2", ename, l2, r2, ec));
        }
    }
    return out;
}

std::vector<IdentityResidual> trace_relation_checks_2d(const PolyMatrix& v, const Triangle& t) {
    if (v.rows() != 2 || v.cols() != 1 || v.arity() != 2)
        throw InputError("trace_relation_checks_2d: expected a 2-vector in two variables");
    PolyMatrix tau = sym(curl(v));
    FloatPolyMatrix f = FloatPolyMatrix::from(tau), fv = FloatPolyMatrix::from(v);
    FloatPolyMatrix dt = div(f);
    std::vector<IdentityResidual> out;
    for (int e = 0; e < 3; ++e) {
        AffineChart ec = t.edge_chart(e);
        FloatVec tg = unit(ec.directions[0]);
        FloatVec n{tg[1], -tg[0]};
        FloatPoly lhs = directional(bilinear(tg, f, n), tg) + dot_poly(dt, n);
        FloatPoly rhs = directional(dot_poly(directional(fv, tg), tg), tg);
        out.push_back(pointwise("trace2_2d", "edge " + std::to_string(e), lhs, rhs, ec));
    }
    return out;
}

}  // namespace ddlab
