#include "ddlab/dofs.hpp"

#include <algorithm>
#include <chrono>

#include "ddlab/bubbles.hpp"
#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"

namespace ddlab {

std::string to_string(DofKind k) {
    switch (k) {
        case DofKind::vertex_eval: return "vertex_eval";
        case DofKind::edge_moment: return "edge_moment";
        case DofKind::face_moment: return "face_moment";
        case DofKind::volume_moment: return "volume_moment";
    }
    return "?";
}

const PolyMatrix& FieldCache::curl() {
    if (!curl_) curl_ = ddlab::curl(phi_);
    return *curl_;
}

const PolyMatrix& FieldCache::sym_curl() {
    if (!sym_curl_) sym_curl_ = sym(curl());
    return *sym_curl_;
}

const PolyMatrix& FieldCache::div() {
    if (!div_) div_ = ddlab::div(phi_);
    return *div_;
}

const PolyMatrix& FieldCache::grad() {
    if (!grad_) grad_ = ddlab::grad(phi_);
    return *grad_;
}

namespace {

using Integrand = std::function<std::vector<Poly>(FieldCache&)>;
using PolyVec = std::vector<Poly>;

Poly bilinear(const RatVec& a, const PolyMatrix& m, const RatVec& b) {
    Poly s(m.arity());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Rat c = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
            if (c != 0) s += m(i, j) * c;
        }
    return s;
}

PolyVec matvec(const PolyMatrix& m, const RatVec& b) {
    PolyVec out(static_cast<std::size_t>(m.rows()), Poly(m.arity()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (b[static_cast<std::size_t>(j)] != 0) out[static_cast<std::size_t>(i)] += m(i, j) * b[static_cast<std::size_t>(j)];
    return out;
}

Poly dirderiv(const Poly& p, const RatVec& d) {
    Poly s(p.arity());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) s += p.derivative(static_cast<int>(i)) * d[i];
    return s;
}

PolyVec gradient(const Poly& p) {
    PolyVec g;
    for (int i = 0; i < p.arity(); ++i) g.push_back(p.derivative(i));
    return g;
}

PolyVec cross(const RatVec& a, const PolyVec& b) {
    return {b[2] * a[1] - b[1] * a[2], b[0] * a[2] - b[2] * a[0], b[1] * a[0] - b[0] * a[1]};
}

PolyVec cross(const PolyVec& a, const RatVec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

PolyVec scaled(const RatVec& v, const Poly& q) {
    PolyVec out;
    for (const Rat& c : v) out.push_back(q * c);
    return out;
}

// Entries of the flattened matrix a b^T + b a^T over 2.
PolyVec sym_outer(const PolyVec& a, const PolyVec& b) {
    std::size_t n = a.size();
    PolyVec out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.push_back((a[i] * b[j] + a[j] * b[i]) * Rat(1, 2));
    return out;
}

PolyVec constants(const RatVec& v, int arity) {
    PolyVec out;
    for (const Rat& c : v) out.push_back(Poly::constant(arity, c));
    return out;
}

// x - c as polynomials.
PolyVec position(const RatVec& c) {
    int d = static_cast<int>(c.size());
    PolyVec out;
    for (int i = 0; i < d; ++i) out.push_back(Poly::variable(d, i) - Poly::constant(d, c[static_cast<std::size_t>(i)]));
    return out;
}

RatVec centroid(const std::vector<RatVec>& pts) {
    RatVec c(pts[0].size(), Rat(0));
    for (const RatVec& p : pts)
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
    for (Rat& x : c) x /= static_cast<long>(pts.size());
    return c;
}

// Monomials of the chart parameters, written in ambient variables.
std::vector<Poly> chart_monomials(const AffineChart& chart, int lo, int hi) {
    std::vector<Poly> out;
    if (hi < lo || hi < 0) return out;
    std::vector<Poly> params = chart.parameter_functions();
    for (const MultiIndex& a : monomials_up_to(chart.dim(), hi))
        if (a.degree() >= lo) out.push_back(substitute(Poly::monomial(chart.dim(), a), params));
    return out;
}

// Monomials of (x - origin) / scale.
std::vector<Poly> frame_monomials(const Frame& fr, int lo, int hi) {
    std::vector<Poly> out;
    if (hi < lo || hi < 0) return out;
    int d = static_cast<int>(fr.origin.size());
    std::vector<Poly> local;
    for (int i = 0; i < d; ++i)
        local.push_back((Poly::variable(d, i) - Poly::constant(d, fr.origin[static_cast<std::size_t>(i)])) *
                        Rat(1 / fr.scale));
    for (const MultiIndex& a : monomials_up_to(d, hi))
        if (a.degree() >= lo) out.push_back(substitute(Poly::monomial(d, a), local));
    return out;
}

std::vector<int> sorted_gids(std::vector<int> g) {
    std::sort(g.begin(), g.end());
    return g;
}

Integrand entries_of(std::vector<std::pair<int, int>> idx) {
    return [idx](FieldCache& f) {
        PolyVec out;
        for (auto [i, j] : idx) out.push_back(f.value()(i, j));
        return out;
    };
}

Integrand all_entries() {
    return [](FieldCache& f) { return f.value().entries(); };
}

const std::vector<std::pair<int, int>> kSym3 = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
const std::vector<std::pair<int, int>> kSym2 = {{0, 0}, {1, 1}, {0, 1}};
const std::vector<std::pair<int, int>> kTraceless3 = {{0, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

class Builder {
public:
    explicit Builder(std::string element) { out_.element = std::move(element); }

    void vertex(const std::string& tag, const std::string& stencil, int v, int gid, const RatVec& point,
                std::size_t count, Integrand g) {
        DofGroup d;
        d.tag = tag;
        d.stencil = stencil;
        d.kind = DofKind::vertex_eval;
        d.entity = v;
        d.entity_gids = {gid};
        d.integrand = std::move(g);
        d.count = count;
        d.point = point;
        add(std::move(d));
    }

    void moment(const std::string& tag, const std::string& stencil, DofKind kind, int entity, std::vector<int> gids,
                const AffineChart& chart, const Rat& scale_sq, Integrand g, std::vector<PolyVec> weights,
                int weight_degree, bool interior = false) {
        if (weights.empty()) return;
        DofGroup d;
        d.tag = tag;
        d.stencil = stencil;
        d.kind = kind;
        d.entity = entity;
        d.entity_gids = sorted_gids(std::move(gids));
        d.interior = interior;
        d.scale_sq = scale_sq;
        d.integrand = std::move(g);
        d.count = weights.size();
        d.chart = chart;
        d.weights = std::move(weights);
        d.weight_degree = weight_degree;
        add(std::move(d));
    }

    ElementDofs take() { return std::move(out_); }

private:
    void add(DofGroup d) {
        std::size_t gi = out_.groups.size();
        for (std::size_t i = 0; i < d.count; ++i) {
            DofFunctional f;
            f.kind = d.kind;
            f.entity = d.entity;
            f.entity_gids = d.entity_gids;
            f.group = gi;
            f.index = i;
            f.tag = d.tag;
            f.stencil = d.stencil;
            f.interior = d.interior;
            out_.functionals.push_back(std::move(f));
        }
        out_.groups.push_back(std::move(d));
    }

    ElementDofs out_;
};

struct TetGeometry {
    const Tet& t;
    std::vector<int> edge_gids(int e) const {
        const TetEdge& ed = t.edges()[static_cast<std::size_t>(e)];
        return {t.gid(ed.v[0]), t.gid(ed.v[1])};
    }
    std::vector<int> face_gids(int f) const {
        const TetFace& fc = t.faces()[static_cast<std::size_t>(f)];
        return {t.gid(fc.v[0]), t.gid(fc.v[1]), t.gid(fc.v[2])};
    }
    std::vector<int> cell_gids() const { return {t.gid(0), t.gid(1), t.gid(2), t.gid(3)}; }
    AffineChart cell_chart() const {
        RatVec o = to_ratvec(t.vertex(0));
        return AffineChart{o, {to_ratvec(t.vertex(1) - t.vertex(0)), to_ratvec(t.vertex(2) - t.vertex(0)),
                               to_ratvec(t.vertex(3) - t.vertex(0))}};
    }
    RatVec face_center(int f) const { return centroid(t.face_vertices(f)); }
};

std::vector<PolyVec> times(const std::vector<Poly>& qs, const std::vector<PolyVec>& shapes) {
    std::vector<PolyVec> out;
    for (const Poly& q : qs)
        for (const PolyVec& s : shapes) {
            PolyVec w;
            for (const Poly& p : s) w.push_back(p * q);
            out.push_back(std::move(w));
        }
    return out;
}

std::vector<PolyVec> scalar_weights(const std::vector<Poly>& qs) {
    std::vector<PolyVec> out;
    for (const Poly& q : qs) out.push_back({q});
    return out;
}

std::vector<PolyVec> matrix_weights(const std::vector<PolyMatrix>& ms) {
    std::vector<PolyVec> out;
    for (const PolyMatrix& m : ms) out.push_back(m.entries());
    return out;
}

// Edge functionals n_i^T sigma n_j for (1,1), (1,2), (2,2); sigma from `field`.
void edge_nn(Builder& b, const TetGeometry& g, int e, int max_deg, const std::string& tag, const std::string& stencil,
             std::function<const PolyMatrix&(FieldCache&)> field) {
    const Tet& t = g.t;
    const TetEdge& ed = t.edges()[static_cast<std::size_t>(e)];
    EdgeFrame fr = edge_frame(ed.tangent);
    AffineChart chart = t.edge_chart(e);
    std::vector<Poly> qs = chart_monomials(chart, 0, max_deg);
    const Direction* n[2] = {&fr.n1, &fr.n2};
    for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}}) {
        RatVec a = to_ratvec(n[i]->dir), c = to_ratvec(n[j]->dir);
        Rat s = fr.t.norm_sq / (n[i]->norm_sq * n[j]->norm_sq);
        b.moment(tag, stencil, DofKind::edge_moment, e, g.edge_gids(e), chart, s,
                 [a, c, field](FieldCache& f) { return PolyVec{bilinear(a, field(f), c)}; }, scalar_weights(qs),
                 max_deg);
    }
}

ElementDofs divdiv3d_dofs(const Tet& t, int l, int k, bool bubble_variant) {
    Builder b(bubble_variant ? "divdiv3d_bubbleDofs" : "divdiv3d");
    TetGeometry g{t};
    for (int v = 0; v < 4; ++v)
        b.vertex("tau(vertex)", "none", v, t.gid(v), to_ratvec(t.vertex(v)), 6, entries_of(kSym3));
    for (int e = 0; e < 6; ++e)
        edge_nn(b, g, e, l - 2, "edge n_i^T tau n_j", "none", [](FieldCache& f) -> const PolyMatrix& { return f.value(); });
    for (int f = 0; f < 4; ++f) {
        RatVec N = to_ratvec(t.faces()[static_cast<std::size_t>(f)].normal);
        Rat nn = norm2(t.faces()[static_cast<std::size_t>(f)].normal);
        AffineChart chart = t.face_chart(f);
        b.moment("face n^T tau n", "none", DofKind::face_moment, f, g.face_gids(f), chart, 1 / nn,
                 [N](FieldCache& fc) { return PolyVec{bilinear(N, fc.value(), N)}; },
                 scalar_weights(chart_monomials(chart, 0, l - 3)), l - 3);
        b.moment("face tr2(tau)", "tr2", DofKind::face_moment, f, g.face_gids(f), chart, 1 / (nn * nn),
                 [N, nn](FieldCache& fc) {
                     PolyVec tn = matvec(fc.value(), N);
                     Poly dv(3);
                     for (int i = 0; i < 3; ++i) dv += tn[static_cast<std::size_t>(i)].derivative(i);
                     return PolyVec{dv * (2 * nn) - dirderiv(bilinear(N, fc.value(), N), N)};
                 },
                 scalar_weights(chart_monomials(chart, 0, l - 1)), l - 1);
    }
    AffineChart cell = g.cell_chart();
    Rat vol_sq = cell.gram_determinant();
    Frame fr = t.local_frame();
    {
        std::vector<PolyMatrix> hs;
        for (const Poly& q : frame_monomials(fr, 2, k - 2)) hs.push_back(hess(PolyMatrix::scalar(q)));
        b.moment("cell hess moment", "none", DofKind::volume_moment, 0, g.cell_gids(), cell, vol_sq, all_entries(),
                 matrix_weights(hs), k - 2, true);
    }
    if (bubble_variant) {
        BubbleBasis bb = bubble_basis(l, t);
        std::vector<PolyMatrix> sc;
        for (const PolyMatrix& m : bb.all()) sc.push_back(sym(curl(m)));
        SpaceBasis w = independent_subset("sym_curl_B", matrix_class(TensorKind::S, 3), 3, sc, Frame::standard(3));
        b.moment("cell sym curl bubble moment", "none", DofKind::volume_moment, 0, g.cell_gids(), cell, vol_sq,
                 all_entries(), matrix_weights(w.elements), l, true);
        return b.take();
    }
    {
        SpaceParams p;
        p.k = l - 1;
        p.frame = fr;
        SpaceBasis w = space_basis("sym_T_cross_x", p);
        b.moment("cell sym(T x x) moment", "none", DofKind::volume_moment, 0, g.cell_gids(), cell, vol_sq,
                 all_entries(), matrix_weights(w.elements), l - 1, true);
    }
    int f1 = t.lowest_vertex();
    {
        RatVec N = to_ratvec(t.faces()[static_cast<std::size_t>(f1)].normal);
        Rat nn = norm2(t.faces()[static_cast<std::size_t>(f1)].normal);
        AffineChart chart = t.face_chart(f1);
        PolyVec nx = cross(N, position(g.face_center(f1)));
        std::vector<PolyVec> ws = times(chart_monomials(chart, 0, l - 2), {nx});
        b.moment("face tau n . (n x x) q on F1", "none", DofKind::face_moment, f1, g.face_gids(f1), chart, 1 / nn,
                 [N](FieldCache& fc) { return matvec(fc.value(), N); }, std::move(ws), l - 1, true);
    }
    return b.take();
}

// tr1_perp * |N|^3 = N x sym(tau x N) x N, flattened.
PolyVec tr1_perp_scaled(const PolyMatrix& tau, const RatVec& N) {
    PolyMatrix n = PolyMatrix::vector(constants(N, 3));
    return cross_right(cross_left(n, sym(cross_right(tau, n))), n).entries();
}

// tr2 * |N|^2 = (N^T tau) x N.
PolyVec tr2_scaled(const PolyMatrix& tau, const RatVec& N) {
    PolyVec row(3, Poly(3));
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            if (N[static_cast<std::size_t>(i)] != 0) row[static_cast<std::size_t>(j)] += tau(i, j) * N[static_cast<std::size_t>(i)];
    return cross(row, N);
}

void symcurl_vertices(Builder& b, const Tet& t, bool with_symcurl) {
    for (int v = 0; v < 4; ++v) {
        b.vertex("tau(vertex)", "none", v, t.gid(v), to_ratvec(t.vertex(v)), 8, entries_of(kTraceless3));
        if (with_symcurl)
            b.vertex("sym curl tau(vertex)", "sym_curl", v, t.gid(v), to_ratvec(t.vertex(v)), 6, [](FieldCache& f) {
                PolyVec out;
                for (auto [i, j] : kSym3) out.push_back(f.sym_curl()(i, j));
                return out;
            });
    }
}

void bubble_moments(Builder& b, const TetGeometry& g, int l) {
    AffineChart cell = g.cell_chart();
    BubbleBasis bb = bubble_basis(l, g.t);
    b.moment("cell bubble moment", "none", DofKind::volume_moment, 0, g.cell_gids(), cell, cell.gram_determinant(),
             all_entries(), matrix_weights(bb.all()), l + 1, true);
}

ElementDofs symcurl3d_dofs(const Tet& t, int l) {
    Builder b("symcurl3d");
    TetGeometry g{t};
    symcurl_vertices(b, t, true);
    for (int e = 0; e < 6; ++e) {
        edge_nn(b, g, e, l - 2, "edge n_i^T sym curl tau n_j", "sym_curl",
                [](FieldCache& f) -> const PolyMatrix& { return f.sym_curl(); });
        const TetEdge& ed = t.edges()[static_cast<std::size_t>(e)];
        EdgeFrame fr = edge_frame(ed.tangent);
        AffineChart chart = t.edge_chart(e);
        RatVec T = to_ratvec(fr.t.dir);
        for (const Direction* n : {&fr.n1, &fr.n2}) {
            RatVec N = to_ratvec(n->dir);
            b.moment("edge n_i^T tau t", "none", DofKind::edge_moment, e, g.edge_gids(e), chart, 1 / n->norm_sq,
                     [N, T](FieldCache& f) { return PolyVec{bilinear(N, f.value(), T)}; },
                     scalar_weights(chart_monomials(chart, 0, l - 1)), l - 1);
        }
        RatVec N1 = to_ratvec(fr.n1.dir), N2 = to_ratvec(fr.n2.dir);
        Rat c = fr.t.norm_sq / fr.n1.norm_sq;
        b.moment("edge n2^T curl tau n1 + d_t(t^T tau t)", "curl", DofKind::edge_moment, e, g.edge_gids(e), chart,
                 1 / (fr.t.norm_sq * fr.t.norm_sq),
                 [N1, N2, T, c](FieldCache& f) {
                     return PolyVec{bilinear(N2, f.curl(), N1) * c + dirderiv(bilinear(T, f.value(), T), T)};
                 },
                 scalar_weights(chart_monomials(chart, 0, l)), l);
    }
    for (int f = 0; f < 4; ++f) {
        RatVec N = to_ratvec(t.faces()[static_cast<std::size_t>(f)].normal);
        Rat nn = norm2(t.faces()[static_cast<std::size_t>(f)].normal);
        AffineChart chart = t.face_chart(f);
        PolyVec xf = position(g.face_center(f));
        auto tr1 = [N](FieldCache& fc) { return tr1_perp_scaled(fc.value(), N); };
        auto tr2 = [N](FieldCache& fc) { return tr2_scaled(fc.value(), N); };

        std::vector<PolyVec> hw;
        for (const Poly& q : chart_monomials(chart, 2, l - 1)) {
            PolyVec v = cross(N, gradient(q));
            PolyVec w(9, Poly(3));
            for (int j = 0; j < 3; ++j) {
                PolyVec u = cross(N, gradient(v[static_cast<std::size_t>(j)]));
                for (int i = 0; i < 3; ++i) w[static_cast<std::size_t>(3 * i + j)] = u[static_cast<std::size_t>(i)];
            }
            hw.push_back(std::move(w));
        }
        b.moment("face tr1_perp vs rotated hessians", "none", DofKind::face_moment, f, g.face_gids(f), chart,
                 1 / (nn * nn * nn * nn), tr1, std::move(hw), l - 1);

        std::vector<PolyVec> sw;
        for (const Poly& q : chart_monomials(chart, 0, l - 1))
            for (const RatVec& d : chart.directions) sw.push_back(sym_outer(xf, scaled(d, q)));
        b.moment("face tr1_perp vs sym(x p)", "none", DofKind::face_moment, f, g.face_gids(f), chart, 1 / (nn * nn),
                 tr1, std::move(sw), l);

        std::vector<PolyVec> gw;
        for (const Poly& q : chart_monomials(chart, 1, l - 3)) {
            PolyVec gq = gradient(q);
            Poly nd = (gq[0] * N[0] + gq[1] * N[1] + gq[2] * N[2]) * Rat(1 / nn);
            gw.push_back({gq[0] - nd * N[0], gq[1] - nd * N[1], gq[2] - nd * N[2]});
        }
        b.moment("face tr2 vs grad_F q", "none", DofKind::face_moment, f, g.face_gids(f), chart, 1 / nn, tr2,
                 std::move(gw), l - 4);

        PolyVec xp = cross(N, xf);
        b.moment("face tr2 vs x^perp q", "none", DofKind::face_moment, f, g.face_gids(f), chart, 1 / (nn * nn), tr2,
                 times(chart_monomials(chart, 0, l - 1), {xp}), l);
    }
    bubble_moments(b, g, l);
    return b.take();
}

ElementDofs symcurl3d_lagrange_dofs(const Tet& t, int l) {
    Builder b("symcurl3d_lagrange");
    TetGeometry g{t};
    symcurl_vertices(b, t, false);
    std::vector<PolyVec> tb;
    for (const ExactMatrix& m : class_basis(matrix_class(TensorKind::T, 3)))
        tb.push_back(PolyMatrix::constant(m, 3).entries());
    for (int e = 0; e < 6; ++e) {
        AffineChart chart = t.edge_chart(e);
        b.moment("edge tau moment", "none", DofKind::edge_moment, e, g.edge_gids(e), chart, chart.gram_determinant(),
                 all_entries(), times(chart_monomials(chart, 0, l - 1), tb), l - 1);
    }
    for (int f = 0; f < 4; ++f) {
        RatVec N = to_ratvec(t.faces()[static_cast<std::size_t>(f)].normal);
        Rat nn = norm2(t.faces()[static_cast<std::size_t>(f)].normal);
        AffineChart chart = t.face_chart(f);
        const RatVec& d0 = chart.directions[0];
        const RatVec& d1 = chart.directions[1];
        PolyVec c0 = constants(d0, 3), c1 = constants(d1, 3);
        std::vector<PolyVec> sb = {sym_outer(c0, c0), sym_outer(c1, c1), sym_outer(c0, c1)};
        std::vector<Poly> qs = chart_monomials(chart, 0, l - 2);
        b.moment("face tr1_perp moment", "none", DofKind::face_moment, f, g.face_gids(f), chart, 1 / (nn * nn),
                 [N](FieldCache& fc) { return tr1_perp_scaled(fc.value(), N); }, times(qs, sb), l - 2);
        b.moment("face tr2 moment", "none", DofKind::face_moment, f, g.face_gids(f), chart, 1 / nn,
                 [N](FieldCache& fc) { return tr2_scaled(fc.value(), N); }, times(qs, {c0, c1}), l - 2);
    }
    bubble_moments(b, g, l);
    return b.take();
}

ElementDofs hermite3d_dofs(const Tet& t, int l) {
    Builder b("hermite3d");
    TetGeometry g{t};
    for (int v = 0; v < 4; ++v) {
        b.vertex("v(vertex)", "none", v, t.gid(v), to_ratvec(t.vertex(v)), 3, all_entries());
        b.vertex("grad v(vertex)", "grad", v, t.gid(v), to_ratvec(t.vertex(v)), 9,
                 [](FieldCache& f) { return f.grad().entries(); });
    }
    std::vector<PolyVec> units = {constants({1, 0, 0}, 3), constants({0, 1, 0}, 3), constants({0, 0, 1}, 3)};
    for (int e = 0; e < 6; ++e) {
        AffineChart chart = t.edge_chart(e);
        b.moment("edge v moment", "none", DofKind::edge_moment, e, g.edge_gids(e), chart, chart.gram_determinant(),
                 all_entries(), times(chart_monomials(chart, 0, l - 2), units), l - 2);
    }
    for (int f = 0; f < 4; ++f) {
        AffineChart chart = t.face_chart(f);
        b.moment("face v moment", "none", DofKind::face_moment, f, g.face_gids(f), chart, chart.gram_determinant(),
                 all_entries(), times(chart_monomials(chart, 0, l - 1), units), l - 1);
    }
    AffineChart cell = g.cell_chart();
    b.moment("cell v moment", "none", DofKind::volume_moment, 0, g.cell_gids(), cell, cell.gram_determinant(),
             all_entries(), times(frame_monomials(t.local_frame(), 0, l - 2), units), l - 2, true);
    return b.take();
}

ElementDofs divdiv2d_dofs(const Triangle& tri, int l, int k) {
    Builder b("divdiv2d");
    for (int v = 0; v < 3; ++v) b.vertex("tau(vertex)", "none", v, tri.gid(v), tri.vertex(v), 3, entries_of(kSym2));
    for (int e = 0; e < 3; ++e) {
        const TriEdge& ed = tri.edges()[static_cast<std::size_t>(e)];
        RatVec N = ed.outward;
        RatVec T = {-N[1], N[0]};
        Rat tt = T[0] * T[0] + T[1] * T[1];
        AffineChart chart = tri.edge_chart(e);
        std::vector<int> gids = {tri.gid(ed.v[0]), tri.gid(ed.v[1])};
        b.moment("edge n^T tau n", "none", DofKind::edge_moment, e, gids, chart, chart.gram_determinant() / (tt * tt),
                 [N](FieldCache& f) { return PolyVec{bilinear(N, f.value(), N)}; },
                 scalar_weights(chart_monomials(chart, 0, l - 2)), l - 2);
        b.moment("edge d_t(t^T tau n) + n^T div tau", "d_n", DofKind::edge_moment, e, gids, chart,
                 chart.gram_determinant() / (tt * tt * tt),
                 [N, T, tt](FieldCache& f) {
                     const PolyMatrix& dv = f.div();
                     Poly nd = dv[0] * N[0] + dv[1] * N[1];
                     return PolyVec{dirderiv(bilinear(T, f.value(), N), T) + nd * tt};
                 },
                 scalar_weights(chart_monomials(chart, 0, l - 1)), l - 1);
    }
    AffineChart cell{tri.vertex(0), {}};
    for (int i = 1; i < 3; ++i) {
        RatVec d(2);
        for (int j = 0; j < 2; ++j) d[static_cast<std::size_t>(j)] = tri.vertex(i)[static_cast<std::size_t>(j)] - tri.vertex(0)[static_cast<std::size_t>(j)];
        cell.directions.push_back(d);
    }
    std::vector<int> gids = {tri.gid(0), tri.gid(1), tri.gid(2)};
    Frame fr = tri.local_frame();
    std::vector<PolyMatrix> hs;
    for (const Poly& q : frame_monomials(fr, 2, k - 2)) hs.push_back(hess(PolyMatrix::scalar(q)));
    b.moment("cell hess moment", "none", DofKind::volume_moment, 0, gids, cell, cell.gram_determinant(),
             all_entries(), matrix_weights(hs), k - 2, true);
    PolyVec x = position(tri.barycenter());
    PolyVec xp = {x[1], -x[0]};
    std::vector<PolyVec> sw;
    for (const Poly& q : frame_monomials(fr, 0, l - 2))
        for (int a = 0; a < 2; ++a) {
            PolyVec p(2, Poly(2));
            p[static_cast<std::size_t>(a)] = q;
            sw.push_back(sym_outer(xp, p));
        }
    b.moment("cell sym(x^perp p) moment", "none", DofKind::volume_moment, 0, gids, cell, cell.gram_determinant(),
             all_entries(), std::move(sw), l - 1, true);
    return b.take();
}

const Tet& need_tet(const Cell& c, const std::string& name) {
    if (const Tet* t = std::get_if<Tet>(&c)) return *t;
    throw InputError(name + " needs a tetrahedron");
}

const Triangle& need_triangle(const Cell& c, const std::string& name) {
    if (const Triangle* t = std::get_if<Triangle>(&c)) return *t;
    throw InputError(name + " needs a triangle");
}

Frame cell_frame(const Cell& c) {
    if (const Tet* t = std::get_if<Tet>(&c)) return t->local_frame();
    return std::get<Triangle>(c).local_frame();
}

}  // namespace

std::vector<std::string> element_names() {
    return {"divdiv3d", "divdiv3d_bubbleDofs", "symcurl3d", "symcurl3d_lagrange", "hermite3d", "divdiv2d"};
}

ElementDef make_element(const std::string& name, int l, int k) {
    auto names = element_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw InputError("unknown element: " + name);
    if (name == "divdiv3d" || name == "divdiv3d_bubbleDofs" || name == "divdiv2d") {
        if (k < 3 || l < std::max(k - 1, 3))
            throw InputError(name + " needs k >= 3 and l >= max(k-1, 3), got l=" + std::to_string(l) +
                             " k=" + std::to_string(k));
    } else if (name == "symcurl3d" || name == "symcurl3d_lagrange") {
        if (l < std::max(k - 1, 3))
            throw InputError(name + " needs l >= max(k-1, 3), got l=" + std::to_string(l) + " k=" + std::to_string(k));
    } else if (l < 3) {
        throw InputError(name + " needs l >= 3, got l=" + std::to_string(l));
    }
    return ElementDef{name, l, k};
}

std::size_t expected_dimension(const ElementDef& e) {
    long l = e.l, k = e.k;
    if (e.name == "divdiv3d" || e.name == "divdiv3d_bubbleDofs")
        return static_cast<std::size_t>(8 * (l + 4) * (l + 3) * (l + 2) / 6 - (l + 5) * (l + 4) * (l + 3) / 2 + 4 +
                                        (k + 1) * k * (k - 1) / 6);
    if (e.name == "symcurl3d" || e.name == "symcurl3d_lagrange") return static_cast<std::size_t>(4 * (l + 4) * (l + 3) * (l + 2) / 3);
    if (e.name == "hermite3d") return static_cast<std::size_t>((l + 5) * (l + 4) * (l + 3) / 2);
    return static_cast<std::size_t>(l * l + 5 * l + 3 + k * (k - 1) / 2);
}

SpaceBasis ElementDef::shape(const Cell& cell) const {
    SpaceParams p;
    p.k = k;
    p.l = l;
    p.frame = cell_frame(cell);
    if (name == "divdiv3d" || name == "divdiv3d_bubbleDofs") {
        need_tet(cell, name);
        return space_basis("Sigma", p);
    }
    if (name == "divdiv2d") {
        need_triangle(cell, name);
        return space_basis("Sigma2", p);
    }
    need_tet(cell, name);
    if (name == "hermite3d") return polynomial_space(vector_class(3), 3, l + 2, p.frame);
    return polynomial_space(matrix_class(TensorKind::T, 3), 3, l + 1, p.frame);
}

ElementDofs ElementDef::dofs(const Cell& cell) const { return dof_set(*this, cell); }

ElementDofs dof_set(const ElementDef& e, const Cell& cell) {
    ElementDef v = make_element(e.name, e.l, e.k);
    if (v.name == "divdiv3d") return divdiv3d_dofs(need_tet(cell, v.name), v.l, v.k, false);
    if (v.name == "divdiv3d_bubbleDofs") return divdiv3d_dofs(need_tet(cell, v.name), v.l, v.k, true);
    if (v.name == "symcurl3d") return symcurl3d_dofs(need_tet(cell, v.name), v.l);
    if (v.name == "symcurl3d_lagrange") return symcurl3d_lagrange_dofs(need_tet(cell, v.name), v.l);
    if (v.name == "hermite3d") return hermite3d_dofs(need_tet(cell, v.name), v.l);
    return divdiv2d_dofs(need_triangle(cell, v.name), v.l, v.k);
}

GroupEvaluator::GroupEvaluator(const DofGroup& g) : g_(g) {
    if (g.kind != DofKind::vertex_eval) {
        restrictor_.emplace(g.chart);
        dual_.assign(g.weights.size(), {});
        for (std::size_t d = 0; d < g.weights.size(); ++d) dual_[d].resize(g.weights[d].size());
    }
}

const Rat& GroupEvaluator::moment(const MultiIndex& a) {
    auto it = moments_.find(a);
    if (it != moments_.end()) return it->second;
    return moments_.emplace(a, integrate_reference(restrictor_->monomial(a))).first->second;
}

const Rat& GroupEvaluator::dual(std::size_t d, std::size_t c, const MultiIndex& a) {
    auto& cache = dual_[d][c];
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    Rat s = 0;
    for (const auto& [b, w] : g_.weights[d][c].terms()) s += w * moment(a + b);
    return cache.emplace(a, s).first->second;
}

RatVec GroupEvaluator::rational_values(FieldCache& f) {
    std::vector<Poly> G = g_.integrand(f);
    RatVec out(g_.count, Rat(0));
    if (g_.kind == DofKind::vertex_eval) {
        if (G.size() < g_.count) throw InternalError("vertex integrand has too few components");
        for (std::size_t c = 0; c < g_.count; ++c) out[c] = G[c].evaluate(g_.point);
        return out;
    }
    for (std::size_t d = 0; d < g_.count; ++d) {
        if (g_.weights[d].size() != G.size()) throw InternalError("weight/integrand size mismatch in " + g_.tag);
        Rat s = 0;
        for (std::size_t c = 0; c < G.size(); ++c) {
            if (g_.weights[d][c].is_zero()) continue;
            for (const auto& [a, coef] : G[c].terms()) s += coef * dual(d, c, a);
        }
        out[d] = s;
    }
    return out;
}

namespace {

void check_function(const ElementDofs& dofs, const PolyMatrix& phi) {
    static const std::map<std::string, std::pair<int, int>> shape = {
        {"divdiv3d", {3, 3}}, {"divdiv3d_bubbleDofs", {3, 3}}, {"symcurl3d", {3, 3}},
        {"symcurl3d_lagrange", {3, 3}}, {"hermite3d", {3, 1}}, {"divdiv2d", {2, 2}}};
    auto it = shape.find(dofs.element);
    if (it == shape.end()) return;
    int d = dofs.element == "divdiv2d" ? 2 : 3;
    if (phi.rows() != it->second.first || phi.cols() != it->second.second || phi.arity() != d)
        throw InputError("function shape does not match element " + dofs.element);
    if ((dofs.element == "divdiv3d" || dofs.element == "divdiv3d_bubbleDofs" || dofs.element == "divdiv2d") &&
        !(phi == transpose(phi)))
        throw InputError(dofs.element + " expects a symmetric matrix field");
    if ((dofs.element == "symcurl3d" || dofs.element == "symcurl3d_lagrange") && !trace(phi).is_zero())
        throw InputError(dofs.element + " expects a traceless matrix field");
}

}  // namespace

FloatVec evaluate_dofs(const ElementDofs& dofs, const PolyMatrix& phi) {
    check_function(dofs, phi);
    FieldCache fc(phi);
    FloatVec out;
    for (const DofGroup& g : dofs.groups) {
        GroupEvaluator ev(g);
        BigFloat s = sqrt_rat(g.scale_sq);
        for (const Rat& r : ev.rational_values(fc)) out.push_back(BigFloat(r) * s);
    }
    return out;
}

BigFloat evaluate_dof(const ElementDofs& dofs, std::size_t i, const PolyMatrix& phi) {
    if (i >= dofs.size()) throw InputError("functional index out of range");
    check_function(dofs, phi);
    const DofFunctional& f = dofs.functionals[i];
    const DofGroup& g = dofs.groups[f.group];
    FieldCache fc(phi);
    GroupEvaluator ev(g);
    return BigFloat(ev.rational_values(fc)[f.index]) * sqrt_rat(g.scale_sq);
}

BigFloatMatrix DofMatrix::numeric() const {
    FloatVec s;
    for (const Rat& q : scale_sq) s.push_back(sqrt_rat(q));
    return BigFloatMatrix::from_exact(rational, &s);
}

DofMatrix dof_matrix(const ElementDofs& dofs, const std::vector<PolyMatrix>& functions) {
    DofMatrix m;
    m.rational = ExactMatrix(dofs.size(), functions.size());
    std::vector<GroupEvaluator> evs;
    evs.reserve(dofs.groups.size());
    for (const DofGroup& g : dofs.groups) {
        evs.emplace_back(g);
        for (std::size_t i = 0; i < g.count; ++i) m.scale_sq.push_back(g.scale_sq);
    }
    for (std::size_t j = 0; j < functions.size(); ++j) {
        FieldCache fc(functions[j]);
        std::size_t row = 0;
        for (GroupEvaluator& ev : evs)
            for (const Rat& r : ev.rational_values(fc)) m.rational(row++, j) = r;
    }
    return m;
}

BigFloatMatrix equilibrate(BigFloatMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigFloat s(0);
        for (std::size_t j = 0; j < m.cols(); ++j) s.add_mul(m(i, j), m(i, j));
        if (s.is_zero()) continue;
        s = sqrt(s);
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) /= s;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        BigFloat s(0);
        for (std::size_t i = 0; i < m.rows(); ++i) s.add_mul(m(i, j), m(i, j));
        if (s.is_zero()) continue;
        s = sqrt(s);
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= s;
    }
    return m;
}

BigFloatMatrix l2_orthonormalizer(const SpaceBasis& basis, const std::vector<RatVec>& cell_vertices) {
    CoeffIndex keys = coefficient_keys(basis.elements);
    ExactMatrix a_exact = coefficient_matrix(basis.elements, keys);
    BigFloatMatrix a = BigFloatMatrix::from_exact(a_exact);
    std::vector<CoeffKey> key_list(keys.size());
    for (const auto& [key, row] : keys) key_list[row] = key;
    int arity = static_cast<int>(cell_vertices.front().size());
    std::map<MultiIndex, BigFloat, GradedLex> moments;
    auto moment = [&](const MultiIndex& m) -> const BigFloat& {
        auto it = moments.find(m);
        if (it == moments.end()) it = moments.emplace(m, BigFloat(integrate_simplex(Poly::monomial(arity, m), cell_vertices))).first;
        return it->second;
    };
    // M A, with M[(e, a), (e', b)] = delta_ee' int x^(a + b)
    std::size_t nk = key_list.size(), n = basis.size();
    BigFloatMatrix ma(nk, n);
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t p = 0; p < nk; ++p) {
            if (key_list[i].first != key_list[p].first) continue;
            const BigFloat& w = moment(key_list[i].second + key_list[p].second);
            for (std::size_t j = 0; j < n; ++j)
                if (!a(p, j).is_zero()) ma(i, j).add_mul(w, a(p, j));
        }
    BigFloatMatrix g = a.transpose() * ma;
    // G = L L^T, C = L^{-T}
    BigFloatMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        BigFloat d = g(j, j);
        for (std::size_t p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
        if (!(d > BigFloat(0))) throw InternalError("l2_orthonormalizer: Gram matrix is not positive definite");
        l(j, j) = sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            BigFloat r = g(i, j);
            for (std::size_t p = 0; p < j; ++p) r -= l(i, p) * l(j, p);
            l(i, j) = r / l(j, j);
        }
    }
    // solve L^T C = I column by column, C upper triangular
    BigFloatMatrix c(n, n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t ii = col + 1; ii-- > 0;) {
            BigFloat r = ii == col ? BigFloat(1) : BigFloat(0);
            for (std::size_t p = ii + 1; p <= col; ++p) r -= l(p, ii) * c(p, col);
            c(ii, col) = r / l(ii, ii);
        }
    return c;
}

UnisolvenceReport unisolvence_check(const ElementDef& e, const Cell& cell) {
    auto t0 = std::chrono::steady_clock::now();
    UnisolvenceReport r;
    r.element = e.name;
    r.l = e.l;
    r.k = e.k;
    r.precision = default_precision();
    SpaceBasis shape = e.shape(cell);
    ElementDofs dofs = dof_set(e, cell);
    r.rows = dofs.size();
    r.cols = shape.size();
    r.square = r.rows == r.cols;
    if (!r.square)
        throw InternalError(e.name + ": " + std::to_string(r.rows) + " functionals for a shape space of dimension " +
                            std::to_string(r.cols));
    BigFloatMatrix d = dof_matrix(dofs, shape.elements).numeric();
    SingularExtremes mono = min_max_singular(equilibrate(d));
    r.monomial_ratio = mono.sigma_max.is_zero() ? BigFloat(0) : mono.sigma_min / mono.sigma_max;
    std::vector<RatVec> verts = std::visit([](const auto& c) { return c.vertex_list(); }, cell);
    SingularExtremes s = min_max_singular(equilibrate(d * l2_orthonormalizer(shape, verts)));
    r.sigma_min = s.sigma_min;
    r.sigma_max = s.sigma_max;
    r.ratio = s.sigma_max.is_zero() ? BigFloat(0) : s.sigma_min / s.sigma_max;
    r.pass = r.ratio > BigFloat(1) / BigFloat(100000000L);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

DualBasis dual_basis(const ElementDef& e, const Cell& cell) {
    DualBasis out;
    out.shape = e.shape(cell);
    ElementDofs dofs = dof_set(e, cell);
    if (dofs.size() != out.shape.size()) throw InternalError(e.name + ": functional count differs from dimension");
    BigFloatMatrix d = dof_matrix(dofs, out.shape.elements).numeric();
    out.coefficients = inverse(d);
    BigFloatMatrix p = d * out.coefficients;
    BigFloat worst(0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            BigFloat v = p(i, j);
            if (i == j) v -= BigFloat(1);
            worst = max(worst, abs(v));
        }
    out.residual = worst;
    return out;
}

}  // namespace ddlab
