#include "ddlab/meshfem.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"

namespace ddlab {

long Mesh::euler() const {
    return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) + static_cast<long>(num_faces()) -
           static_cast<long>(num_cells());
}

bool Mesh::connected() const {
    std::vector<std::size_t> parent(num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& e : edges) parent[find(static_cast<std::size_t>(e[0]))] = find(static_cast<std::size_t>(e[1]));
    for (std::size_t v = 0; v < num_vertices(); ++v)
        if (find(v) != find(0)) return false;
    return true;
}

Tet Mesh::cell(std::size_t c) const {
    const auto& t = tets[c];
    std::array<Vec3, 4> v;
    for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
    return Tet(v, t);
}

namespace {

// p inside the closed triangle (a, b, c), exact.
bool in_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 n = cross(b - a, c - a);
    if (dot(n, p - a) != 0) return false;
    Rat d0 = dot(cross(b - a, p - a), n), d1 = dot(cross(c - b, p - b), n), d2 = dot(cross(a - c, p - c), n);
    return d0 >= 0 && d1 >= 0 && d2 >= 0;
}

}  // namespace

Mesh make_mesh(std::string name, std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets) {
    Mesh m;
    m.name = std::move(name);
    m.vertices = std::move(vertices);
    m.tets = std::move(tets);
    if (m.tets.empty()) throw InputError("mesh: no cells");
    const int nv = static_cast<int>(m.vertices.size());
    std::map<std::array<int, 3>, int> face_count;
    std::set<std::array<int, 2>> edge_set;
    std::vector<bool> used(m.vertices.size(), false);
    for (std::size_t c = 0; c < m.tets.size(); ++c) {
        const auto& t = m.tets[c];
        for (int v : t)
            if (v < 0 || v >= nv) throw InputError("mesh: cell " + std::to_string(c) + " has a vertex index out of range");
        try {
            (void)m.cell(c);
        } catch (const InputError& e) {
            throw InputError("mesh: cell " + std::to_string(c) + ": " + e.what());
        }
        for (int v : t) used[static_cast<std::size_t>(v)] = true;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                edge_set.insert({std::min(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]),
                                 std::max(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)])});
        for (int skip = 0; skip < 4; ++skip) {
            std::array<int, 3> f{};
            int n = 0;
            for (int i = 0; i < 4; ++i)
                if (i != skip) f[static_cast<std::size_t>(n++)] = t[static_cast<std::size_t>(i)];
            std::sort(f.begin(), f.end());
            if (++face_count[f] > 2) throw InputError("mesh: face shared by more than two cells (non-conforming)");
        }
    }
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v]) throw InputError("mesh: vertex " + std::to_string(v) + " belongs to no cell");
    m.edges.assign(edge_set.begin(), edge_set.end());
    for (const auto& [f, n] : face_count) {
        m.faces.push_back(f);
        m.boundary_face.push_back(n == 1);
    }
    // hanging vertices: a vertex in the closure of a face it does not span
    for (const auto& f : m.faces) {
        const Vec3 &a = m.vertices[static_cast<std::size_t>(f[0])], &b = m.vertices[static_cast<std::size_t>(f[1])],
                   &c = m.vertices[static_cast<std::size_t>(f[2])];
        for (int v = 0; v < nv; ++v) {
            if (v == f[0] || v == f[1] || v == f[2]) continue;
            if (in_triangle(m.vertices[static_cast<std::size_t>(v)], a, b, c))
                throw InputError("mesh: vertex " + std::to_string(v) + " lies on a face it does not belong to (non-conforming)");
        }
    }
    return m;
}

std::vector<std::string> builtin_mesh_names() { return {"single_tet", "two_tets", "cube6"}; }

Mesh builtin_mesh(const std::string& name) {
    if (name == "single_tet") return make_mesh(name, {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}, {{0, 1, 2, 3}});
    if (name == "two_tets")
        return make_mesh(name, {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{1, 1, 1}},
                         {{0, 1, 2, 3}, {1, 2, 3, 4}});
    if (name == "cube6") {
        // vertex i + 2j + 4k at (i, j, k); one tet per monotone path 0 -> 7
        std::vector<Vec3> v;
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 2; ++i) v.push_back(Vec3{i, j, k});
        std::vector<std::array<int, 4>> tets;
        std::array<int, 3> axes{1, 2, 4};
        do {
            tets.push_back({0, axes[0], axes[0] + axes[1], 7});
        } while (std::next_permutation(axes.begin(), axes.end()));
        return make_mesh(name, std::move(v), std::move(tets));
    }
    throw InputError("unknown builtin mesh: " + name);
}

Mesh parse_mesh(std::istream& in, const std::string& name) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= tokens.size()) throw InputError("mesh file: unexpected end of input");
        return tokens[pos++];
    };
    auto integer = [&](const std::string& t) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size()) throw InputError("mesh file: expected an integer, got '" + t + "'");
        return v;
    };
    long nv = integer(next()), nt = integer(next());
    if (nv < 4 || nt < 1) throw InputError("mesh file: need at least 4 vertices and 1 cell");
    std::vector<Vec3> v(static_cast<std::size_t>(nv));
    for (auto& p : v)
        for (auto& c : p) c = parse_rat(next());
    std::vector<std::array<int, 4>> tets(static_cast<std::size_t>(nt));
    for (auto& t : tets)
        for (auto& i : t) i = static_cast<int>(integer(next()));
    if (pos != tokens.size()) throw InputError("mesh file: trailing tokens");
    return make_mesh(name, std::move(v), std::move(tets));
}

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open mesh file: " + path);
    return parse_mesh(in, path);
}

bool operator<(const GlobalDofKey& a, const GlobalDofKey& b) {
    return std::forward_as_tuple(a.entity_gids.size(), a.entity_gids, a.cell, a.tag, a.occurrence, a.index) <
           std::forward_as_tuple(b.entity_gids.size(), b.entity_gids, b.cell, b.tag, b.occurrence, b.index);
}

GlobalSpace global_space(const std::string& element, int l, int k, const Mesh& mesh) {
    GlobalSpace s;
    s.element = make_element(element, l, k);
    if (s.element.dim() != 3) throw InputError("global_space: tetrahedral elements only");
    std::map<GlobalDofKey, std::size_t> index;
    std::vector<std::vector<GlobalDofKey>> keys(mesh.num_cells());
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        s.cell_dofs.push_back(dof_set(s.element, mesh.cell(c)));
        const ElementDofs& d = s.cell_dofs.back();
        std::map<std::pair<std::vector<int>, std::string>, std::size_t> seen;
        std::vector<std::size_t> occurrence;
        for (const DofGroup& g : d.groups) occurrence.push_back(seen[{g.entity_gids, g.tag}]++);
        for (const DofFunctional& f : d.functionals) {
            GlobalDofKey key{f.entity_gids, f.tag, occurrence[f.group], f.index, f.interior ? static_cast<long>(c) : -1};
            keys[c].push_back(key);
            index.emplace(key, 0);
        }
    }
    std::size_t n = 0;
    for (auto& [key, i] : index) {
        i = n++;
        s.dofs.push_back(key);
    }
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        std::vector<std::size_t> map;
        for (const GlobalDofKey& key : keys[c]) map.push_back(index.at(key));
        s.local_to_global.push_back(std::move(map));
    }
    return s;
}

std::size_t global_dimension_formula(const std::string& element, int l, int k, const Mesh& mesh) {
    const long V = static_cast<long>(mesh.num_vertices()), E = static_cast<long>(mesh.num_edges()),
               F = static_cast<long>(mesh.num_faces()), T = static_cast<long>(mesh.num_cells());
    const long L = l, K = k;
    long d = 0;
    if (element == "hermite3d") {
        d = 12 * V + 3 * (L - 1) * E + 3 * (L + 1) * L / 2 * F + (L * L * L - L) / 2 * T;
    } else if (element == "symcurl3d" || element == "symcurl3d_lagrange") {
        d = 14 * V + (6 * L - 2) * E + (2 * L * (L + 1) + (L - 1) * (L - 2) / 2 - 4) * F +
            (4 * L * L * L + 6 * L * L - 10 * L) / 3 * T;
    } else if (element == "divdiv3d" || element == "divdiv3d_bubbleDofs") {
        d = 6 * V + 3 * (L - 1) * E + (L * L - L + 1) * F +
            (L * (L - 1) / 2 + (L - 1) * L * (5 * L + 14) / 6 + (K * K * K - K) / 6 - 4) * T;
    } else if (element == "q") {
        d = (K * K * K - K) / 6 * T;
    } else {
        throw InputError("global_dimension_formula: no formula for " + element);
    }
    return static_cast<std::size_t>(d);
}

BigFloat single_valuedness(const GlobalSpace& space, const Mesh& mesh, const PolyMatrix& field) {
    std::vector<std::optional<BigFloat>> seen(space.size());
    BigFloat worst(0), scale(0);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        FloatVec vals = evaluate_dofs(space.cell_dofs[c], field);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto& slot = seen[space.local_to_global[c][i]];
            scale = max(scale, abs(vals[i]));
            if (!slot) {
                slot = vals[i];
                continue;
            }
            worst = max(worst, abs(*slot - vals[i]));
        }
    }
    return scale.is_zero() ? worst : worst / scale;
}

namespace {

struct CellBasis {
    SpaceBasis shape;
    BigFloatMatrix coefficients;  // column j: dual function of local functional j
};

std::vector<CellBasis> cell_bases(const GlobalSpace& s, const Mesh& mesh) {
    std::vector<CellBasis> out;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        DualBasis d = dual_basis(s.element, mesh.cell(c));
        out.push_back({std::move(d.shape), std::move(d.coefficients)});
    }
    return out;
}

struct Assembly {
    BigFloatMatrix matrix;
    BigFloat mismatch;  // relative to max |entry|
};

// Rows of a per-cell block B_K (target functionals x local source duals)
// scattered into global rows; rows of shared targets from later cells are
// compared against the stored ones.
class Assembler {
public:
    Assembler(std::size_t rows, std::size_t cols) : m_(rows, cols), set_(rows, false) {}

    void add_block(const BigFloatMatrix& block, const std::vector<std::size_t>& row_ids,
                   const std::vector<std::size_t>& col_ids) {
        FloatVec row(m_.cols());
        for (std::size_t a = 0; a < block.rows(); ++a) {
            std::fill(row.begin(), row.end(), BigFloat(0));
            for (std::size_t j = 0; j < block.cols(); ++j) row[col_ids[j]] = block(a, j);
            std::size_t g = row_ids[a];
            if (!set_[g]) {
                for (std::size_t j = 0; j < row.size(); ++j) m_(g, j) = row[j];
                set_[g] = true;
                continue;
            }
            for (std::size_t j = 0; j < row.size(); ++j) mismatch_ = max(mismatch_, abs(m_(g, j) - row[j]));
        }
    }

    Assembly finish() {
        BigFloat s = m_.max_abs();
        return {std::move(m_), s.is_zero() ? mismatch_ : mismatch_ / s};
    }

private:
    BigFloatMatrix m_;
    std::vector<bool> set_;
    BigFloat mismatch_{0};
};

Assembly assemble(const GlobalSpace& src, const std::vector<CellBasis>& bases, const GlobalSpace& tgt,
                  const OperatorSpec& op, const Mesh& mesh) {
    Assembler a(tgt.size(), src.size());
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        std::vector<PolyMatrix> images = apply_all(op, bases[c].shape);
        BigFloatMatrix values = dof_matrix(tgt.cell_dofs[c], images).numeric();
        a.add_block(values * bases[c].coefficients, tgt.local_to_global[c], src.local_to_global[c]);
    }
    return a.finish();
}

SpaceBasis q_basis(const Tet& t, int k) { return polynomial_space(scalar_class(3), 3, k - 2, t.local_frame()); }

// Moments int_K divdiv(phi) q_a against the local P_{k-2} basis.
Assembly assemble_q(const GlobalSpace& src, const std::vector<CellBasis>& bases, int k, const Mesh& mesh,
                    std::size_t q_dim) {
    Assembler a(q_dim, src.size());
    std::size_t offset = 0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        Tet t = mesh.cell(c);
        SpaceBasis q = q_basis(t, k);
        auto verts = t.vertex_list();
        const SpaceBasis& shape = bases[c].shape;
        ExactMatrix m(q.size(), shape.size());
        for (std::size_t j = 0; j < shape.size(); ++j) {
            Poly d = divdiv(shape.elements[j])[0];
            if (d.is_zero()) continue;
            for (std::size_t i = 0; i < q.size(); ++i) m(i, j) = integrate_simplex(d * q.elements[i][0], verts);
        }
        std::vector<std::size_t> rows(q.size());
        std::iota(rows.begin(), rows.end(), offset);
        offset += q.size();
        a.add_block(BigFloatMatrix::from_exact(m) * bases[c].coefficients, rows, src.local_to_global[c]);
    }
    return a.finish();
}

// max |A B| / (max |A| max |B|), skipping zero entries of A.
BigFloat composition(const BigFloatMatrix& a, const BigFloatMatrix& b) {
    BigFloat worst(0);
    FloatVec row(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(row.begin(), row.end(), BigFloat(0));
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const BigFloat& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) row[j].add_mul(x, b(k, j));
        }
        for (const BigFloat& v : row) worst = max(worst, abs(v));
    }
    BigFloat s = a.max_abs() * b.max_abs();
    return s.is_zero() ? worst : worst / s;
}

// Global DOF values of a smooth field (the coefficients of its interpolant).
FloatVec interpolate(const GlobalSpace& s, const Mesh& mesh, const PolyMatrix& field) {
    FloatVec out(s.size());
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        FloatVec v = evaluate_dofs(s.cell_dofs[c], field);
        for (std::size_t i = 0; i < v.size(); ++i) out[s.local_to_global[c][i]] = v[i];
    }
    return out;
}

PolyMatrix random_field(TensorKind kind, int degree, std::mt19937& g) {
    SpaceBasis b = polynomial_space(kind == TensorKind::Vector ? vector_class(3) : matrix_class(kind, 3), 3, degree,
                                    Frame::standard(3));
    std::uniform_int_distribution<int> d(-5, 5);
    PolyMatrix s(b.rows, b.cols, 3);
    for (const PolyMatrix& m : b.elements) s += m * Rat(d(g));
    return s;
}

BigFloat rel_max(const FloatVec& v, const BigFloat& scale) {
    BigFloat m(0);
    for (const BigFloat& x : v) m = max(m, abs(x));
    return scale.is_zero() ? m : m / scale;
}

}  // namespace

GlobalComplexReport verify_global_complex(const Mesh& mesh, int l, int k, const GlobalComplexOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    GlobalComplexReport r;
    r.mesh = mesh.name;
    r.l = l;
    r.k = k;
    r.nv = mesh.num_vertices();
    r.ne = mesh.num_edges();
    r.nf = mesh.num_faces();
    r.nt = mesh.num_cells();
    r.euler = mesh.euler();
    r.exactness_expected = mesh.connected() && r.euler == 1;

    GlobalSpace vh = global_space("hermite3d", l, k, mesh);
    GlobalSpace th = global_space("symcurl3d", l, k, mesh);
    GlobalSpace sh = global_space("divdiv3d", l, k, mesh);
    std::size_t q_local = static_cast<std::size_t>((k + 1) * k * (k - 1) / 6);
    std::size_t q_dim = q_local * mesh.num_cells();
    r.dims = {vh.size(), th.size(), sh.size(), q_dim};
    r.formula_dims = {global_dimension_formula("hermite3d", l, k, mesh), global_dimension_formula("symcurl3d", l, k, mesh),
                      global_dimension_formula("divdiv3d", l, k, mesh), global_dimension_formula("q", l, k, mesh)};
    r.alternating_sum = static_cast<long>(r.dims[0]) - static_cast<long>(r.dims[1]) + static_cast<long>(r.dims[2]) -
                        static_cast<long>(r.dims[3]);

    std::mt19937 g(opt.seed);
    r.single_valued = {single_valuedness(vh, mesh, random_field(TensorKind::Vector, l + 1, g)),
                       single_valuedness(th, mesh, random_field(TensorKind::T, l, g)),
                       single_valuedness(sh, mesh, random_field(TensorKind::S, l, g))};

    std::vector<CellBasis> vb = cell_bases(vh, mesh);
    Assembly b1 = assemble(vh, vb, th, OperatorSpec::of(OpName::dev_grad), mesh);
    vb.clear();
    std::vector<CellBasis> tb = cell_bases(th, mesh);
    Assembly b2 = assemble(th, tb, sh, OperatorSpec::of(OpName::sym_curl), mesh);
    tb.clear();
    std::vector<CellBasis> sb = cell_bases(sh, mesh);
    Assembly b3 = assemble_q(sh, sb, k, mesh, q_dim);
    sb.clear();
    r.inclusion_residual = {b1.mismatch, b2.mismatch, b3.mismatch};
    r.composition_residual = {composition(b2.matrix, b1.matrix), composition(b3.matrix, b2.matrix)};

    // RT = {a x + b} interpolates exactly into V_h and lies in ker dev grad.
    BigFloat rt(0);
    for (int i = 0; i < 4; ++i) {
        PolyMatrix f = i < 3 ? PolyMatrix(3, 1, 3) : PolyMatrix::position(RatVec(3, Rat(0)));
        if (i < 3) f[i] = Poly::constant(3, 1);
        FloatVec c = interpolate(vh, mesh, f);
        rt = max(rt, rel_max(b1.matrix * c, b1.matrix.max_abs() * rel_max(c, BigFloat(0))));
    }
    r.rt_kernel_residual = rt;

    const BigFloat rel_tol = pow10(-40), gap = pow10(20);
    const BigFloatMatrix* mats[3] = {&b1.matrix, &b2.matrix, &b3.matrix};
    for (int i = 0; i < 3; ++i) {
        NumericalRank nr = numerical_rank(*mats[i], rel_tol, gap);
        r.ranks[static_cast<std::size_t>(i)] = nr.rank;
        r.rank_gap_ok[static_cast<std::size_t>(i)] = nr.gap_ok;
    }

    // least-squares preimages of random q_h under divdiv
    r.surjectivity_residual = BigFloat(0);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int s = 0; s < opt.surjectivity_samples; ++s) {
        FloatVec q(q_dim);
        std::size_t offset = 0;
        for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
            Tet t = mesh.cell(c);
            SpaceBasis qb = q_basis(t, k);
            Poly p(3);
            for (const PolyMatrix& m : qb.elements) p += m[0] * Rat(d(g));
            auto verts = t.vertex_list();
            for (const PolyMatrix& m : qb.elements) q[offset++] = BigFloat(integrate_simplex(p * m[0], verts));
        }
        BigFloat res(1);
        try {
            FloatVec x = min_norm_solve(b3.matrix, q);
            FloatVec y = b3.matrix * x;
            for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q[i];
            BigFloat nq = norm2(q);
            res = nq.is_zero() ? norm2(y) : norm2(y) / nq;
        } catch (const InputError&) {
        }
        r.surjectivity_residual = max(r.surjectivity_residual, res);
    }

    const BigFloat tol55 = pow10(-55), tol40 = pow10(-40);
    r.complex_ok = r.composition_residual[0] < tol55 && r.composition_residual[1] < tol55;
    for (const BigFloat& x : r.inclusion_residual) r.complex_ok = r.complex_ok && x < tol55;
    bool gaps = r.rank_gap_ok[0] && r.rank_gap_ok[1] && r.rank_gap_ok[2];
    r.exact = gaps && r.ranks[0] + 4 == r.dims[0] && r.ranks[0] + r.ranks[1] == r.dims[1] &&
              r.ranks[1] + r.ranks[2] == r.dims[2] && r.ranks[2] == r.dims[3] && r.rt_kernel_residual < tol55;
    bool single = true;
    for (const BigFloat& x : r.single_valued) single = single && x < tol55;
    r.pass = r.complex_ok && single && r.dims == r.formula_dims;
    if (r.exactness_expected) r.pass = r.pass && r.exact && r.alternating_sum == 4 && r.surjectivity_residual < tol40;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string to_json(const GlobalComplexReport& r) {
    nlohmann::ordered_json j;
    j["mesh"] = r.mesh;
    j["params"] = {{"l", r.l}, {"k", r.k}};
    j["entities"] = {{"V", r.nv}, {"E", r.ne}, {"F", r.nf}, {"T", r.nt}, {"euler", r.euler}};
    j["exactness_expected"] = r.exactness_expected;
    j["dims"] = {{"V_h", r.dims[0]}, {"Sigma_T", r.dims[1]}, {"Sigma_S", r.dims[2]}, {"Q_h", r.dims[3]}};
    j["formula_dims"] = {{"V_h", r.formula_dims[0]}, {"Sigma_T", r.formula_dims[1]},
                         {"Sigma_S", r.formula_dims[2]}, {"Q_h", r.formula_dims[3]}};
    j["alternating_sum"] = r.alternating_sum;
    j["ranks"] = {{"dev_grad", r.ranks[0]}, {"sym_curl", r.ranks[1]}, {"div_div", r.ranks[2]}};
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    auto add = [&](const std::string& name, const BigFloat& v, const BigFloat& tol) {
        checks.push_back({{"name", name}, {"value", v.str(4)}, {"tol", tol.str(2)}, {"pass", v < tol}});
    };
    const BigFloat tol55 = pow10(-55), tol40 = pow10(-40);
    add("inclusion dev_grad V_h in Sigma_T", r.inclusion_residual[0], tol55);
    add("inclusion sym_curl Sigma_T in Sigma_S", r.inclusion_residual[1], tol55);
    add("div_div Sigma_S in Q_h", r.inclusion_residual[2], tol55);
    add("sym_curl o dev_grad", r.composition_residual[0], tol55);
    add("div_div o sym_curl", r.composition_residual[1], tol55);
    add("RT in ker dev_grad", r.rt_kernel_residual, tol55);
    add("single-valued V_h", r.single_valued[0], tol55);
    add("single-valued Sigma_T", r.single_valued[1], tol55);
    add("single-valued Sigma_S", r.single_valued[2], tol55);
    add("div_div surjectivity", r.surjectivity_residual, tol40);
    j["checks"] = checks;
    j["complex"] = r.complex_ok;
    j["exact"] = r.exact;
    j["pass"] = r.pass;
    j["seconds"] = r.seconds;
    return j.dump(2);
}

}  // namespace ddlab
