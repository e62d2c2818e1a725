#include "ddlab/suite.hpp"

#include <filesystem>
#include <random>

#include "ddlab/bubbles.hpp"
#include "ddlab/complexes.hpp"
#include "ddlab/errors.hpp"
#include "ddlab/identities.hpp"
#include "ddlab/operators.hpp"
#include "ddlab/traces.hpp"

namespace ddlab {

const FieldValue* CheckResult::metric(const std::string& key) const {
    for (const Field& f : metrics)
        if (f.key == key) return &f.value;
    return nullptr;
}

long long CheckResult::metric_int(const std::string& key) const {
    const FieldValue* v = metric(key);
    if (!v || !std::holds_alternative<long long>(*v)) throw InternalError(tag + ": no integer metric " + key);
    return std::get<long long>(*v);
}

Field field(std::string key, bool v) { return {std::move(key), v}; }
Field field(std::string key, int v) { return {std::move(key), static_cast<long long>(v)}; }
Field field(std::string key, long v) { return {std::move(key), static_cast<long long>(v)}; }
Field field(std::string key, long long v) { return {std::move(key), v}; }
Field field(std::string key, std::size_t v) { return {std::move(key), static_cast<long long>(v)}; }
Field field(std::string key, double v) { return {std::move(key), v}; }
Field field(std::string key, const BigFloat& v) { return {std::move(key), v.to_double()}; }
Field field(std::string key, std::string v) { return {std::move(key), std::move(v)}; }
Field field(std::string key, const char* v) { return {std::move(key), std::string(v)}; }

namespace {

Rat small_rat(std::mt19937_64& g) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    Rat q(num(g), den(g));
    q.canonicalize();
    return q;
}

BigFloat relative_max(const std::vector<IdentityResidual>& rs) {
    BigFloat worst(0);
    for (const IdentityResidual& r : rs) worst = max(worst, r.relative());
    return worst;
}

Cell seeded_cell(const ElementDef& e, const std::string& cell, std::uint64_t seed) {
    if (cell != "reference" && cell != "random") throw InputError("cell must be reference or random, got " + cell);
    std::uint64_t s = cell == "reference" ? 0 : seed;
    if (e.dim() == 2) return seeded_triangle(s);
    return seeded_tet(s);
}

std::vector<Field> element_params(const std::string& element, int l, int k, const std::string& cell, std::uint64_t seed) {
    std::vector<Field> p{field("element", element), field("l", l), field("k", k), field("cell", cell)};
    if (cell == "random") p.push_back(field("seed", static_cast<long long>(seed)));
    return p;
}

}  // namespace

PolyMatrix random_tensor(const TensorClass& cls, int dim, int degree, std::uint64_t seed) {
    SpaceBasis b = polynomial_space(cls, dim, degree, Frame::standard(dim));
    std::mt19937_64 g(seed);
    PolyMatrix s(b.rows, b.cols, dim);
    for (const PolyMatrix& m : b.elements) s += m * small_rat(g);
    return s;
}

Poly random_scalar(int dim, int degree, std::uint64_t seed) { return random_tensor(scalar_class(dim), dim, degree, seed)[0]; }

Tet seeded_tet(std::uint64_t seed) { return seed == 0 ? reference_tet() : random_rational_tet(seed); }
Triangle seeded_triangle(std::uint64_t seed) { return seed == 0 ? reference_triangle() : random_rational_triangle(seed); }

CheckResult run_complex(const std::string& name, int k) {
    ExactnessReport r = verify_complex(find_complex(name), k);
    CheckResult out;
    out.tag = "complex." + name;
    out.params = {field("k", k)};
    out.pass = r.pass;
    out.metrics.push_back(field("head", r.head));
    out.metrics.push_back(field("head_dim", r.head_dim));
    out.metrics.push_back(field("head_in_kernel", r.head_in_kernel));
    std::string dims, ranks, kernels;
    for (std::size_t i = 0; i < r.slots.size(); ++i) {
        const SlotReport& s = r.slots[i];
        std::string sep = i ? "," : "";
        dims += sep + std::to_string(s.dim);
        ranks += sep + std::to_string(s.rank_in);
        kernels += sep + std::to_string(s.kernel_out);
    }
    out.metrics.push_back(field("dims", dims));
    out.metrics.push_back(field("ranks_in", ranks));
    out.metrics.push_back(field("kernels_out", kernels));
    bool comp = true;
    for (bool c : r.compositions_zero) comp = comp && c;
    out.metrics.push_back(field("compositions_zero", comp));
    out.metrics.push_back(field("alternating_sum", r.alternating_sum));
    out.notes = find_complex(name).description;
    return out;
}

std::vector<std::string> decomposition_names() {
    return {"sym_curl_plus_xxT", "hess_plus_sym_cross_x", "S_cross_x_plus_dev_grad", "kernel_divdiv"};
}

CheckResult run_decomposition(const std::string& name, int k) {
    auto sp = [](const char* n, int deg) {
        SpaceParams p;
        p.k = deg;
        return space_basis(n, p);
    };
    CheckResult out;
    out.tag = "decomp." + name;
    out.params = {field("k", k)};
    if (name == "kernel_divdiv") {
        if (k < 0) throw InputError("kernel_divdiv: k must be non-negative");
        SpaceBasis ps = sp("P_S", k);
        std::size_t nullity = ps.size() - span_rank(apply_all(OperatorSpec::of(OpName::div_div), ps));
        long long formula = (5LL * k * k * k + 36LL * k * k + 67LL * k + 36) / 6;
        std::size_t image = sp("C", k).size();
        out.metrics = {field("dim_P_S", ps.size()), field("nullity", nullity), field("dim_sym_curl_image", image),
                       field("formula", formula)};
        out.pass = static_cast<long long>(nullity) == formula && image == nullity;
        out.notes = "dim P_k(S) cap ker div div = dim sym curl P_{k+1}(T)";
        return out;
    }
    DirectSumReport r;
    if (name == "sym_curl_plus_xxT") {
        r = verify_direct_sum({sp("C", k), sp("C_plus", k)}, sp("P_S", k));
        out.notes = "P_k(S) = sym curl P_{k+1}(T) + x x^T P_{k-2}";
    } else if (name == "hess_plus_sym_cross_x") {
        r = verify_direct_sum({sp("hess_P", k), sp("sym_T_cross_x", k)}, sp("P_S", k));
        out.notes = "P_k(S) = hess P_{k+2} + sym(P_{k-1}(T) x x)";
    } else if (name == "S_cross_x_plus_dev_grad") {
        r = verify_direct_sum({sp("S_cross_x", k), sp("dev_grad_P", k + 1)}, sp("P_T", k + 1));
        out.notes = "P_{k+1}(T) = P_k(S) x x + dev grad P_{k+2}(R3)";
    } else {
        throw InputError("unknown decomposition: " + name);
    }
    for (std::size_t i = 0; i < r.part_dims.size(); ++i) out.metrics.push_back(field("dim_part" + std::to_string(i), r.part_dims[i].second));
    out.metrics.push_back(field("dim_whole", r.whole_dim));
    out.metrics.push_back(field("rank_concat", r.concatenated_rank));
    out.metrics.push_back(field("contained", r.contained));
    out.pass = r.pass;
    return out;
}

CheckResult run_unisolvence(const std::string& element, int l, int k, const std::string& cell, std::uint64_t seed) {
    ElementDef e = make_element(element, l, k);
    UnisolvenceReport r = unisolvence_check(e, seeded_cell(e, cell, seed));
    CheckResult out;
    out.tag = "unisolvence." + element;
    out.params = element_params(element, l, k, cell, seed);
    out.pass = r.pass && r.rows == expected_dimension(e);
    out.metrics = {field("rows", r.rows),           field("cols", r.cols),         field("expected", expected_dimension(e)),
                   field("square", r.square),       field("sigma_min", r.sigma_min), field("sigma_max", r.sigma_max),
                   field("sigma_ratio", r.ratio),   field("monomial_basis_ratio", r.monomial_ratio),
                   field("precision", r.precision)};
    out.notes = "equilibrated DOF matrix on an L2(K)-orthonormal shape basis, pass iff square and sigma ratio > 1e-8";
    return out;
}

CheckResult run_dual_basis(const std::string& element, int l, int k, const std::string& cell, std::uint64_t seed) {
    ElementDef e = make_element(element, l, k);
    DualBasis d = dual_basis(e, seeded_cell(e, cell, seed));
    CheckResult out;
    out.tag = "dualbasis." + element;
    out.params = element_params(element, l, k, cell, seed);
    out.pass = d.residual < pow10(-40);
    out.metrics = {field("size", d.shape.size()), field("residual", d.residual)};
    out.notes = "max |N_i(phi_j) - delta_ij| < 1e-40";
    return out;
}

CheckResult run_bubble_space(int l, std::uint64_t seed) {
    Tet t = seeded_tet(seed);
    BubbleBasis b = bubble_basis(l, t);
    std::vector<PolyMatrix> all = b.all();
    bool trace_free = true, edges = true;
    BigFloat worst(0);
    for (const PolyMatrix& m : all) {
        trace_free = trace_free && trace(m).is_zero();
        for (int e = 0; e < 6; ++e) edges = edges && restrict(m, t.edge_chart(e)).is_zero();
        BigFloat scale = FloatPolyMatrix::from(m).max_abs();
        for (int f = 0; f < 4; ++f)
            for (TraceKind kind : {TraceKind::symcurl_tr1, TraceKind::symcurl_tr2})
                worst = max(worst, trace(m, t, f, kind).max_abs() / scale);
    }
    std::size_t rank = span_rank(all);
    CheckResult out;
    out.tag = "bubble.space";
    out.params = {field("l", l), field("seed", static_cast<long long>(seed))};
    out.metrics = {field("dim", all.size()),        field("formula", bubble_dimension(l)), field("rank", rank),
                   field("trace_free", trace_free), field("edges_vanish", edges),          field("face_trace_residual", worst)};
    out.pass = all.size() == bubble_dimension(l) && rank == all.size() && trace_free && edges && worst < pow10(-55);
    out.notes = "B_{l+1}(sym curl; T): traces on faces below 1e-55";
    return out;
}

CheckResult run_bubble_complex(int dim, int l, int k, std::uint64_t seed) {
    if (dim != 2 && dim != 3) throw InputError("bubble complex dimension must be 2 or 3");
    ExactnessReport r = dim == 3 ? verify_bubble_complex(l, k, seeded_tet(seed)) : verify_2d_bubble_complex(l, k, seeded_triangle(seed));
    CheckResult out;
    out.tag = dim == 3 ? "bubble.complex3d" : "bubble.complex2d";
    out.params = {field("l", l), field("k", k), field("seed", static_cast<long long>(seed))};
    std::string dims;
    for (std::size_t i = 0; i < r.slots.size(); ++i) dims += (i ? "," : "") + std::to_string(r.slots[i].dim);
    out.metrics = {field("dims", dims), field("alternating_sum", r.alternating_sum)};
    out.pass = r.pass;
    return out;
}

std::vector<std::string> green_names() { return {"divdiv3d", "divdiv2d", "symcurl"}; }

CheckResult run_green(const std::string& name, int k, std::uint64_t seed, int samples) {
    if (samples < 1) throw InputError("samples must be positive");
    if (k < 1) throw InputError("green: k must be at least 1");
    std::vector<IdentityResidual> rs;
    std::uint64_t base = seed * 1000;
    for (int s = 0; s < samples; ++s) {
        std::uint64_t a = base + 2 * static_cast<std::uint64_t>(s) + 1, b = a + 1;
        if (name == "divdiv3d")
            rs.push_back(green_residual_3d(random_tensor(matrix_class(TensorKind::S, 3), 3, k, a), random_scalar(3, k, b), seeded_tet(seed)));
        else if (name == "divdiv2d")
            rs.push_back(green_residual_2d(random_tensor(matrix_class(TensorKind::S, 2), 2, k, a), random_scalar(2, k, b), seeded_triangle(seed)));
        else if (name == "symcurl")
            rs.push_back(green_residual_symcurl(random_tensor(matrix_class(TensorKind::M, 3), 3, k, a),
                                                random_tensor(matrix_class(TensorKind::S, 3), 3, k, b), seeded_tet(seed)));
        else
            throw InputError("unknown Green identity: " + name);
    }
    BigFloat worst = relative_max(rs);
    CheckResult out;
    out.tag = "green." + name;
    out.params = {field("k", k), field("seed", static_cast<long long>(seed)), field("samples", samples)};
    out.metrics = {field("max_relative_residual", worst)};
    out.pass = worst < pow10(-50);
    out.notes = seed == 0 ? "reference cell" : "seeded random rational cell";
    return out;
}

std::vector<std::string> trace_check_names() { return {"3d", "2d"}; }

CheckResult run_trace(const std::string& name, int k, std::uint64_t seed, int samples) {
    if (samples < 1) throw InputError("samples must be positive");
    if (k < 1) throw InputError("trace: k must be at least 1");
    std::vector<IdentityResidual> rs;
    std::uint64_t base = seed * 1000 + 500;
    for (int s = 0; s < samples; ++s) {
        std::uint64_t a = base + 2 * static_cast<std::uint64_t>(s) + 1;
        std::vector<IdentityResidual> part;
        if (name == "3d")
            part = trace_relation_checks(random_tensor(matrix_class(TensorKind::T, 3), 3, k, a), seeded_tet(seed));
        else if (name == "2d")
            part = trace_relation_checks_2d(random_tensor(vector_class(2), 2, k + 1, a), seeded_triangle(seed));
        else
            throw InputError("unknown trace check: " + name);
        rs.insert(rs.end(), part.begin(), part.end());
    }
    CheckResult out;
    out.tag = "trace." + name;
    out.params = {field("k", k), field("seed", static_cast<long long>(seed)), field("samples", samples)};
    BigFloat worst = relative_max(rs);
    out.metrics = {field("relations", rs.size()), field("max_relative_residual", worst)};
    if (name == "3d") {
        for (const char* n : {"trace1", "trace2_rotrot", "trace2_divdiv", "edgedofprop1", "edgedofprop2"}) {
            std::vector<IdentityResidual> sub;
            for (const IdentityResidual& r : rs)
                if (r.name == n) sub.push_back(r);
            out.metrics.push_back(field(std::string(n), relative_max(sub)));
        }
    }
    out.pass = worst < pow10(-50);
    return out;
}

Mesh resolve_mesh(const std::string& name_or_path) {
    for (const std::string& n : builtin_mesh_names())
        if (n == name_or_path) return builtin_mesh(n);
    if (!std::filesystem::exists(name_or_path)) throw InputError("no builtin mesh or file named " + name_or_path);
    return load_mesh(name_or_path);
}

CheckResult run_mesh(const Mesh& mesh, int l, int k, std::uint64_t seed) {
    GlobalComplexOptions opt;
    opt.seed = static_cast<unsigned>(seed);
    GlobalComplexReport r = verify_global_complex(mesh, l, k, opt);
    auto join = [](const auto& a) {
        std::string s;
        for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
        return s;
    };
    CheckResult out;
    out.tag = "mesh.complex";
    out.params = {field("mesh", mesh.name), field("l", l), field("k", k), field("seed", static_cast<long long>(seed))};
    out.metrics = {field("entities", join(std::array<std::size_t, 4>{r.nv, r.ne, r.nf, r.nt})),
                   field("euler", r.euler),
                   field("exactness_expected", r.exactness_expected),
                   field("dims", join(r.dims)),
                   field("formula_dims", join(r.formula_dims)),
                   field("alternating_sum", r.alternating_sum),
                   field("ranks", join(r.ranks)),
                   field("inclusion_dev_grad", r.inclusion_residual[0]),
                   field("inclusion_sym_curl", r.inclusion_residual[1]),
                   field("inclusion_div_div", r.inclusion_residual[2]),
                   field("composition_sym_curl_dev_grad", r.composition_residual[0]),
                   field("composition_div_div_sym_curl", r.composition_residual[1]),
                   field("rt_kernel_residual", r.rt_kernel_residual),
                   field("surjectivity_residual", r.surjectivity_residual),
                   field("single_valued_V", r.single_valued[0]),
                   field("single_valued_Sigma_T", r.single_valued[1]),
                   field("single_valued_Sigma_S", r.single_valued[2]),
                   field("complex", r.complex_ok),
                   field("exact", r.exact)};
    out.pass = r.pass;
    if (!r.exactness_expected) out.notes = "mesh is not contractible; exactness not required";
    return out;
}

std::vector<std::string> global_space_names() { return {"V_h", "Sigma_h_T", "Sigma_h_S", "Q_h"}; }

CheckResult run_dims(const std::string& space, const Mesh& mesh, int l, int k) {
    std::string element;
    if (space == "V_h") element = "hermite3d";
    else if (space == "Sigma_h_T") element = "symcurl3d";
    else if (space == "Sigma_h_S") element = "divdiv3d";
    else if (space == "Q_h") element = "q";
    else throw InputError("unknown global space: " + space);
    std::size_t formula = global_dimension_formula(element, l, k, mesh);
    std::size_t counted = element == "q" ? mesh.num_cells() * monomial_count(3, k - 2) : global_space(element, l, k, mesh).size();
    CheckResult out;
    out.tag = "dims." + space;
    out.params = {field("mesh", mesh.name), field("l", l), field("k", k)};
    out.metrics = {field("dim", counted), field("formula", formula)};
    out.pass = counted == formula;
    return out;
}

std::vector<CheckResult> run_identities(int samples, std::uint64_t seed) {
    if (samples < 1) throw InputError("samples must be positive");
    std::vector<CheckResult> out;
    for (const IdentityCheck& c : identity_suite(static_cast<std::size_t>(samples), seed)) {
        CheckResult r;
        r.tag = "identity." + c.name;
        r.params = {field("samples", samples), field("seed", static_cast<long long>(seed))};
        r.metrics = {field("exact", c.exact), field("max_residual", c.max_residual)};
        r.pass = c.pass;
        r.notes = c.exact ? "exact arithmetic" : "unit normal, below 1e-60";
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ddlab
