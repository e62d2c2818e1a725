#include "ddlab/complexes.hpp"

#include <chrono>
#include <json.hpp>

#include "ddlab/errors.hpp"

namespace ddlab {

namespace {

SpaceFactory named(const std::string& name, int dk, int dl = 0) {
    return [name, dk, dl](int k) {
        SpaceParams p;
        p.k = k + dk;
        p.l = k + dl;
        return space_basis(name, p);
    };
}

SpaceFactory poly(const TensorClass& cls, int arity, int dk) {
    return [cls, arity, dk](int k) { return polynomial_space(cls, arity, k + dk); };
}

SpaceFactory constants(int arity) {
    return [arity](int) {
        SpaceBasis b = polynomial_space(scalar_class(arity), arity, 0);
        b.name = "R";
        return b;
    };
}

SpaceFactory p1(int arity) {
    return [arity](int) { return polynomial_space(scalar_class(arity), arity, 1); };
}

OperatorSpec op(OpName n) { return OperatorSpec::of(n); }

}  // namespace

std::vector<ComplexSpec> builtin_complexes() {
    const TensorClass R3 = scalar_class(3), V3 = vector_class(3);
    const TensorClass S3 = matrix_class(TensorKind::S, 3), T3 = matrix_class(TensorKind::T, 3);
    const TensorClass R2 = scalar_class(2), V2 = vector_class(2), S2 = matrix_class(TensorKind::S, 2);
    std::vector<ComplexSpec> out;

    out.push_back({"derham3d", "R -> P_{k+1} -grad-> P_k(R3) -curl-> P_{k-1}(R3) -div-> P_{k-2} -> 0", 3, 2, 2, 5,
                   constants(3), {poly(R3, 3, 1), poly(V3, 3, 0), poly(V3, 3, -1), poly(R3, 3, -2)},
                   {op(OpName::grad), op(OpName::curl), op(OpName::div)}});

    out.push_back({"divdiv3d",
                   "RT -> P_{k+2}(R3) -dev grad-> P_{k+1}(T) -sym curl-> P_k(S) -div div-> P_{k-2} -> 0", 3, 2, 2, 5,
                   [](int) { return rt_space(3); },
                   {poly(V3, 3, 2), poly(T3, 3, 1), poly(S3, 3, 0), poly(R3, 3, -2)},
                   {op(OpName::dev_grad), op(OpName::sym_curl), op(OpName::div_div)}});

    out.push_back({"koszul3d",
                   "0 -> P_{k-2} -xx^T-> P_k(S) -(.)x x-> P_{k+1}(T) -(.)x-> P_{k+2}(R3) -pi_RT-> RT -> 0", 3, 2, 2,
                   5, nullptr, {poly(R3, 3, -2), poly(S3, 3, 0), poly(T3, 3, 1), poly(V3, 3, 2), [](int) { return rt_space(3); }},
                   {op(OpName::koszul_xxT), op(OpName::koszul_cross_x), op(OpName::koszul_dot_x), op(OpName::pi_RT_3d)}});

    out.push_back({"hessian3d", "P_1 -> P_{k+2} -hess-> P_k(S) -curl-> P_{k-1}(T) -div-> P_{k-2}(R3) -> 0", 3, 2, 2, 5,
                   p1(3), {poly(R3, 3, 2), poly(S3, 3, 0), poly(T3, 3, -1), poly(V3, 3, -2)},
                   {op(OpName::hess), op(OpName::curl), op(OpName::div)}});

    out.push_back({"hessian3d_koszul",
                   "0 -> P_{k-2}(R3) -dev(v x^T)-> P_{k-1}(T) -sym((.) x x)-> P_k(S) -x^T(.)x-> P_{k+2} -pi_1-> P_1 -> 0",
                   3, 2, 2, 5, nullptr,
                   {poly(V3, 3, -2), poly(T3, 3, -1), poly(S3, 3, 0), poly(R3, 3, 2), p1(3)},
                   {op(OpName::koszul_dev_xT), op(OpName::koszul_sym_cross_x), op(OpName::koszul_xTx), op(OpName::pi_1)}});

    out.push_back({"divdiv2d", "RT2 -> P_{k+1}(R2) -sym curl-> P_k(S) -div div-> P_{k-2} -> 0", 2, 2, 2, 6,
                   [](int) { return rt_space(2); }, {poly(V2, 2, 1), poly(S2, 2, 0), poly(R2, 2, -2)},
                   {op(OpName::sym_curl), op(OpName::div_div)}});

    out.push_back({"divdiv2d_koszul", "0 -> P_{k-2} -xx^T-> P_k(S) -(.)x^perp-> P_{k+1}(R2) -pi_RT-> RT2 -> 0", 2, 2, 2,
                   6, nullptr, {poly(R2, 2, -2), poly(S2, 2, 0), poly(V2, 2, 1), [](int) { return rt_space(2); }},
                   {op(OpName::koszul_xxT), op(OpName::koszul_xperp), op(OpName::pi_RT_2d)}});

    out.push_back({"hessian2d", "P_1 -> P_{k+2} -hess-> P_k(S) -rot-> P_{k-1}(R2) -> 0", 2, 2, 2, 6, p1(2),
                   {poly(R2, 2, 2), poly(S2, 2, 0), poly(V2, 2, -1)}, {op(OpName::hess), op(OpName::rot)}});

    out.push_back({"hessian2d_koszul",
                   "0 -> P_{k-1}(R2) -sym(x^perp v^T)-> P_k(S) -x^T(.)x-> P_{k+2} -pi_1-> P_1 -> 0", 2, 2, 2, 6,
                   nullptr, {poly(V2, 2, -1), poly(S2, 2, 0), poly(R2, 2, 2), p1(2)},
                   {op(OpName::koszul_sym_xperp), op(OpName::koszul_xTx), op(OpName::pi_1)}});

    // One-triangle finite element complex with l = k.
    out.push_back({"divdiv2d_fe", "RT2 -> P_{k+1}(R2) -sym curl-> Sigma_{k,k}(F) -div div-> P_{k-2} -> 0", 2, 3, 3, 6,
                   [](int) { return rt_space(2); }, {poly(V2, 2, 1), named("Sigma2", 0, 0), poly(R2, 2, -2)},
                   {op(OpName::sym_curl_F), op(OpName::div_F_div_F)}});

    return out;
}

const ComplexSpec& find_complex(const std::string& name) {
    static const std::vector<ComplexSpec> all = builtin_complexes();
    for (const ComplexSpec& c : all)
        if (c.name == name) return c;
    throw InputError("unknown complex: " + name);
}

ExactnessReport exactness_from_matrices(const std::string& name, int degree, const std::string& head_name,
                                        std::size_t head_dim, const std::vector<std::string>& space_names,
                                        const std::vector<std::size_t>& dims, const std::vector<ExactMatrix>& maps) {
    if (dims.size() != maps.size() + 1 || space_names.size() != dims.size())
        throw InputError("exactness_from_matrices: chain has inconsistent lengths");
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].cols() != dims[i] || maps[i].rows() != dims[i + 1])
            throw InputError("exactness_from_matrices: map " + std::to_string(i) + " does not chain");
    ExactnessReport r;
    r.name = name;
    r.degree = degree;
    r.head = head_name;
    r.head_dim = head_dim;
    std::vector<std::size_t> ranks;
    for (const ExactMatrix& m : maps) ranks.push_back(rank(m));
    bool ok = true;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        SlotReport s;
        s.space = space_names[i];
        s.dim = dims[i];
        s.rank_in = i == 0 ? head_dim : ranks[i - 1];
        s.kernel_out = dims[i] - (i < maps.size() ? ranks[i] : 0);
        s.exact = s.rank_in == s.kernel_out;
        ok = ok && s.exact;
        r.slots.push_back(s);
        r.alternating_sum += (i % 2 == 0 ? 1 : -1) * static_cast<long>(dims[i]);
    }
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
        bool z = (maps[i + 1] * maps[i]).is_zero();
        r.compositions_zero.push_back(z);
        ok = ok && z;
    }
    r.pass = ok;
    return r;
}

ExactnessReport verify_sequence(const std::string& name, int degree, const SpaceBasis* head,
                                const std::vector<SpaceBasis>& spaces, const std::vector<OperatorSpec>& ops) {
    if (spaces.size() != ops.size() + 1) throw InputError("verify_sequence: need one more space than maps");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<ExactMatrix> maps;
    for (std::size_t i = 0; i < ops.size(); ++i) maps.push_back(operator_matrix(ops[i], spaces[i], spaces[i + 1]).matrix);
    std::vector<std::string> names;
    std::vector<std::size_t> dims;
    for (const SpaceBasis& s : spaces) {
        names.push_back(s.name);
        dims.push_back(s.size());
    }
    ExactnessReport r = exactness_from_matrices(name, degree, head ? head->name : "0", head ? head->size() : 0, names,
                                                dims, maps);
    if (head) {
        Expander ex(spaces[0]);
        bool in = true;
        for (const PolyMatrix& h : head->elements) {
            if (!ex.coordinates(h)) in = false;
            if (!ops.empty() && !apply(ops[0], h).is_zero()) in = false;
        }
        r.head_in_kernel = in;
        r.pass = r.pass && in;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

ExactnessReport verify_complex(const ComplexSpec& spec, int k) {
    if (k < spec.k_min) throw InputError(spec.name + ": degree " + std::to_string(k) + " below the valid range");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<SpaceBasis> spaces;
    for (const SpaceFactory& f : spec.spaces) spaces.push_back(f(k));
    SpaceBasis head;
    if (spec.head) head = spec.head(k);
    ExactnessReport r = verify_sequence(spec.name, k, spec.head ? &head : nullptr, spaces, spec.ops);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string to_json(const ExactnessReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["degree"] = r.degree;
    j["head"] = {{"space", r.head}, {"dim", r.head_dim}, {"in_kernel", r.head_in_kernel}};
    j["slots"] = nlohmann::ordered_json::array();
    for (const SlotReport& s : r.slots)
        j["slots"].push_back({{"space", s.space}, {"dim", s.dim}, {"rank_in", s.rank_in},
                              {"kernel_out", s.kernel_out}, {"exact", s.exact}});
    j["compositions_zero"] = r.compositions_zero;
    j["alternating_sum"] = r.alternating_sum;
    j["pass"] = r.pass;
    return j.dump();
}

}  // namespace ddlab
