#include "ddlab/spaces.hpp"

#include <algorithm>

#include "ddlab/errors.hpp"
#include "ddlab/operators.hpp"

namespace ddlab {

Frame Frame::standard(int dim) { return Frame{RatVec(static_cast<std::size_t>(dim), Rat(0)), Rat(1)}; }

bool Frame::is_standard() const {
    if (scale != 1) return false;
    return std::all_of(origin.begin(), origin.end(), [](const Rat& q) { return q == 0; });
}

bool CoeffKeyLess::operator()(const CoeffKey& a, const CoeffKey& b) const {
    if (a.first != b.first) return a.first < b.first;
    return GradedLex{}(a.second, b.second);
}

CoeffIndex coefficient_keys(const std::vector<PolyMatrix>& elements) {
    CoeffIndex keys;
    for (const PolyMatrix& e : elements)
        for (int i = 0; i < e.size(); ++i)
            for (const auto& [a, c] : e[i].terms()) keys.emplace(CoeffKey{i, a}, 0);
    std::size_t n = 0;
    for (auto& [k, idx] : keys) idx = n++;
    return keys;
}

ExactMatrix coefficient_matrix(const std::vector<PolyMatrix>& elements, const CoeffIndex& keys) {
    ExactMatrix m(keys.size(), elements.size());
    for (std::size_t j = 0; j < elements.size(); ++j) {
        const PolyMatrix& e = elements[j];
        for (int i = 0; i < e.size(); ++i)
            for (const auto& [a, c] : e[i].terms()) {
                auto it = keys.find(CoeffKey{i, a});
                if (it == keys.end()) throw InputError("coefficient_matrix: monomial outside the key set");
                m(it->second, j) = c;
            }
    }
    return m;
}

ExactMatrix coefficient_matrix(const std::vector<PolyMatrix>& elements) {
    return coefficient_matrix(elements, coefficient_keys(elements));
}

namespace {

ExactMatrix expander_matrix(const SpaceBasis& basis, CoeffIndex& keys) {
    keys = coefficient_keys(basis.elements);
    return coefficient_matrix(basis.elements, keys);
}

}  // namespace

Expander::Expander(const SpaceBasis& basis) : solver_(expander_matrix(basis, keys_)) {
    if (solver_.cols() != basis.size()) throw InternalError("Expander: basis size mismatch");
}

std::optional<RatVec> Expander::coordinates(const PolyMatrix& f) const {
    RatVec rhs(keys_.size(), Rat(0));
    for (int i = 0; i < f.size(); ++i)
        for (const auto& [a, c] : f[i].terms()) {
            auto it = keys_.find(CoeffKey{i, a});
            if (it == keys_.end()) return std::nullopt;
            rhs[it->second] = c;
        }
    if (keys_.empty()) return RatVec{};
    return solver_.solve(rhs);
}

namespace {

std::pair<int, int> shape_of(const TensorClass& cls, int arity) {
    switch (cls.kind) {
        case TensorKind::Scalar: return {1, 1};
        case TensorKind::Vector: return {cls.dim, 1};
        default: break;
    }
    (void)arity;
    return {cls.dim, cls.dim};
}

SpaceBasis make_space(std::string name, const TensorClass& cls, int arity, std::vector<PolyMatrix> elements) {
    SpaceBasis b;
    b.name = std::move(name);
    b.cls = cls;
    b.arity = arity;
    auto [r, c] = shape_of(cls, arity);
    b.rows = r;
    b.cols = c;
    b.frame = Frame::standard(arity);
    int deg = 0;
    for (const PolyMatrix& e : elements) deg = std::max(deg, e.degree());
    b.degree = deg;
    b.elements = std::move(elements);
    return b;
}

SpaceBasis monomial_tensor_space(std::string name, const TensorClass& cls, int arity,
                                 const std::vector<MultiIndex>& monos) {
    std::vector<ExactMatrix> cb = class_basis(cls);
    std::vector<PolyMatrix> elems;
    elems.reserve(monos.size() * cb.size());
    for (const MultiIndex& a : monos) {
        Poly m = Poly::monomial(arity, a);
        for (const ExactMatrix& e : cb) elems.push_back(m * PolyMatrix::constant(e, arity));
    }
    return make_space(std::move(name), cls, arity, std::move(elems));
}

std::string pname(const std::string& head, const TensorClass& cls, int k) {
    return head + "_" + std::to_string(k) + "(" + cls.name() + ")";
}

}  // namespace

SpaceBasis transport(const SpaceBasis& basis, const Frame& frame) {
    if (frame.origin.empty() || frame.is_standard()) return basis;
    if (static_cast<int>(frame.origin.size()) != basis.arity) throw InputError("transport: frame dimension mismatch");
    if (frame.scale <= 0) throw InputError("transport: frame scale must be positive");
    if (!basis.frame.is_standard()) throw InputError("transport: basis is not in the standard frame");
    std::vector<Poly> images;
    for (int i = 0; i < basis.arity; ++i) {
        RatVec lin(static_cast<std::size_t>(basis.arity), Rat(0));
        lin[static_cast<std::size_t>(i)] = 1 / frame.scale;
        images.push_back(Poly::affine(-frame.origin[static_cast<std::size_t>(i)] / frame.scale, lin));
    }
    SpaceBasis out = basis;
    out.frame = frame;
    for (PolyMatrix& e : out.elements) e = substitute(e, images);
    return out;
}

SpaceBasis polynomial_space(const TensorClass& cls, int arity, int k, const Frame& frame) {
    if (k < 0) throw InputError("polynomial_space: negative degree");
    return transport(monomial_tensor_space(pname("P", cls, k), cls, arity, monomials_up_to(arity, k)), frame);
}

SpaceBasis polynomial_space(const TensorClass& cls, int arity, int k) {
    return polynomial_space(cls, arity, k, Frame::standard(arity));
}

SpaceBasis homogeneous_space(const TensorClass& cls, int arity, int k, const Frame& frame) {
    if (k < 0) throw InputError("homogeneous_space: negative degree");
    return transport(monomial_tensor_space(pname("H", cls, k), cls, arity, monomials_of_degree(arity, k)), frame);
}

SpaceBasis rt_space(int dim, const Frame& frame) {
    std::vector<PolyMatrix> elems;
    for (int i = 0; i < dim; ++i) {
        PolyMatrix e(dim, 1, dim);
        e[i] = Poly::constant(dim, 1);
        elems.push_back(e);
    }
    elems.push_back(PolyMatrix::position(RatVec(static_cast<std::size_t>(dim), Rat(0))));
    SpaceBasis b = make_space(dim == 3 ? "RT" : "RT2", vector_class(dim), dim, std::move(elems));
    return transport(b, frame);
}

SpaceBasis rt_space(int dim) { return rt_space(dim, Frame::standard(dim)); }

std::size_t span_rank(const std::vector<PolyMatrix>& elements) {
    if (elements.empty()) return 0;
    return rank(coefficient_matrix(elements));
}

SpaceBasis independent_subset(std::string name, const TensorClass& cls, int arity, std::vector<PolyMatrix> generators,
                              const Frame& frame) {
    std::vector<PolyMatrix> kept;
    if (!generators.empty()) {
        std::vector<std::size_t> piv = pivot_columns(coefficient_matrix(generators));
        kept.reserve(piv.size());
        for (std::size_t j : piv) kept.push_back(std::move(generators[j]));
    }
    SpaceBasis b = make_space(std::move(name), cls, arity, std::move(kept));
    return transport(b, frame);
}

SpaceBasis direct_sum_space(std::string name, const std::vector<SpaceBasis>& parts) {
    if (parts.empty()) throw InputError("direct_sum_space: no parts");
    SpaceBasis out = parts[0];
    out.name = std::move(name);
    for (std::size_t p = 1; p < parts.size(); ++p) {
        const SpaceBasis& s = parts[p];
        if (!(s.frame == out.frame)) throw InputError("direct_sum_space: frame mismatch");
        if (s.rows != out.rows || s.cols != out.cols || s.arity != out.arity)
            throw InputError("direct_sum_space: shape mismatch");
        out.elements.insert(out.elements.end(), s.elements.begin(), s.elements.end());
        out.degree = std::max(out.degree, s.degree);
        if (!(s.cls == out.cls)) out.cls = matrix_class(TensorKind::M, out.cls.dim);
    }
    if (span_rank(out.elements) != out.size()) throw InputError("direct_sum_space: parts are not independent");
    return out;
}

DirectSumReport verify_direct_sum(const std::vector<SpaceBasis>& parts, const SpaceBasis& whole) {
    DirectSumReport r;
    r.whole_name = whole.name;
    r.whole_dim = whole.size();
    std::vector<PolyMatrix> all;
    std::size_t total = 0;
    for (const SpaceBasis& p : parts) {
        if (!(p.frame == whole.frame)) throw InputError("verify_direct_sum: frame mismatch between " + p.name + " and " + whole.name);
        r.part_dims.emplace_back(p.name, p.size());
        total += p.size();
        all.insert(all.end(), p.elements.begin(), p.elements.end());
    }
    r.concatenated_rank = span_rank(all);
    Expander ex(whole);
    r.contained = std::all_of(all.begin(), all.end(), [&](const PolyMatrix& e) { return ex.coordinates(e).has_value(); });
    r.pass = r.contained && total == r.concatenated_rank && r.concatenated_rank == r.whole_dim;
    return r;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

SpaceBasis image(const std::string& name, OpName op, const SpaceBasis& domain, const TensorClass& cls) {
    OperatorSpec spec = OperatorSpec::of(op);
    return independent_subset(name, cls, domain.arity, apply_all(spec, domain), Frame::standard(domain.arity));
}

SpaceBasis standard_space(const std::string& name, int k, int l) {
    const TensorClass S3 = matrix_class(TensorKind::S, 3), T3 = matrix_class(TensorKind::T, 3);
    const TensorClass S2 = matrix_class(TensorKind::S, 2);
    if (name == "P_S") return polynomial_space(S3, 3, k);
    if (name == "P_T") return polynomial_space(T3, 3, k);
    if (name == "P_M") return polynomial_space(matrix_class(TensorKind::M, 3), 3, k);
    if (name == "P_K") return polynomial_space(matrix_class(TensorKind::K, 3), 3, k);
    if (name == "P_vec") return polynomial_space(vector_class(3), 3, k);
    if (name == "P") return polynomial_space(scalar_class(3), 3, k);
    if (name == "P2_S") return polynomial_space(S2, 2, k);
    if (name == "P2_vec") return polynomial_space(vector_class(2), 2, k);
    if (name == "P2") return polynomial_space(scalar_class(2), 2, k);
    if (name == "RT") return rt_space(3);
    if (name == "RT2") return rt_space(2);
    if (name == "C") return image("C_" + std::to_string(k) + "(S3)", OpName::sym_curl, polynomial_space(T3, 3, k + 1), S3);
    if (name == "C_plus") {
        require(k >= 2, "C_plus needs k >= 2");
        return image("xxT P_" + std::to_string(k - 2), OpName::koszul_xxT, polynomial_space(scalar_class(3), 3, k - 2), S3);
    }
    if (name == "hess_P") return image("hess P_" + std::to_string(k + 2), OpName::hess, polynomial_space(scalar_class(3), 3, k + 2), S3);
    if (name == "sym_T_cross_x") {
        require(k >= 1, "sym_T_cross_x needs k >= 1");
        return image("sym(P_" + std::to_string(k - 1) + "(T3) x x)", OpName::koszul_sym_cross_x,
                     polynomial_space(T3, 3, k - 1), S3);
    }
    if (name == "S_cross_x")
        return image("P_" + std::to_string(k) + "(S3) x x", OpName::koszul_cross_x, polynomial_space(S3, 3, k), T3);
    if (name == "dev_grad_P")
        return image("dev grad P_" + std::to_string(k + 1) + "(R3)", OpName::dev_grad,
                     polynomial_space(vector_class(3), 3, k + 1), T3);
    if (name == "C2") return image("C_" + std::to_string(k) + "(S2)", OpName::sym_curl, polynomial_space(vector_class(2), 2, k + 1), S2);
    if (name == "C2_plus") {
        require(k >= 2, "C2_plus needs k >= 2");
        return image("xxT P_" + std::to_string(k - 2) + " (2D)", OpName::koszul_xxT, polynomial_space(scalar_class(2), 2, k - 2), S2);
    }
    if (name == "Sigma") {
        require(k >= 3 && l >= std::max(k - 1, 3), "Sigma needs k >= 3 and l >= max(k-1, 3)");
        SpaceBasis s = direct_sum_space("Sigma_" + std::to_string(l) + "," + std::to_string(k),
                                        {standard_space("C", l, l), standard_space("C_plus", k, l)});
        s.cls = S3;
        return s;
    }
    if (name == "Sigma2") {
        require(k >= 3 && l >= std::max(k - 1, 3), "Sigma2 needs k >= 3 and l >= max(k-1, 3)");
        SpaceBasis s = direct_sum_space("Sigma2_" + std::to_string(l) + "," + std::to_string(k),
                                        {standard_space("C2", l, l), standard_space("C2_plus", k, l)});
        s.cls = S2;
        return s;
    }
    throw InputError("unknown space: " + name);
}

}  // namespace

SpaceBasis space_basis(const std::string& name, const SpaceParams& params) {
    if (params.k < 0 || params.l < 0) throw InputError("space_basis: negative degree");
    SpaceBasis b = standard_space(name, params.k, params.l);
    return transport(b, params.frame);
}

std::vector<std::string> space_names() {
    return {"P_S", "P_T", "P_M", "P_K", "P_vec", "P", "P2_S", "P2_vec", "P2", "RT", "RT2", "C", "C_plus",
            "hess_P", "sym_T_cross_x", "S_cross_x", "dev_grad_P", "C2", "C2_plus", "Sigma", "Sigma2"};
}

}  // namespace ddlab
