#include "ddlab/operators.hpp"

#include <array>

#include "ddlab/errors.hpp"

namespace ddlab {

namespace {

struct OpEntry {
    OpName op;
    const char* name;
};

constexpr std::array<OpEntry, 28> kOps{{
    {OpName::identity, "identity"},
    {OpName::grad, "grad"},
    {OpName::curl, "curl"},
    {OpName::div, "div"},
    {OpName::rot, "rot"},
    {OpName::hess, "hess"},
    {OpName::dev_grad, "dev_grad"},
    {OpName::sym_curl, "sym_curl"},
    {OpName::div_div, "div_div"},
    {OpName::grad_F, "grad_F"},
    {OpName::curl_F, "curl_F"},
    {OpName::div_F, "div_F"},
    {OpName::rot_F, "rot_F"},
    {OpName::hess_F, "hess_F"},
    {OpName::sym_curl_F, "sym_curl_F"},
    {OpName::div_F_div_F, "div_F_div_F"},
    {OpName::koszul_x, "koszul_x"},
    {OpName::koszul_cross_x, "koszul_cross_x"},
    {OpName::koszul_sym_cross_x, "koszul_sym_cross_x"},
    {OpName::koszul_xxT, "koszul_xxT"},
    {OpName::koszul_dot_x, "koszul_dot_x"},
    {OpName::koszul_dev_xT, "koszul_dev_xT"},
    {OpName::koszul_xperp, "koszul_xperp"},
    {OpName::koszul_sym_xperp, "koszul_sym_xperp"},
    {OpName::koszul_xTx, "koszul_xTx"},
    {OpName::pi_RT_3d, "pi_RT_3d"},
    {OpName::pi_RT_2d, "pi_RT_2d"},
    {OpName::pi_1, "pi_1"},
}};

bool is_scalar(const PolyMatrix& f) { return f.rows() == 1 && f.cols() == 1; }

PolyMatrix row(const PolyMatrix& f, int i) {
    PolyMatrix r(f.cols(), 1, f.arity());
    for (int j = 0; j < f.cols(); ++j) r[j] = f(i, j);
    return r;
}

// Applies a vector -> vector/scalar map to each row of a matrix.
template <class F>
PolyMatrix rowwise(const PolyMatrix& f, F&& op) {
    std::vector<PolyMatrix> rows;
    for (int i = 0; i < f.rows(); ++i) rows.push_back(op(row(f, i)));
    int c = rows[0].rows();
    PolyMatrix out(f.rows(), c, f.arity());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < c; ++j) out(i, j) = rows[static_cast<std::size_t>(i)][j];
    return out;
}

PolyMatrix curl_vector3(const PolyMatrix& v) {
    return PolyMatrix::vector({v[2].derivative(1) - v[1].derivative(2), v[0].derivative(2) - v[2].derivative(0),
                               v[1].derivative(0) - v[0].derivative(1)});
}

PolyMatrix div_vector(const PolyMatrix& v) {
    Poly s(v.arity());
    for (int i = 0; i < v.rows(); ++i) s += v[i].derivative(i);
    return PolyMatrix::scalar(s);
}

RatVec origin_of(const OperatorSpec& spec, int arity) {
    if (spec.origin.empty()) return RatVec(static_cast<std::size_t>(arity), Rat(0));
    if (static_cast<int>(spec.origin.size()) != arity) throw InputError("Koszul origin has the wrong dimension");
    return spec.origin;
}

Vec3 normal_of(const OperatorSpec& spec) {
    if (!spec.has_normal) throw InputError(to_string(spec.name) + " on 3D input requires a face normal");
    if (is_zero(spec.normal)) throw InputError("face normal is zero");
    return spec.normal;
}

PolyMatrix const_vector(const Vec3& n, int arity) {
    return PolyMatrix::vector({Poly::constant(arity, n[0]), Poly::constant(arity, n[1]), Poly::constant(arity, n[2])});
}

RatVec to_ratvec(const Vec3& v) { return {v[0], v[1], v[2]}; }

}  // namespace

std::string to_string(OpName op) {
    for (const auto& e : kOps)
        if (e.op == op) return e.name;
    return "?";
}

OpName op_from_string(const std::string& name) {
    for (const auto& e : kOps)
        if (name == e.name) return e.op;
    throw InputError("unknown operator: " + name);
}

bool is_koszul(OpName op) {
    switch (op) {
        case OpName::koszul_x:
        case OpName::koszul_cross_x:
        case OpName::koszul_sym_cross_x:
        case OpName::koszul_xxT:
        case OpName::koszul_dot_x:
        case OpName::koszul_dev_xT:
        case OpName::koszul_xperp:
        case OpName::koszul_sym_xperp:
        case OpName::koszul_xTx:
        case OpName::pi_RT_3d:
        case OpName::pi_RT_2d:
        case OpName::pi_1: return true;
        default: return false;
    }
}

bool is_surface(OpName op) {
    switch (op) {
        case OpName::grad_F:
        case OpName::curl_F:
        case OpName::div_F:
        case OpName::rot_F:
        case OpName::hess_F:
        case OpName::sym_curl_F:
        case OpName::div_F_div_F: return true;
        default: return false;
    }
}

PolyMatrix grad(const PolyMatrix& f) {
    int d = f.arity();
    if (is_scalar(f)) {
        PolyMatrix g(d, 1, d);
        for (int j = 0; j < d; ++j) g[j] = f[0].derivative(j);
        return g;
    }
    if (!f.is_vector()) throw InputError("grad: expected a scalar or a vector");
    PolyMatrix g(f.rows(), d, d);
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < d; ++j) g(i, j) = f[i].derivative(j);
    return g;
}

PolyMatrix curl(const PolyMatrix& f) {
    if (f.arity() == 3) {
        if (f.is_vector() && f.rows() == 3) return curl_vector3(f);
        if (f.cols() == 3) return rowwise(f, curl_vector3);
        throw InputError("curl: expected a 3-vector or a matrix with 3 columns");
    }
    if (f.arity() == 2) {
        // Scalar u -> (d2 u, -d1 u); vectors act componentwise as rows.
        if (is_scalar(f)) return PolyMatrix::vector({f[0].derivative(1), -f[0].derivative(0)});
        if (f.is_vector()) {
            PolyMatrix g(f.rows(), 2, 2);
            for (int i = 0; i < f.rows(); ++i) {
                g(i, 0) = f[i].derivative(1);
                g(i, 1) = -f[i].derivative(0);
            }
            return g;
        }
        throw InputError("curl: 2D input must be a scalar or a vector");
    }
    throw InputError("curl: arity must be 2 or 3");
}

PolyMatrix div(const PolyMatrix& f) {
    int d = f.arity();
    if (f.is_vector() && f.rows() == d) return div_vector(f);
    if (f.cols() == d) return rowwise(f, div_vector);
    throw InputError("div: row length must equal the space dimension");
}

PolyMatrix rot(const PolyMatrix& f) {
    if (f.arity() != 2) throw InputError("rot: 2D only");
    auto rot_vec = [](const PolyMatrix& v) { return PolyMatrix::scalar(v[1].derivative(0) - v[0].derivative(1)); };
    if (f.is_vector() && f.rows() == 2) return rot_vec(f);
    if (f.cols() == 2) return rowwise(f, rot_vec);
    throw InputError("rot: row length must be 2");
}

PolyMatrix hess(const PolyMatrix& f) {
    if (!is_scalar(f)) throw InputError("hess: expected a scalar");
    int d = f.arity();
    PolyMatrix h(d, d, d);
    for (int i = 0; i < d; ++i) {
        Poly di = f[0].derivative(i);
        for (int j = i; j < d; ++j) {
            h(i, j) = di.derivative(j);
            h(j, i) = h(i, j);
        }
    }
    return h;
}

PolyMatrix divdiv(const PolyMatrix& f) {
    if (!f.is_square() || f.rows() != f.arity()) throw InputError("divdiv: expected a d x d matrix");
    return div(div(f));
}

PolyMatrix directional(const PolyMatrix& f, const RatVec& d) {
    if (static_cast<int>(d.size()) != f.arity()) throw InputError("directional: direction has the wrong dimension");
    PolyMatrix out(f.rows(), f.cols(), f.arity());
    for (int i = 0; i < f.arity(); ++i)
        if (d[static_cast<std::size_t>(i)] != 0) out += d[static_cast<std::size_t>(i)] * f.derivative(i);
    return out;
}

namespace {

Scaled surface3(const OperatorSpec& spec, const PolyMatrix& f) {
    Vec3 n = normal_of(spec);
    Rat n2 = norm2(n);
    RatVec nv = to_ratvec(n);
    PolyMatrix N = const_vector(n, 3);
    auto div_f_vec = [&](const PolyMatrix& v) {
        // div v - N . d_N v / |N|^2
        PolyMatrix dn = directional(v, nv);
        return PolyMatrix::scalar(div_vector(v)[0] - inner(N, dn) * (1 / n2));
    };
    switch (spec.name) {
        case OpName::grad_F: {
            if (!is_scalar(f)) throw InputError("grad_F: expected a scalar");
            PolyMatrix g = grad(f);
            Poly dn = inner(N, g);
            return {g - dn * (1 / n2) * N, 1};
        }
        case OpName::curl_F: {
            if (!is_scalar(f)) throw InputError("curl_F: expected a scalar");
            return {cross_right(N, grad(f)), 1 / n2};
        }
        case OpName::div_F: {
            if (f.is_vector() && f.rows() == 3) return {div_f_vec(f), 1};
            if (f.cols() == 3) return {rowwise(f, div_f_vec), 1};
            throw InputError("div_F: expected rows of length 3");
        }
        case OpName::rot_F: {
            auto r = [&](const PolyMatrix& v) { return PolyMatrix::scalar(inner(N, curl_vector3(v))); };
            if (f.is_vector() && f.rows() == 3) return {r(f), 1 / n2};
            if (f.cols() == 3) return {rowwise(f, r), 1 / n2};
            throw InputError("rot_F: expected rows of length 3");
        }
        default: break;
    }
    throw InputError(to_string(spec.name) + " is only available on 2D face coordinates");
}

Scaled surface2(const OperatorSpec& spec, const PolyMatrix& f) {
    switch (spec.name) {
        case OpName::grad_F: return {grad(f), 1};
        case OpName::curl_F: return {curl(f), 1};
        case OpName::div_F: return {div(f), 1};
        case OpName::rot_F: return {rot(f), 1};
        case OpName::hess_F: return {hess(f), 1};
        case OpName::sym_curl_F: return {sym(curl(f)), 1};
        case OpName::div_F_div_F: return {divdiv(f), 1};
        default: break;
    }
    throw InputError("not a surface operator");
}

PolyMatrix koszul(const OperatorSpec& spec, const PolyMatrix& f) {
    int d = f.arity();
    RatVec c = origin_of(spec, d);
    PolyMatrix x = PolyMatrix::position(c);
    switch (spec.name) {
        case OpName::koszul_x:
            if (!is_scalar(f)) throw InputError("koszul_x: expected a scalar");
            return f[0] * x;
        case OpName::koszul_cross_x:
            if (d != 3) throw InputError("koszul_cross_x: 3D only");
            return cross_right(f, x);
        case OpName::koszul_sym_cross_x:
            if (d != 3) throw InputError("koszul_sym_cross_x: 3D only");
            return sym(cross_right(f, x));
        case OpName::koszul_xxT:
            if (!is_scalar(f)) throw InputError("koszul_xxT: expected a scalar");
            return f[0] * outer(x, x);
        case OpName::koszul_dot_x:
            if (f.is_vector()) return PolyMatrix::scalar(inner(f, x));
            return dot_right(f, x);
        case OpName::koszul_dev_xT:
            return dev(outer(f, x));
        case OpName::koszul_xperp: {
            if (d != 2) throw InputError("koszul_xperp: 2D only");
            PolyMatrix xp = perp(x);
            if (f.is_vector()) return PolyMatrix::scalar(inner(f, xp));
            return dot_right(f, xp);
        }
        case OpName::koszul_sym_xperp:
            if (d != 2) throw InputError("koszul_sym_xperp: 2D only");
            return sym(outer(perp(x), f));
        case OpName::koszul_xTx:
            return PolyMatrix::scalar(inner(x, dot_right(f, x)));
        case OpName::pi_RT_3d:
        case OpName::pi_RT_2d: {
            if (!f.is_vector() || f.rows() != d) throw InputError("pi_RT: expected a vector field");
            if ((spec.name == OpName::pi_RT_3d) != (d == 3)) throw InputError("pi_RT: dimension mismatch");
            ExactMatrix v0 = f.evaluate(c);
            Rat dv0 = div_vector(f)[0].evaluate(c);
            PolyMatrix out = (dv0 / d) * x;
            for (int i = 0; i < d; ++i) out[i] += Poly::constant(d, v0(static_cast<std::size_t>(i), 0));
            return out;
        }
        case OpName::pi_1: {
            if (!is_scalar(f)) throw InputError("pi_1: expected a scalar");
            Poly out = Poly::constant(d, f[0].evaluate(c));
            for (int i = 0; i < d; ++i) out += f[0].derivative(i).evaluate(c) * x[i];
            return PolyMatrix::scalar(out);
        }
        default: break;
    }
    throw InputError("not a Koszul operator");
}

}  // namespace

Scaled apply_scaled(const OperatorSpec& spec, const PolyMatrix& f) {
    if (is_surface(spec.name)) {
        if (f.arity() == 3) return surface3(spec, f);
        if (f.arity() == 2) return surface2(spec, f);
        throw InputError("surface operators need 2D or 3D input");
    }
    if (is_koszul(spec.name)) return {koszul(spec, f), 1};
    switch (spec.name) {
        case OpName::identity: return {f, 1};
        case OpName::grad: return {grad(f), 1};
        case OpName::curl: return {curl(f), 1};
        case OpName::div: return {div(f), 1};
        case OpName::rot: return {rot(f), 1};
        case OpName::hess: return {hess(f), 1};
        case OpName::dev_grad: return {dev(grad(f)), 1};
        case OpName::sym_curl: return {sym(curl(f)), 1};
        case OpName::div_div: return {divdiv(f), 1};
        default: break;
    }
    throw InputError("unhandled operator " + to_string(spec.name));
}

PolyMatrix apply(const OperatorSpec& spec, const PolyMatrix& f) {
    Scaled s = apply_scaled(spec, f);
    if (s.scale_sq != 1)
        throw InputError(to_string(spec.name) + " carries a normalization factor; use apply_scaled");
    return s.value;
}

std::vector<PolyMatrix> apply_all(const OperatorSpec& spec, const SpaceBasis& domain) {
    std::vector<PolyMatrix> out;
    out.reserve(domain.size());
    for (const PolyMatrix& e : domain.elements) out.push_back(apply(spec, e));
    return out;
}

OpMatrix operator_matrix(const OperatorSpec& spec, const SpaceBasis& domain, const SpaceBasis& codomain) {
    OpMatrix m{spec, &domain, &codomain, ExactMatrix(codomain.size(), domain.size())};
    Expander ex(codomain);
    for (std::size_t j = 0; j < domain.size(); ++j) {
        PolyMatrix img = apply(spec, domain.elements[j]);
        if (img.rows() != codomain.rows || img.cols() != codomain.cols)
            throw InputError(to_string(spec.name) + ": image shape does not match " + codomain.name);
        auto c = ex.coordinates(img);
        if (!c)
            throw InputError(to_string(spec.name) + ": image of " + domain.name + " element " + std::to_string(j) +
                             " is not in " + codomain.name);
        for (std::size_t i = 0; i < codomain.size(); ++i) m.matrix(i, j) = (*c)[i];
    }
    return m;
}

}  // namespace ddlab
