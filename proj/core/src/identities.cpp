#include "ddlab/identities.hpp"

#include <functional>
#include <random>

#include "ddlab/errors.hpp"
#include "ddlab/float_poly.hpp"
#include "ddlab/operators.hpp"
#include "ddlab/simplex.hpp"
#include "ddlab/spaces.hpp"

namespace ddlab {

namespace {

using Rng = std::mt19937_64;

Rat random_rat(Rng& g) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Rat q(num(g), den(g));
    q.canonicalize();
    return q;
}

Poly random_poly(Rng& g, int max_degree, bool homogeneous = false) {
    std::uniform_int_distribution<int> deg(homogeneous ? 0 : 1, max_degree), coin(0, 1);
    int d = deg(g);
    Poly p(3);
    auto ms = homogeneous ? monomials_of_degree(3, d) : monomials_up_to(3, d);
    for (const MultiIndex& a : ms)
        if (coin(g)) p += Poly::monomial(3, a, random_rat(g));
    if (p.is_zero()) p += Poly::monomial(3, ms.back(), 1);
    return p;
}

PolyMatrix random_matrix(Rng& g, int rows, int cols, int max_degree) {
    PolyMatrix m(rows, cols, 3);
    for (int i = 0; i < rows * cols; ++i) m[i] = random_poly(g, max_degree);
    return m;
}

Vec3 random_direction(Rng& g) {
    Vec3 n{};
    while (is_zero(n))
        for (Rat& c : n) c = random_rat(g);
    return n;
}

PolyMatrix gradient(const Poly& p) {
    return PolyMatrix::vector({p.derivative(0), p.derivative(1), p.derivative(2)});
}

BigFloat mismatch(const PolyMatrix& a, const PolyMatrix& b) { return a == b ? BigFloat(0) : BigFloat(1); }

BigFloat relative(const FloatPolyMatrix& a, const FloatPolyMatrix& b) {
    BigFloat s = max(a.max_abs(), b.max_abs());
    BigFloat d = (a - b).max_abs();
    return s.is_zero() ? d : d / s;
}

FloatPolyMatrix column(std::vector<FloatPoly> v) {
    FloatPolyMatrix m(static_cast<int>(v.size()), 1, 3);
    for (std::size_t i = 0; i < v.size(); ++i) m[static_cast<int>(i)] = std::move(v[i]);
    return m;
}

FloatPoly n_dot(const FloatVec& n, const FloatPolyMatrix& v) {
    FloatPoly s(3);
    for (int i = 0; i < 3; ++i) s += v[i] * n[static_cast<std::size_t>(i)];
    return s;
}

using Sample = std::function<BigFloat(Rng&)>;

struct Entry {
    const char* name;
    bool exact;
    Sample sample;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all = {
        {"skwcurl", true,
         [](Rng& g) {
             PolyMatrix a = random_matrix(g, 3, 3, 4);
             PolyMatrix rhs = mskw(div(transpose(a)) - gradient(trace(a))) * Rat(1, 2);
             return mismatch(skw(curl(a)), rhs);
         }},
        {"divmskw", true,
         [](Rng& g) {
             PolyMatrix u = random_matrix(g, 3, 1, 4);
             return mismatch(div(mskw(u)), -curl(u));
         }},
        {"curlgrad", true,
         [](Rng& g) {
             Poly u = random_poly(g, 4);
             return mismatch(curl(u * PolyMatrix::identity(3, 3)), -mskw(gradient(u)));
         }},
        {"trcross", true,
         [](Rng& g) {
             PolyMatrix tau = random_matrix(g, 3, 3, 3);
             PolyMatrix x = PolyMatrix::position(RatVec(3, Rat(0)));
             Poly lhs = trace(cross_right(tau, x));
             Poly rhs = inner(x, vskw(tau)) * Rat(-2);
             return mismatch(PolyMatrix::scalar(lhs), PolyMatrix::scalar(rhs));
         }},
        {"divdivskw0", true,
         [](Rng& g) {
             PolyMatrix v = random_matrix(g, 3, 1, 5);
             return mismatch(divdiv(mskw(v)), PolyMatrix(1, 1, 3));
         }},
        {"tangentialtrace", false,
         [](Rng& g) {
             FloatPolyMatrix v = FloatPolyMatrix::from(random_matrix(g, 3, 1, 4));
             FloatVec n = unit(to_ratvec(random_direction(g)));
             FloatPolyMatrix lhs = cross_left(n, curl(v));
             FloatPoly nv = n_dot(n, v);
             FloatPolyMatrix rhs = column({nv.derivative(0), nv.derivative(1), nv.derivative(2)}) - directional(v, n);
             return relative(lhs, rhs);
         }},
        {"rotFdivF", false,
         [](Rng& g) {
             FloatPolyMatrix v = FloatPolyMatrix::from(random_matrix(g, 3, 1, 4));
             FloatVec n = unit(to_ratvec(random_direction(g)));
             FloatPoly rot = n_dot(n, curl(v));
             FloatPolyMatrix w = cross_left(n, v);
             FloatPoly div_f = div(w)[0] - n_dot(n, directional(w, n));
             return relative(column({rot}), column({div_f * BigFloat(-1)}));
         }},
        {"piRTprop", true,
         [](Rng& g) {
             RatVec origin{random_rat(g), random_rat(g), random_rat(g)};
             OperatorSpec pi = OperatorSpec::koszul(OpName::pi_RT_3d, origin);
             PolyMatrix v = random_matrix(g, 3, 1, 4);
             PolyMatrix p = apply(pi, v);
             PolyMatrix x = PolyMatrix::position(RatVec(3, Rat(0)));
             PolyMatrix rt = x * random_rat(g);
             for (int i = 0; i < 3; ++i) rt[i] += Poly::constant(3, random_rat(g));
             bool ok = apply(pi, p) == p && apply(pi, rt) == rt;
             return ok ? BigFloat(0) : BigFloat(1);
         }},
        {"homogeneouspolyprop", true,
         [](Rng& g) {
             Poly q = random_poly(g, 6, true);
             int k = q.degree();
             Poly lhs(3);
             for (int i = 0; i < 3; ++i) lhs += Poly::variable(3, i) * q.derivative(i);
             return mismatch(PolyMatrix::scalar(lhs), PolyMatrix::scalar(q * Rat(k)));
         }},
    };
    return all;
}

}  // namespace

std::vector<std::string> identity_names() {
    std::vector<std::string> out;
    for (const Entry& e : entries()) out.emplace_back(e.name);
    return out;
}

IdentityCheck check_identity(const std::string& name, std::size_t samples, std::uint64_t seed) {
    for (const Entry& e : entries()) {
        if (name != e.name) continue;
        Rng g(seed);
        IdentityCheck out;
        out.name = name;
        out.samples = samples;
        out.exact = e.exact;
        out.max_residual = BigFloat(0);
        for (std::size_t s = 0; s < samples; ++s) out.max_residual = max(out.max_residual, e.sample(g));
        out.pass = e.exact ? out.max_residual.is_zero() : out.max_residual < pow10(-60);
        return out;
    }
    throw InputError("unknown identity: " + name);
}

std::vector<IdentityCheck> identity_suite(std::size_t samples, std::uint64_t seed) {
    std::vector<IdentityCheck> out;
    for (const std::string& n : identity_names()) out.push_back(check_identity(n, samples, seed));
    return out;
}

}  // namespace ddlab
