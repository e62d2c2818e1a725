#include "ddlab/poly.hpp"

#include <algorithm>

#include "ddlab/errors.hpp"

namespace ddlab {

MultiIndex::MultiIndex(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0 || a > 255 || b > 255 || c > 255) throw InputError("exponent out of range");
    e = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)};
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    return MultiIndex(a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2]);
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e > b.e;
}

std::vector<MultiIndex> monomials_of_degree(int arity, int m) {
    std::vector<MultiIndex> out;
    if (m < 0) return out;
    switch (arity) {
        case 1:
            out.emplace_back(m);
            break;
        case 2:
            for (int a = m; a >= 0; --a) out.emplace_back(a, m - a);
            break;
        case 3:
            for (int a = m; a >= 0; --a)
                for (int b = m - a; b >= 0; --b) out.emplace_back(a, b, m - a - b);
            break;
        default:
            throw InputError("arity must be 1, 2 or 3");
    }
    return out;
}

std::vector<MultiIndex> monomials_up_to(int arity, int m) {
    std::vector<MultiIndex> out;
    for (int d = 0; d <= m; ++d) {
        auto part = monomials_of_degree(arity, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::size_t monomial_count(int arity, int m) {
    if (m < 0) return 0;
    std::size_t num = 1, den = 1;
    for (int i = 1; i <= arity; ++i) {
        num *= static_cast<std::size_t>(m + i);
        den *= static_cast<std::size_t>(i);
    }
    return num / den;
}

Poly::Poly(int arity) : arity_(arity) {
    if (arity < 1 || arity > 3) throw InputError("arity must be 1, 2 or 3");
}

Poly Poly::constant(int arity, const Rat& c) {
    Poly p(arity);
    p.add_term(MultiIndex(), c);
    return p;
}

Poly Poly::variable(int arity, int axis) {
    if (axis < 0 || axis >= arity) throw InputError("variable index out of range");
    MultiIndex a;
    a.e[static_cast<std::size_t>(axis)] = 1;
    return monomial(arity, a);
}

Poly Poly::monomial(int arity, const MultiIndex& a, const Rat& c) {
    Poly p(arity);
    for (int i = arity; i < 3; ++i)
        if (a[i] != 0) throw InputError("monomial uses a variable beyond the arity");
    p.add_term(a, c);
    return p;
}

Poly Poly::affine(const Rat& c0, const RatVec& c) {
    Poly p(static_cast<int>(c.size()));
    p.add_term(MultiIndex(), c0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        MultiIndex a;
        a.e[i] = 1;
        p.add_term(a, c[i]);
    }
    return p;
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

Rat Poly::coeff(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const MultiIndex& a, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.arity_ != arity_) throw InputError("polynomial arity mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.arity_ != arity_) throw InputError("polynomial arity mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
}

Poly& Poly::operator*=(const Rat& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.arity_ != b.arity_) throw InputError("polynomial arity mismatch");
    Poly r(a.arity_);
    Rat t;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            mpq_mul(t.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            r.add_term(ma + mb, t);
        }
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

bool operator==(const Poly& a, const Poly& b) { return a.arity_ == b.arity_ && a.terms_ == b.terms_; }

Poly Poly::derivative(int axis) const {
    if (axis < 0 || axis >= arity_) throw InputError("derivative axis out of range");
    Poly r(arity_);
    for (const auto& [a, c] : terms_) {
        int k = a[axis];
        if (k == 0) continue;
        MultiIndex b = a;
        b.e[static_cast<std::size_t>(axis)] = static_cast<std::uint8_t>(k - 1);
        r.add_term(b, c * k);
    }
    return r;
}

Rat Poly::evaluate(const RatVec& point) const {
    if (static_cast<int>(point.size()) != arity_) throw InputError("evaluation point has wrong dimension");
    Rat s = 0;
    for (const auto& [a, c] : terms_) {
        Rat m = c;
        for (int i = 0; i < arity_; ++i)
            for (int k = 0; k < a[i]; ++k) m *= point[static_cast<std::size_t>(i)];
        s += m;
    }
    return s;
}

Poly Poly::homogeneous_component(int m) const {
    Poly r(arity_);
    for (const auto& [a, c] : terms_)
        if (a.degree() == m) r.add_term(a, c);
    return r;
}

Poly Poly::euler() const {
    Poly r(arity_);
    for (const auto& [a, c] : terms_) r.add_term(a, c * a.degree());
    return r;
}

Poly pow(const Poly& p, int n) {
    Poly r = Poly::constant(p.arity(), 1);
    for (int i = 0; i < n; ++i) r = r * p;
    return r;
}

Poly lift_arity(const Poly& p, int arity) {
    if (arity < p.arity()) throw InputError("lift_arity: cannot lower arity");
    Poly r(arity);
    for (const auto& [a, c] : p.terms()) r.add_term(a, c);
    return r;
}

Poly substitute(const Poly& p, const std::vector<Poly>& images) {
    if (static_cast<int>(images.size()) != p.arity()) throw InputError("substitute: wrong number of images");
    const int out_arity = images.empty() ? 1 : images[0].arity();
    std::vector<std::vector<Poly>> powers(images.size());
    Poly r(out_arity);
    for (const auto& [a, c] : p.terms()) {
        Poly m = Poly::constant(out_arity, c);
        for (std::size_t i = 0; i < images.size(); ++i) {
            int k = a[static_cast<int>(i)];
            if (k == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(Poly::constant(out_arity, 1));
            while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * images[i]);
            m = m * pw[static_cast<std::size_t>(k)];
        }
        r += m;
    }
    return r;
}

RatVec AffineChart::point(const RatVec& y) const {
    RatVec x = origin;
    for (std::size_t j = 0; j < directions.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[j] * directions[j][i];
    return x;
}

namespace {

std::vector<RatVec> gram(const AffineChart& c) {
    const std::size_t m = c.directions.size();
    std::vector<RatVec> g(m, RatVec(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t i = 0; i < c.origin.size(); ++i) g[a][b] += c.directions[a][i] * c.directions[b][i];
    return g;
}

Rat det_small(std::vector<RatVec> a) {
    const std::size_t n = a.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rat f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

std::vector<RatVec> inverse_small(std::vector<RatVec> a) {
    const std::size_t n = a.size();
    std::vector<RatVec> inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw InputError("degenerate chart");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rat s = 1 / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace

std::vector<Poly> AffineChart::parameter_functions() const {
    const std::size_t m = directions.size(), n = origin.size();
    std::vector<RatVec> ginv = inverse_small(gram(*this));
    std::vector<Poly> out;
    for (std::size_t a = 0; a < m; ++a) {
        // y_a = sum_b ginv[a][b] d_b . (x - origin)
        RatVec w(n);
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t i = 0; i < n; ++i) w[i] += ginv[a][b] * directions[b][i];
        Rat c0 = 0;
        for (std::size_t i = 0; i < n; ++i) c0 -= w[i] * origin[i];
        out.push_back(Poly::affine(c0, w));
    }
    return out;
}

Rat AffineChart::gram_determinant() const { return det_small(gram(*this)); }

namespace {

std::vector<Poly> chart_images(const AffineChart& chart) {
    const int m = chart.dim();
    if (m < 1) throw InputError("restrict: chart must have dimension >= 1");
    std::vector<Poly> images;
    for (std::size_t i = 0; i < chart.origin.size(); ++i) {
        RatVec c(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(j)] = chart.directions[static_cast<std::size_t>(j)][i];
        images.push_back(Poly::affine(chart.origin[i], c));
    }
    return images;
}

}  // namespace

Poly restrict(const Poly& p, const AffineChart& chart) {
    if (p.arity() != chart.ambient()) throw InputError("restrict: chart lives in a different dimension");
    return substitute(p, chart_images(chart));
}

CachedRestrictor::CachedRestrictor(AffineChart chart) : chart_(std::move(chart)), linear_(chart_images(chart_)) {}

const Poly& CachedRestrictor::monomial(const MultiIndex& a) const {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    Poly value;
    if (a.degree() == 0) {
        value = Poly::constant(chart_.dim(), 1);
    } else {
        int i = 0;
        while (a[i] == 0) ++i;
        MultiIndex b = a;
        b.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(a[i] - 1);
        value = monomial(b) * linear_[static_cast<std::size_t>(i)];
    }
    return cache_.emplace(a, std::move(value)).first->second;
}

Poly CachedRestrictor::operator()(const Poly& p) const {
    if (p.arity() != chart_.ambient()) throw InputError("restrict: chart lives in a different dimension");
    Poly r(chart_.dim());
    for (const auto& [a, c] : p.terms()) {
        const Poly& m = monomial(a);
        for (const auto& [b, d] : m.terms()) r.add_term(b, c * d);
    }
    return r;
}

namespace {

BigInt factorial(int n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

}  // namespace

Rat reference_moment(int d, const MultiIndex& a) {
    BigInt num = 1;
    for (int i = 0; i < d; ++i) num *= factorial(a[i]);
    Rat r(num, factorial(a.degree() + d));
    r.canonicalize();
    return r;
}

Rat integrate_reference(const Poly& p) {
    Rat s = 0;
    for (const auto& [a, c] : p.terms()) s += c * reference_moment(p.arity(), a);
    return s;
}

bool rational_sqrt(const Rat& q, Rat& root) {
    if (q < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
    BigInt n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    root = Rat(n, d);
    root.canonicalize();
    return true;
}

Rat integrate_simplex(const Poly& p, const std::vector<RatVec>& vertices) {
    if (vertices.empty()) throw InputError("integrate_simplex: no vertices");
    AffineChart chart;
    chart.origin = vertices[0];
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i].size() != vertices[0].size()) throw InputError("integrate_simplex: mixed dimensions");
        RatVec d(vertices[0].size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = vertices[i][k] - vertices[0][k];
        chart.directions.push_back(std::move(d));
    }
    if (chart.ambient() != p.arity()) throw InputError("integrate_simplex: polynomial arity differs from embedding");
    if (chart.dim() == 0) return p.evaluate(vertices[0]);
    Rat g = chart.gram_determinant();
    if (g == 0) throw InputError("integrate_simplex: degenerate simplex");
    Rat jac;
    if (!rational_sqrt(g, jac)) throw InputError("integrate_simplex: simplex measure is irrational");
    return jac * integrate_reference(restrict(p, chart));
}

}  // namespace ddlab

namespace ddlab {

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // Highest degree first reads more naturally.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const MultiIndex& a = it->first;
        Rat c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (int i = 0; i < p.arity(); ++i) {
            if (a[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (a[i] > 1) mono += "^" + std::to_string(a[i]);
        }
        if (mono.empty()) {
            out += to_string(c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += to_string(c) + "*" + mono;
        }
    }
    return out;
}

}  // namespace ddlab
