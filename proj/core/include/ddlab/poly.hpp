#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ddlab/rational.hpp"

namespace ddlab {

// Exponent tuple; unused trailing slots stay zero.
struct MultiIndex {
    std::array<std::uint8_t, 3> e{};

    MultiIndex() = default;
    MultiIndex(int a, int b = 0, int c = 0);
    int degree() const { return e[0] + e[1] + e[2]; }
    int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e != b.e; }
    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
};

// Graded-lex: lower total degree first; within a degree, larger x1 exponent
// first, then larger x2 exponent.
struct GradedLex {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// All exponent tuples of exact total degree m (resp. up to m) in graded-lex order.
std::vector<MultiIndex> monomials_of_degree(int arity, int m);
std::vector<MultiIndex> monomials_up_to(int arity, int m);
std::size_t monomial_count(int arity, int m);  // C(m + arity, arity)

class Poly {
public:
    using Terms = std::map<MultiIndex, Rat, GradedLex>;

    Poly() = default;
    explicit Poly(int arity);
    static Poly constant(int arity, const Rat& c);
    static Poly variable(int arity, int axis);
    static Poly monomial(int arity, const MultiIndex& a, const Rat& c = 1);
    // c0 + sum_i c[i] x_i
    static Poly affine(const Rat& c0, const RatVec& c);

    int arity() const { return arity_; }
    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    Rat coeff(const MultiIndex& a) const;

    void add_term(const MultiIndex& a, const Rat& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rat& s);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rat(-1); }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative(int axis) const;
    Rat evaluate(const RatVec& point) const;
    Poly homogeneous_component(int m) const;
    // x . grad p
    Poly euler() const;

private:
    int arity_ = 3;
    Terms terms_;
};

// Human-readable form, e.g. "3/2*x1^2*x3 - x2 + 1".
std::string to_string(const Poly& p);

Poly pow(const Poly& p, int n);
Poly lift_arity(const Poly& p, int arity);

// Composition p(images[0], ..., images[arity-1]); all images share an arity.
Poly substitute(const Poly& p, const std::vector<Poly>& images);

// Affine parameterization y -> origin + sum_j y_j directions[j] of an
// entity of dimension directions.size() inside R^{origin.size()}.
struct AffineChart {
    RatVec origin;
    std::vector<RatVec> directions;

    int dim() const { return static_cast<int>(directions.size()); }
    int ambient() const { return static_cast<int>(origin.size()); }
    RatVec point(const RatVec& y) const;
    // Affine functions of the ambient variables whose values on the entity
    // are the chart parameters (least-squares inverse of the chart).
    std::vector<Poly> parameter_functions() const;
    // Squared measure scale: det(D^T D).
    Rat gram_determinant() const;
};

// Restriction to a chart of dimension >= 1. For dimension 0 use evaluate().
Poly restrict(const Poly& p, const AffineChart& chart);

// Restriction with a per-monomial cache; not safe for concurrent use.
class CachedRestrictor {
public:
    explicit CachedRestrictor(AffineChart chart);
    const AffineChart& chart() const { return chart_; }
    Poly operator()(const Poly& p) const;
    const Poly& monomial(const MultiIndex& a) const;

private:
    AffineChart chart_;
    std::vector<Poly> linear_;
    mutable std::map<MultiIndex, Poly, GradedLex> cache_;
};

// Integral over the reference simplex {y_i >= 0, sum y_i <= 1} of dimension p.arity().
Rat integrate_reference(const Poly& p);
// Moment of a single monomial over the reference simplex of dimension d.
Rat reference_moment(int d, const MultiIndex& a);

// Integral over the simplex spanned by `vertices` (points of R^{p.arity()}).
// Lower-dimensional simplices are allowed when their measure is rational.
Rat integrate_simplex(const Poly& p, const std::vector<RatVec>& vertices);

// Exact square root when q is a perfect square of a rational.
bool rational_sqrt(const Rat& q, Rat& root);

}  // namespace ddlab
