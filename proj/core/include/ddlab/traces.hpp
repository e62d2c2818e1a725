#pragma once

#include <string>
#include <vector>

#include "ddlab/float_poly.hpp"
#include "ddlab/simplex.hpp"
#include "ddlab/tensor.hpp"

namespace ddlab {

enum class TraceKind { divdiv_tr1, divdiv_tr2, symcurl_tr1, symcurl_tr1_perp, symcurl_tr2, edge_nn };
std::string to_string(TraceKind k);
TraceKind trace_kind_from_string(const std::string& name);
bool is_edge_trace(TraceKind k);

// Trace on a face or edge, as a polynomial in the entity chart.
//   divdiv_tr1        n^T tau n                          (1 x 1)
//   divdiv_tr2        2 div_F(tau n) + d_n(n^T tau n)     (1 x 1)
//   symcurl_tr1       Pi sym(tau x n) Pi                 (3 x 3)
//   symcurl_tr1_perp  n x sym(tau x n) x n               (3 x 3)
//   symcurl_tr2       (n^T tau) x n                      (3 x 1)
//   edge_nn           [n_i^T tau n_j], (n1, n2) of edge_frame   (2 x 2)
// n is the unit global face normal times normal_sign.
struct TraceValue {
    TraceKind kind = TraceKind::divdiv_tr1;
    int entity = 0;
    FloatPolyMatrix value;
    BigFloat max_abs() const { return value.max_abs(); }
};

// Throws InputError on a class mismatch (S for divdiv and edge_nn traces,
// T for symcurl traces) or a bad entity index.
TraceValue trace(const PolyMatrix& tau, const Tet& t, int entity, TraceKind kind, int normal_sign = 1);

// lhs and rhs are the two sides (integrals, or the largest coefficient for
// pointwise relations); residual is the absolute defect and scale the
// largest term, so a check passes when residual <= tol * scale.
struct IdentityResidual {
    std::string name;
    std::string entity;
    BigFloat lhs, rhs, residual, scale;
    BigFloat relative() const;
    bool pass(const BigFloat& tol) const { return residual <= tol * scale; }
};

// (divdiv tau, v)_K against the four boundary/volume terms.
IdentityResidual green_residual_3d(const PolyMatrix& tau, const Poly& v, const Tet& t);
// 2D version with vertex terms sign_{e,delta} (tau n . t)(delta) v(delta).
IdentityResidual green_residual_2d(const PolyMatrix& tau, const Poly& v, const Triangle& t);
// (sym curl tau, sigma)_K; throws InputError when sigma is not symmetric.
IdentityResidual green_residual_symcurl(const PolyMatrix& tau, const PolyMatrix& sigma, const Tet& t);

// Pointwise trace relations for tau in T, one entry per face (trace1,
// trace2_rotrot, trace2_divdiv) and per face/edge pair (edgedofprop1,
// edgedofprop2). Residuals compare chart coefficients.
std::vector<IdentityResidual> trace_relation_checks(const PolyMatrix& tau, const Tet& t);
// d_t(t^T tau n) + n^T div tau = d_t(t^T d_t v) on every edge, tau = sym curl v,
// t = unit edge tangent, n = perp(t).
std::vector<IdentityResidual> trace_relation_checks_2d(const PolyMatrix& v, const Triangle& t);

}  // namespace ddlab
