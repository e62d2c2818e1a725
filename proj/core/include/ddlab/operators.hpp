#pragma once

#include <string>
#include <vector>

#include "ddlab/exact_matrix.hpp"
#include "ddlab/spaces.hpp"
#include "ddlab/tensor.hpp"

namespace ddlab {

enum class OpName {
    identity,
    grad,
    curl,
    div,
    rot,
    hess,
    dev_grad,
    sym_curl,
    div_div,
    grad_F,
    curl_F,
    div_F,
    rot_F,
    hess_F,
    sym_curl_F,
    div_F_div_F,
    koszul_x,
    koszul_cross_x,
    koszul_sym_cross_x,
    koszul_xxT,
    koszul_dot_x,
    koszul_dev_xT,
    koszul_xperp,
    koszul_sym_xperp,
    koszul_xTx,
    pi_RT_3d,
    pi_RT_2d,
    pi_1,
};

std::string to_string(OpName op);
OpName op_from_string(const std::string& name);
bool is_koszul(OpName op);
bool is_surface(OpName op);

// Surface operators on 3D polynomials need the face normal N (any rational
// multiple of the unit normal). On 2D polynomials they act in the plane.
struct OperatorSpec {
    OpName name = OpName::identity;
    RatVec origin;        // Koszul and projection operators; empty means 0
    Vec3 normal{};        // surface operators on 3D input
    bool has_normal = false;

    static OperatorSpec of(OpName n) { return OperatorSpec{n, {}, {}, false}; }
    static OperatorSpec koszul(OpName n, RatVec origin) { return OperatorSpec{n, std::move(origin), {}, false}; }
    static OperatorSpec surface(OpName n, const Vec3& normal) { return OperatorSpec{n, {}, normal, true}; }
};

// value * sqrt(scale_sq) is the operator output; only surface operators with
// a non-unit normal produce scale_sq != 1.
struct Scaled {
    PolyMatrix value;
    Rat scale_sq = 1;
};

Scaled apply_scaled(const OperatorSpec& spec, const PolyMatrix& f);
// Throws InputError when the result carries an irrational normalization.
PolyMatrix apply(const OperatorSpec& spec, const PolyMatrix& f);

// Plain differential operators, shape rules as in the row-wise conventions:
// grad v = (d_j v_i), curl and div act on the rows of a matrix.
PolyMatrix grad(const PolyMatrix& f);
PolyMatrix curl(const PolyMatrix& f);
PolyMatrix div(const PolyMatrix& f);
PolyMatrix rot(const PolyMatrix& f);
PolyMatrix hess(const PolyMatrix& f);
PolyMatrix divdiv(const PolyMatrix& f);
// Directional derivative sum_i d_i df/dx_i.
PolyMatrix directional(const PolyMatrix& f, const RatVec& d);

struct OpMatrix {
    OperatorSpec spec;
    const SpaceBasis* domain = nullptr;
    const SpaceBasis* codomain = nullptr;
    ExactMatrix matrix;  // |codomain| x |domain|
};

// Throws InputError naming the offending domain element when an image
// leaves the codomain span.
OpMatrix operator_matrix(const OperatorSpec& spec, const SpaceBasis& domain, const SpaceBasis& codomain);

// Images of every domain element, no codomain needed.
std::vector<PolyMatrix> apply_all(const OperatorSpec& spec, const SpaceBasis& domain);

}  // namespace ddlab
