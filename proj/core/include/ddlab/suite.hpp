#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ddlab/bigfloat.hpp"
#include "ddlab/dofs.hpp"
#include "ddlab/meshfem.hpp"

namespace ddlab {

// One verification outcome, the unit of every CLI report.
using FieldValue = std::variant<bool, long long, double, std::string>;

struct Field {
    std::string key;
    FieldValue value;
};

struct CheckResult {
    std::string tag;
    std::vector<Field> params;
    bool pass = false;
    std::vector<Field> metrics;
    std::string notes;

    const FieldValue* metric(const std::string& key) const;
    long long metric_int(const std::string& key) const;  // throws InternalError when absent
};

Field field(std::string key, bool v);
Field field(std::string key, int v);
Field field(std::string key, long v);
Field field(std::string key, long long v);
Field field(std::string key, std::size_t v);
Field field(std::string key, double v);
Field field(std::string key, const BigFloat& v);
Field field(std::string key, std::string v);
Field field(std::string key, const char* v);

// Random fields with small rational coefficients; deterministic in the seed.
PolyMatrix random_tensor(const TensorClass& cls, int dim, int degree, std::uint64_t seed);
Poly random_scalar(int dim, int degree, std::uint64_t seed);

// Seed 0 selects the reference cell, otherwise a seeded random rational cell.
Tet seeded_tet(std::uint64_t seed);
Triangle seeded_triangle(std::uint64_t seed);

// Exactness of a builtin polynomial complex at degree k.
CheckResult run_complex(const std::string& name, int k);

// Names: sym_curl_plus_xxT (P_k(S)), hess_plus_sym_cross_x (P_k(S)),
// S_cross_x_plus_dev_grad (P_{k+1}(T)), kernel_divdiv (exact nullity of
// div div on P_k(S) against the closed form).
std::vector<std::string> decomposition_names();
CheckResult run_decomposition(const std::string& name, int k);

// cell: "reference" or "random" (seeded).
CheckResult run_unisolvence(const std::string& element, int l, int k, const std::string& cell, std::uint64_t seed);
CheckResult run_dual_basis(const std::string& element, int l, int k, const std::string& cell, std::uint64_t seed);

// Bubble space on a seeded tet: dimension, independence, trace-freeness,
// vanishing on edges, both sym curl traces on faces (< 1e-55 relative).
CheckResult run_bubble_space(int l, std::uint64_t seed);
// Bubble complex at (l, k); dim 2 selects the triangle analog.
CheckResult run_bubble_complex(int dim, int l, int k, std::uint64_t seed);

// Green identities: divdiv3d, divdiv2d, symcurl. One seeded cell, `samples`
// random pairs of degree k; pass iff every relative residual < 1e-50.
std::vector<std::string> green_names();
CheckResult run_green(const std::string& name, int k, std::uint64_t seed, int samples);

// Trace relations: 3d (face and edge relations for tau in T), 2d.
std::vector<std::string> trace_check_names();
CheckResult run_trace(const std::string& name, int k, std::uint64_t seed, int samples);

// Builtin name or path to a mesh file.
Mesh resolve_mesh(const std::string& name_or_path);
CheckResult run_mesh(const Mesh& mesh, int l, int k, std::uint64_t seed);

// V_h, Sigma_h_T, Sigma_h_S, Q_h: assembled count against the closed form.
std::vector<std::string> global_space_names();
CheckResult run_dims(const std::string& space, const Mesh& mesh, int l, int k);

std::vector<CheckResult> run_identities(int samples, std::uint64_t seed);

}  // namespace ddlab
