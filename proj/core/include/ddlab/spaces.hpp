#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddlab/exact_matrix.hpp"
#include "ddlab/tensor.hpp"

namespace ddlab {

// Spaces are generated in local coordinates y and stored in physical ones,
// y = (x - origin) / scale. Koszul operators use x - origin.
struct Frame {
    RatVec origin;
    Rat scale = 1;

    static Frame standard(int dim);
    bool is_standard() const;
    friend bool operator==(const Frame& a, const Frame& b) {
        return a.origin == b.origin && a.scale == b.scale;
    }
};

struct SpaceBasis {
    std::string name;
    TensorClass cls;
    int arity = 3;
    int degree = 0;  // highest polynomial degree present
    int rows = 1;
    int cols = 1;
    Frame frame;
    std::vector<PolyMatrix> elements;

    std::size_t size() const { return elements.size(); }
};

// Row keys of coefficient matrices: (flat entry index, monomial).
using CoeffKey = std::pair<int, MultiIndex>;
struct CoeffKeyLess {
    bool operator()(const CoeffKey& a, const CoeffKey& b) const;
};
using CoeffIndex = std::map<CoeffKey, std::size_t, CoeffKeyLess>;

CoeffIndex coefficient_keys(const std::vector<PolyMatrix>& elements);
// Column j holds the coefficients of elements[j]; keys absent from `keys`
// raise InputError.
ExactMatrix coefficient_matrix(const std::vector<PolyMatrix>& elements, const CoeffIndex& keys);
ExactMatrix coefficient_matrix(const std::vector<PolyMatrix>& elements);

// Coordinates of polynomials with respect to a fixed basis.
class Expander {
public:
    explicit Expander(const SpaceBasis& basis);
    // nullopt when f is not in the span.
    std::optional<RatVec> coordinates(const PolyMatrix& f) const;
    std::size_t dim() const { return solver_.cols(); }

private:
    CoeffIndex keys_;
    ExactSolver solver_;
};

// P_k(cls) on R^arity in the given frame; monomials of the local coordinates
// in graded-lex order times the class basis.
SpaceBasis polynomial_space(const TensorClass& cls, int arity, int k, const Frame& frame);
SpaceBasis polynomial_space(const TensorClass& cls, int arity, int k);
// Homogeneous polynomials of exact degree k.
SpaceBasis homogeneous_space(const TensorClass& cls, int arity, int k, const Frame& frame);
// {a x + b}: e_1..e_d then x.
SpaceBasis rt_space(int dim, const Frame& frame);
SpaceBasis rt_space(int dim);

// Re-expresses a standard-frame space in another frame.
SpaceBasis transport(const SpaceBasis& basis, const Frame& frame);

// Keeps the first linearly independent elements (column pivots).
SpaceBasis independent_subset(std::string name, const TensorClass& cls, int arity,
                              std::vector<PolyMatrix> generators, const Frame& frame);

// Concatenation; throws when the parts are dependent or frames differ.
SpaceBasis direct_sum_space(std::string name, const std::vector<SpaceBasis>& parts);

std::size_t span_rank(const std::vector<PolyMatrix>& elements);

struct DirectSumReport {
    std::vector<std::pair<std::string, std::size_t>> part_dims;
    std::string whole_name;
    std::size_t whole_dim = 0;
    std::size_t concatenated_rank = 0;
    bool contained = false;  // every part lies in the whole
    bool pass = false;
};

// pass iff sum of part dims = rank of the concatenation = dim whole and
// every part lies in the whole.
DirectSumReport verify_direct_sum(const std::vector<SpaceBasis>& parts, const SpaceBasis& whole);

struct SpaceParams {
    int k = 3;
    int l = 3;
    Frame frame;  // empty origin means the standard frame of the dimension
};

// Named spaces used by the decomposition and complex checks:
//   P_S, P_T, P_M, P_K, P_vec, P (3D, degree k), P2_S, P2_vec, P2 (2D),
//   RT, RT2, C (sym curl P_{k+1}(T)), C_plus (x x^T P_{k-2}),
//   hess_P (hess P_{k+2}), sym_T_cross_x (sym(P_{k-1}(T) x x)),
//   S_cross_x (P_k(S) x x), dev_grad_P (dev grad P_{k+1}(R^3)),
//   Sigma ((l,k) divdiv shape space), Sigma2 (2D analog),
//   C2 (sym curl P_{k+1}(R^2)), C2_plus (x x^T P_{k-2} in 2D).
SpaceBasis space_basis(const std::string& name, const SpaceParams& params);
std::vector<std::string> space_names();

}  // namespace ddlab
