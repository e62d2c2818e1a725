#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ddlab/bigfloat.hpp"
#include "ddlab/float_matrix.hpp"
#include "ddlab/simplex.hpp"
#include "ddlab/spaces.hpp"

namespace ddlab {

using Cell = std::variant<Tet, Triangle>;

enum class DofKind { vertex_eval, edge_moment, face_moment, volume_moment };
std::string to_string(DofKind k);

// Lazily computed derivatives of one shape function, shared by the
// integrands of all groups.
class FieldCache {
public:
    explicit FieldCache(const PolyMatrix& phi) : phi_(phi) {}
    const PolyMatrix& value() const { return phi_; }
    const PolyMatrix& curl();
    const PolyMatrix& sym_curl();
    const PolyMatrix& div();
    const PolyMatrix& grad();

private:
    const PolyMatrix& phi_;
    std::optional<PolyMatrix> curl_, sym_curl_, div_, grad_;
};

// Functionals sharing an entity, an integrand g and a normalization:
//   vertex:  N_c(phi) = sqrt(scale_sq) * g_c(phi)(point)
//   moment:  N_d(phi) = sqrt(scale_sq) * sum_c int_ref (g_c(phi) w_{d,c}) o chart
// Frame vectors enter unnormalized so g and w stay rational; every square
// root is collected in scale_sq, including the chart measure.
struct DofGroup {
    std::string tag;
    std::string stencil = "none";  // none | d_n | tr2 | curl | sym_curl | grad
    DofKind kind = DofKind::vertex_eval;
    int entity = 0;                 // local vertex / edge / face index, 0 for the cell
    std::vector<int> entity_gids;   // sorted global vertex ids
    bool interior = false;          // not shared with neighbors
    Rat scale_sq = 1;
    std::function<std::vector<Poly>(FieldCache&)> integrand;
    std::size_t count = 0;          // number of functionals
    RatVec point;                   // vertex_eval
    AffineChart chart;              // moments
    std::vector<std::vector<Poly>> weights;  // [functional][component], ambient variables
    int weight_degree = 0;
};

// Flat view of one functional.
struct DofFunctional {
    DofKind kind = DofKind::vertex_eval;
    int entity = 0;
    std::vector<int> entity_gids;
    std::size_t group = 0;
    std::size_t index = 0;  // within the group
    std::string tag;
    std::string stencil;
    bool interior = false;
};

struct ElementDofs {
    std::string element;
    std::vector<DofGroup> groups;
    std::vector<DofFunctional> functionals;
    std::size_t size() const { return functionals.size(); }
};

struct ElementDef {
    std::string name;  // divdiv3d, divdiv3d_bubbleDofs, symcurl3d, symcurl3d_lagrange, hermite3d, divdiv2d
    int l = 3;
    int k = 3;

    int dim() const { return name == "divdiv2d" ? 2 : 3; }
    SpaceBasis shape(const Cell& cell) const;
    ElementDofs dofs(const Cell& cell) const;
};

std::vector<std::string> element_names();
// Throws InputError for unknown names or parameters outside the valid range.
ElementDef make_element(const std::string& name, int l, int k);
// Count formulas for the shape space dimension.
std::size_t expected_dimension(const ElementDef& e);

ElementDofs dof_set(const ElementDef& e, const Cell& cell);

// Rational parts of every functional of a group on one function.
class GroupEvaluator {
public:
    explicit GroupEvaluator(const DofGroup& g);
    RatVec rational_values(FieldCache& f);

private:
    const Rat& moment(const MultiIndex& a);
    const Rat& dual(std::size_t d, std::size_t c, const MultiIndex& a);

    const DofGroup& g_;
    std::optional<CachedRestrictor> restrictor_;
    std::map<MultiIndex, Rat, GradedLex> moments_;
    std::vector<std::vector<std::map<MultiIndex, Rat, GradedLex>>> dual_;
};

BigFloat evaluate_dof(const ElementDofs& dofs, std::size_t i, const PolyMatrix& phi);
// All functionals at once.
FloatVec evaluate_dofs(const ElementDofs& dofs, const PolyMatrix& phi);

// D = diag(sqrt(scale_sq)) R with R exact; rows are functionals.
struct DofMatrix {
    ExactMatrix rational;
    std::vector<Rat> scale_sq;
    BigFloatMatrix numeric() const;
};
DofMatrix dof_matrix(const ElementDofs& dofs, const std::vector<PolyMatrix>& functions);

struct UnisolvenceReport {
    std::string element;
    int l = 0, k = 0;
    std::size_t rows = 0, cols = 0;
    bool square = false;
    BigFloat sigma_min, sigma_max, ratio;  // equilibrated, L2(K)-orthonormal shape basis
    BigFloat monomial_ratio;               // equilibrated, local monomial shape basis
    bool pass = false;
    int precision = 0;
    double seconds = 0;
};

// Rows, then columns, scaled to unit 2-norm.
BigFloatMatrix equilibrate(BigFloatMatrix m);

// C with C^T G C = I for the L2(K) Gram matrix G of the basis; upper triangular.
BigFloatMatrix l2_orthonormalizer(const SpaceBasis& basis, const std::vector<RatVec>& cell_vertices);

// sigma_min / sigma_max of the equilibrated square DOF matrix taken against
// an L2(K)-orthonormal shape basis, so the local monomial basis does not
// enter; pass iff ratio > 1e-8. Throws InternalError when not square.
UnisolvenceReport unisolvence_check(const ElementDef& e, const Cell& cell);

// Column j holds the coefficients of the j-th dual function in the shape basis.
struct DualBasis {
    SpaceBasis shape;
    BigFloatMatrix coefficients;
    BigFloat residual;  // max |N_i(phi_j) - delta_ij|
};
DualBasis dual_basis(const ElementDef& e, const Cell& cell);

}  // namespace ddlab
