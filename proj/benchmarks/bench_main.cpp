#include <benchmark/benchmark.h>

#include "ddlab/complexes.hpp"
#include "ddlab/dofs.hpp"
#include "ddlab/operators.hpp"
#include "ddlab/suite.hpp"
#include "ddlab/traces.hpp"

using namespace ddlab;

static void BM_PolyProduct(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    Poly a = random_scalar(3, k, 1), b = random_scalar(3, k, 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyProduct)->Arg(3)->Arg(6);

static void BM_ExactRankDivDiv(benchmark::State& state) {
    SpaceParams p;
    p.k = static_cast<int>(state.range(0));
    SpaceBasis ps = space_basis("P_S", p);
    std::vector<PolyMatrix> images = apply_all(OperatorSpec::of(OpName::div_div), ps);
    for (auto _ : state) benchmark::DoNotOptimize(span_rank(images));
}
BENCHMARK(BM_ExactRankDivDiv)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ComplexDivDiv3d(benchmark::State& state) {
    const ComplexSpec& c = find_complex("divdiv3d");
    int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_complex(c, k).pass);
}
BENCHMARK(BM_ComplexDivDiv3d)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_GreenResidual3d(benchmark::State& state) {
    PolyMatrix tau = random_tensor(matrix_class(TensorKind::S, 3), 3, 3, 1);
    Poly v = random_scalar(3, 3, 2);
    Tet t = random_rational_tet(1);
    for (auto _ : state) benchmark::DoNotOptimize(green_residual_3d(tau, v, t).residual);
}
BENCHMARK(BM_GreenResidual3d)->Unit(benchmark::kMillisecond);

static void BM_Unisolvence(benchmark::State& state) {
    ElementDef e = make_element(state.range(0) == 0 ? "divdiv3d" : "hermite3d", 3, 3);
    Tet t = reference_tet();
    for (auto _ : state) benchmark::DoNotOptimize(unisolvence_check(e, t).pass);
}
BENCHMARK(BM_Unisolvence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SingularExtremes(benchmark::State& state) {
    ElementDef e = make_element("divdiv3d", 3, 3);
    Tet t = reference_tet();
    BigFloatMatrix d = equilibrate(dof_matrix(e.dofs(t), e.shape(t).elements).numeric());
    for (auto _ : state) benchmark::DoNotOptimize(min_max_singular(d).sigma_min);
}
BENCHMARK(BM_SingularExtremes)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
