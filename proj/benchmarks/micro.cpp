#include "serddr/complex_core.hpp"
#include "serddr/quadrot.hpp"
#include "serddr/rotrot.hpp"
#include "serddr/sddr2d.hpp"

#include <benchmark/benchmark.h>

using namespace serddr;

namespace {

void BM_BuildDDR(benchmark::State& state) {
  const Mesh2D mesh = generate_family(MeshFamily::hexagonal, static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_ddr(mesh, k));
  state.counters["faces"] = mesh.n_faces();
}
BENCHMARK(BM_BuildDDR)->ArgsProduct({{3, 4, 5}, {1, 3}})->Unit(benchmark::kMillisecond);

void BM_BuildSDDR(benchmark::State& state) {
  const Mesh2D mesh = generate_family(MeshFamily::hexagonal, static_cast<int>(state.range(0)));
  const DDRComplex ddr = build_ddr(mesh, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(build_sddr(mesh, ddr));
}
BENCHMARK(BM_BuildSDDR)->ArgsProduct({{3, 4, 5}, {1, 3}})->Unit(benchmark::kMillisecond);

void BM_BuildRotRot(benchmark::State& state) {
  const Mesh2D mesh = generate_family(MeshFamily::cartesian, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_rotrot(mesh, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_BuildRotRot)->ArgsProduct({{3, 4, 5}, {1, 3}})->Unit(benchmark::kMillisecond);

void BM_Cohomology(benchmark::State& state) {
  const Mesh2D mesh = generate_family(MeshFamily::cartesian, static_cast<int>(state.range(0)));
  const DDRComplex ddr = build_ddr(mesh, 2);
  for (auto _ : state) {
    const FiniteComplex c = to_finite_complex(ddr);
    benchmark::DoNotOptimize(cohomology(c));
  }
}
BENCHMARK(BM_Cohomology)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_QuadRotSolve(benchmark::State& state) {
  const Mesh2D mesh = generate_family(MeshFamily::triangular, static_cast<int>(state.range(0)));
  const Variant v = state.range(1) == 0 ? Variant::standard : Variant::serendipity;
  const QuadRotProblem problem(mesh, 2, v);
  for (auto _ : state) benchmark::DoNotOptimize(problem.solve());
  state.counters["unknowns"] = problem.dim_linear_system();
}
BENCHMARK(BM_QuadRotSolve)->ArgsProduct({{3, 4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
