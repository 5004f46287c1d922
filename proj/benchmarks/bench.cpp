#include <benchmark/benchmark.h>

#include "tlab/fem.hpp"
#include "tlab/functionals.hpp"
#include "tlab/geometry.hpp"
#include "tlab/mesh.hpp"

namespace {

using namespace tlab;

void BM_triangulate_square(benchmark::State& state) {
  const Domain dom = build_domain(DomainSpec::unit_square());
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    Mesh mesh = triangulate(dom, MeshParams{h, 20.0});
    benchmark::DoNotOptimize(mesh.nodes.data());
    state.counters["tris"] = static_cast<double>(mesh.tris.size());
  }
}
BENCHMARK(BM_triangulate_square)->Arg(32)->Arg(64)->Arg(128);

void BM_triangulate_disk(benchmark::State& state) {
  const Domain dom = build_domain(DomainSpec::disk({0, 0}, 1.0, 512));
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    Mesh mesh = triangulate(dom, MeshParams{h, 20.0});
    benchmark::DoNotOptimize(mesh.nodes.data());
    state.counters["tris"] = static_cast<double>(mesh.tris.size());
  }
}
BENCHMARK(BM_triangulate_disk)->Arg(32)->Arg(64);

void BM_torsion_solve(benchmark::State& state) {
  const Domain dom = build_domain(DomainSpec::unit_square());
  const Mesh mesh = triangulate(dom, MeshParams{1.0 / static_cast<double>(state.range(0)), 20.0});
  for (auto _ : state) {
    ScalarField u = solve_torsion(mesh);
    benchmark::DoNotOptimize(u.values.data());
  }
  state.counters["nodes"] = static_cast<double>(mesh.nodes.size());
}
BENCHMARK(BM_torsion_solve)->Arg(32)->Arg(64)->Arg(128);

void BM_eigen_solve(benchmark::State& state) {
  const Domain dom = build_domain(DomainSpec::unit_square());
  const Mesh mesh = triangulate(dom, MeshParams{1.0 / static_cast<double>(state.range(0)), 20.0});
  for (auto _ : state) {
    EigenSolution eig = solve_eigenpair(mesh);
    benchmark::DoNotOptimize(eig.lambda);
  }
  state.counters["nodes"] = static_cast<double>(mesh.nodes.size());
}
BENCHMARK(BM_eigen_solve)->Arg(32)->Arg(64);

void BM_functional_report(benchmark::State& state) {
  const Domain dom = build_domain(DomainSpec::equilateral_triangle());
  for (auto _ : state) {
    FunctionalReport rep = functional_report(dom, 0.04, 2);
    benchmark::DoNotOptimize(rep.G);
  }
}
BENCHMARK(BM_functional_report);

}  // namespace

BENCHMARK_MAIN();
