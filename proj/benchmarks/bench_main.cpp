#include <benchmark/benchmark.h>

#include "xyzglass/xyzglass.hpp"

using namespace xyzglass;

namespace {

Model chain(int length) {
  Model m;
  m.lattice = build_lattice(1, length, kQuantumSiteCap);
  m.params = CouplingParams({{1, {0.2, 0.3, 0.4}, {0.5, 0.5, 0.5}}, {2, {0.6, 0.5, 0.4}, {0.8, 0.8, 0.8}}});
  m.families.push_back(generate_bonds(m.lattice, single_site_shape(1), Boundary::open));
  m.families.push_back(generate_bonds(m.lattice, nearest_neighbour_shapes(1)[0], Boundary::open));
  m.validate();
  return m;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const auto m = chain(static_cast<int>(state.range(0)));
  const auto s = sample_disorder(m, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(m, s));
}
BENCHMARK(BM_BuildHamiltonian)->DenseRange(2, 10, 2);

void BM_ThermalState(benchmark::State& state) {
  const auto m = chain(static_cast<int>(state.range(0)));
  const auto s = sample_disorder(m, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(thermal_state(m, s, 1.0).log_z());
}
BENCHMARK(BM_ThermalState)->DenseRange(2, 8, 2);

void BM_Duhamel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = chain(n);
  const auto st = thermal_state(m, sample_disorder(m, 1, 0), 1.0);
  const auto a = st.rotate(pauli_site(n, 0, Axis::z));
  const auto b = st.rotate(pauli_site(n, n - 1, Axis::z));
  for (auto _ : state) benchmark::DoNotOptimize(duhamel(st, a, b));
}
BENCHMARK(BM_Duhamel)->DenseRange(2, 8, 2);

void BM_ClassicalEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Model m;
  m.lattice = build_lattice(1, n);
  m.families.push_back(generate_bonds(m.lattice, nearest_neighbour_shapes(1)[0], Boundary::periodic));
  ClassicalModel cm{n, m.families, {std::vector<double>(m.families[0].size(), 0.7)}, {1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(classical_correlation_matrix(cm));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_ClassicalEnumeration)->DenseRange(8, 20, 4);

void BM_GaussHermiteRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite_rule(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(16)->Arg(64);

void BM_LemmaQuadratureSingleSite(benchmark::State& state) {
  Model m;
  m.lattice = build_lattice(1, 1);
  m.families.push_back(generate_bonds(m.lattice, single_site_shape(1), Boundary::open));
  m.params = CouplingParams({{1, {0.3, 0.5, 0.5}, {0.0, 1.0, 1.0}}});
  const Ensemble e{m, SamplingPlan{Method::quadrature, 0, static_cast<int>(state.range(0)), 1, 1}, {}, false};
  for (auto _ : state) benchmark::DoNotOptimize(lemma_suite(e, IdentityQuery{{0}, {0}, {}, Axis::z, Axis::x, 0.5}));
}
BENCHMARK(BM_LemmaQuadratureSingleSite)->Arg(8)->Arg(24);

void BM_RegionGrid(benchmark::State& state) {
  const GridAxis a{0.0, 1.5, static_cast<int>(state.range(0))};
  const RegionGrid g{{a, a, a}, {1.0, 1.0, 1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(sample_region(g, 1.0));
}
BENCHMARK(BM_RegionGrid)->Arg(20)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
