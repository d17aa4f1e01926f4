#include <benchmark/benchmark.h>

#include "girthlab/covariance.hpp"
#include "girthlab/environment.hpp"
#include "girthlab/experiments.hpp"
#include "girthlab/functionals.hpp"
#include "girthlab/graphs.hpp"
#include "girthlab/treeform.hpp"

using namespace girthlab;

namespace {

void BM_sample_cycle(benchmark::State& state) {
  const Graph g = build_cycle(state.range(0));
  const EnvironmentSampler s = make_sampler(SamplerKind::AntisymmetricPair, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(s, g, ++seed));
  }
}
BENCHMARK(BM_sample_cycle)->Arg(500)->Arg(5000);

void BM_monomials(benchmark::State& state) {
  const Graph g = state.range(0) == 0 ? build_cycle(500) : build_lcf(lcf_catalog_entry("foster"));
  const EnvironmentSampler s = state.range(0) == 0
                                   ? make_sampler(SamplerKind::AntisymmetricPair, 2)
                                   : make_sampler(SamplerKind::PermutedVector, 3);
  const int jmax = static_cast<int>(state.range(1));
  const WalkTraceEngine engine(g, jmax);
  auto scratch = engine.make_scratch();
  std::vector<double> out(static_cast<std::size_t>(jmax) + 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Perturbation b = sample(s, g, ++seed);
    engine.monomials(b, out, scratch);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_monomials)->Args({0, 4})->Args({0, 6})->Args({1, 6})->Args({1, 8});

void BM_alpha_foster(benchmark::State& state) {
  const Graph g = build_lcf(lcf_catalog_entry("foster"));
  const EnvironmentSampler s = make_sampler(SamplerKind::PermutedVector, 3);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha(g, s, degree, degree));
  }
}
BENCHMARK(BM_alpha_foster)->Arg(4)->Arg(8)->Arg(12);

void BM_tree_alpha(benchmark::State& state) {
  const EnvironmentSampler s = make_sampler(SamplerKind::PermutedVector, 3);
  const int degree = static_cast<int>(state.range(0));
  const int depth = tree_alpha_min_depth(degree, degree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_alpha(3, s, degree, degree, depth));
  }
}
BENCHMARK(BM_tree_alpha)->Arg(4)->Arg(8)->Arg(12);

void BM_kernel_quadrature(benchmark::State& state) {
  const TreeModel t = TreeModel::of_degree(3);
  const PowerSeries z = PowerSeries::monomial(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_covariance(t, z, z, 1e-8));
  }
}
BENCHMARK(BM_kernel_quadrature)->Arg(1)->Arg(3);

void BM_m_eps(benchmark::State& state) {
  const Graph g = build_cycle(state.range(0));
  const EnvironmentSampler s = make_sampler(SamplerKind::AntisymmetricPair, 2);
  const Perturbation b = sample(s, g, 1);
  const PowerSeries f = PowerSeries::monomial(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m_eps(g, b, f, 0.01, 1e-12, 1));
  }
}
BENCHMARK(BM_m_eps)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
