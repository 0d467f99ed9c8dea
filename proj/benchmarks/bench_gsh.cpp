#include <benchmark/benchmark.h>

#include "gsh/estimators.hpp"
#include "gsh/oracle.hpp"
#include "gsh/rng.hpp"
#include "gsh/sampler.hpp"
#include "gsh/variance.hpp"

namespace {

using namespace gsh;

EdgeStream er_graph(std::uint64_t n, double mean_degree, std::uint64_t seed) {
  EdgeStream s;
  const double prob = mean_degree / static_cast<double>(n - 1);
  std::mt19937_64 rng(seed);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (uniform01(rng) < prob) s.edges.push_back(Edge{a, b});
    }
  }
  return s;
}

const EdgeStream& bench_stream() {
  static const EdgeStream s = er_graph(4000, 20.0, 11);
  return s;
}

const SampleState& bench_sample() {
  static const SampleState state =
      run(bench_stream(), SamplerConfig{0.3, 0.5, true, 1});
  return state;
}

void BM_SamplerPass(benchmark::State& state) {
  const EdgeStream& s = bench_stream();
  const SamplerConfig cfg{0.01, 0.05, true, 7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(s, cfg).size());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_SamplerPass);

void BM_EnumerateWedges(benchmark::State& state) {
  const SampleState& sample = bench_sample();
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate(sample, SubgraphKind::wedge).instances.size());
  }
}
BENCHMARK(BM_EnumerateWedges);

void BM_EnumerateTriangles(benchmark::State& state) {
  const SampleState& sample = bench_sample();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        enumerate(sample, SubgraphKind::triangle).instances.size());
  }
}
BENCHMARK(BM_EnumerateTriangles);

void BM_WedgeVariance(benchmark::State& state) {
  const SampleState& sample = bench_sample();
  const SubgraphFamily wedges = enumerate(sample, SubgraphKind::wedge);
  const unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(var_family(wedges, sample, threads));
  }
}
BENCHMARK(BM_WedgeVariance)->Arg(1)->Arg(2)->Arg(4);

void BM_TriangleWedgeCovariance(benchmark::State& state) {
  const SampleState& sample = bench_sample();
  const SubgraphFamily tris = enumerate(sample, SubgraphKind::triangle);
  const SubgraphFamily wedges = enumerate(sample, SubgraphKind::wedge);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cov_triangle_wedge(tris, wedges, sample));
  }
}
BENCHMARK(BM_TriangleWedgeCovariance);

void BM_ExactTriangleCount(benchmark::State& state) {
  const EdgeStream& s = bench_stream();
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_count(s).triangles);
  }
}
BENCHMARK(BM_ExactTriangleCount);

}  // namespace

BENCHMARK_MAIN();
