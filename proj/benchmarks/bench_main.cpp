#include <graphlp/certificate.hpp>
#include <graphlp/form.hpp>
#include <graphlp/kernel.hpp>
#include <graphlp/polytope.hpp>
#include <graphlp/rigidity.hpp>

#include <benchmark/benchmark.h>

using namespace graphlp;

static Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.push_back({v, v + 1});
  return Graph(n, e);
}

static void BM_CertifyPath(benchmark::State& state) {
  const Graph g = path(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certify(g).sum);
}
BENCHMARK(BM_CertifyPath)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_Chain3Region(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(chain3_constructed_region(2).vertices.size());
}
BENCHMARK(BM_Chain3Region);

static void BM_HullMembership(benchmark::State& state) {
  const auto poly = sufficient_vertices(CaseStudy::Triangle);
  const ExponentVector x({Rational(1, 3), Rational(2, 5), Rational(1, 4)});
  for (auto _ : state) benchmark::DoNotOptimize(hull_membership(poly, x).inside);
}
BENCHMARK(BM_HullMembership);

static void BM_CircularAverage(benchmark::State& state) {
  const auto geo = GridGeometry::with_nodes(2.0, static_cast<int>(state.range(0)));
  const auto f = test_family(FamilyKind::Ball, 0.5, geo);
  const auto stencil = build_stencil(make_kernel(0.125, default_angular_nodes(geo.h)), geo.h);
  for (auto _ : state) benchmark::DoNotOptimize(circular_average(f, stencil).values().data());
}
BENCHMARK(BM_CircularAverage)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_RegularityProbeK3(benchmark::State& state) {
  const Graph k3(3, {{1, 2}, {1, 3}, {2, 3}});
  for (auto _ : state) benchmark::DoNotOptimize(regularity_probe(k3, 20).found);
}
BENCHMARK(BM_RegularityProbeK3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
