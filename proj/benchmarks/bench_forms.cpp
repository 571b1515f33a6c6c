#include <benchmark/benchmark.h>

#include <string>

#include "tropharm/forms.hpp"
#include "tropharm/graph.hpp"
#include "tropharm/morphism.hpp"

namespace {

using namespace tropharm;

// Chain of k dumbbell loops with one leaf at each end: genus k, 2 leaves.
MetricGraph ladder(int k) {
  CubicGraph g;
  g.leaves.push_back({"in", "a0"});
  for (int i = 0; i < k; ++i) {
    const std::string a = "a" + std::to_string(i);
    const std::string b = "b" + std::to_string(i);
    g.vertices.push_back(a);
    g.vertices.push_back(b);
    g.edges.push_back({"p" + std::to_string(i), {a, b}});
    g.edges.push_back({"q" + std::to_string(i), {a, b}});
    if (i + 1 < k) g.edges.push_back({"r" + std::to_string(i), {b, "a" + std::to_string(i + 1)}});
  }
  g.leaves.push_back({"out", "b" + std::to_string(k - 1)});
  std::map<std::string, double> lengths;
  for (std::size_t e = 0; e < g.edges.size(); ++e) lengths[g.edges[e].id] = 1.0 + 0.1 * static_cast<double>(e % 7);
  return validate(g, lengths);
}

void BM_KirchhoffFactor(benchmark::State& state) {
  const MetricGraph c = ladder(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    KirchhoffSolver solver(c);
    benchmark::DoNotOptimize(&solver);
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(c.edge_count()));
}
BENCHMARK(BM_KirchhoffFactor)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_KirchhoffSolve(benchmark::State& state) {
  const MetricGraph c = ladder(static_cast<int>(state.range(0)));
  const KirchhoffSolver solver(c);
  Eigen::VectorXd r(2);
  r << 1.0, -1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(r).edge_values().data());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(c.edge_count()));
}
BENCHMARK(BM_KirchhoffSolve)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_Regularity(benchmark::State& state) {
  const MetricGraph c = ladder(static_cast<int>(state.range(0)));
  Eigen::MatrixXd r(1, 2);
  r << 3.0, -3.0;
  const HarmonicMorphism m = build_morphism(c, ResidueMatrix(r), 0);
  for (auto _ : state) benchmark::DoNotOptimize(regularity_rank(c, m).rank);
}
BENCHMARK(BM_Regularity)->RangeMultiplier(4)->Range(4, 256);

}  // namespace
