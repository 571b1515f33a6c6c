#include <benchmark/benchmark.h>

#include "tropharm/amoeba.hpp"
#include "tropharm/hausdorff.hpp"
#include "tropharm/morphism.hpp"

namespace {

using namespace tropharm;

PuncturedSphere line_sphere() {
  return PuncturedSphere({Puncture::finite(0.0), Puncture::finite(1.0), Puncture::infinity()});
}

ResidueMatrix line_residues() {
  Eigen::MatrixXd r(2, 3);
  r << 1, 0, -1, 0, 1, -1;
  return ResidueMatrix(r);
}

void BM_SampleAmoeba(benchmark::State& state) {
  const auto s = line_sphere();
  const auto r = line_residues();
  SamplingParams p;
  p.density = static_cast<std::size_t>(state.range(0));
  p.threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sample_amoeba(s, r, p).points.data());
}
BENCHMARK(BM_SampleAmoeba)->ArgsProduct({{1, 4}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_HausdorffToScene(benchmark::State& state) {
  const auto s = line_sphere();
  const auto r = line_residues();
  SamplingParams p;
  p.density = static_cast<std::size_t>(state.range(0));
  PointCloud cloud = sample_amoeba(s, r, p);
  cloud.points /= 10.0;
  CubicGraph g;
  g.vertices = {"v"};
  g.leaves = {{"a", "v"}, {"b", "v"}, {"c", "v"}};
  const Scene scene = emit_embedding(build_morphism(validate(g, {}), r, 0), 5.0);
  const Box window = Box::cube(2, -3.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(cloud, scene, window).value);
}
BENCHMARK(BM_HausdorffToScene)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
