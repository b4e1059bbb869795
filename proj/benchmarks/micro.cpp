#include "hauv/bench.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace hauv {
namespace {

const ScenarioSpec& spec1() {
  static const ScenarioSpec s = builtin_scenario(1);
  return s;
}

const Environment& env1() {
  static const Environment e = build_environment(spec1());
  return e;
}

std::vector<Vec3> zigzag(int n) {
  std::vector<Vec3> pts{spec1().task.q_init};
  for (int i = 1; i < n - 1; ++i)
    pts.emplace_back(1000.0 + 3000.0 * i / (n - 1), 3750.0 + (i % 2 ? 400.0 : -400.0), i % 2 ? 100.0 : -100.0);
  pts.push_back(spec1().task.q_final);
  return pts;
}

void BM_SynthesizeSpeed(benchmark::State& state) {
  const Vec3 a = Vec3(1, 1, 0.2).normalized();
  const Vec3 vc(0.3, -0.2, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_speed(a, vc, 0.5));
}
BENCHMARK(BM_SynthesizeSpeed);

void BM_SmoothPath(benchmark::State& state) {
  const auto nodes = zigzag(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smooth_path(nodes, 25.0));
}
BENCHMARK(BM_SmoothPath)->Arg(4)->Arg(16);

void BM_AccumulateInformation(benchmark::State& state) {
  const auto path = smooth_path(zigzag(static_cast<int>(state.range(0))), 25.0);
  MeasuredArray measured(env1().workspace());
  for (auto _ : state) {
    measured.reset();
    accumulate_information(path, env1().info(), SensorParams{}, measured);
    benchmark::DoNotOptimize(total_information(measured, env1().info()));
  }
  state.SetLabel(std::to_string(path.samples.size()) + " samples");
}
BENCHMARK(BM_AccumulateInformation)->Arg(4)->Arg(16);

void BM_EvaluateFitness(benchmark::State& state) {
  const auto nodes = zigzag(8);
  const std::vector<Vec3> chain(nodes.begin(), nodes.end() - 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        evaluate_fitness(nodes[nodes.size() - 2], chain, spec1().task, env1(), spec1().vehicle));
}
BENCHMARK(BM_EvaluateFitness);

void BM_VelocityAt(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 5000), uz(-300, 300);
  std::vector<Vec3> pts;
  for (int i = 0; i < 1024; ++i) pts.emplace_back(u(rng), u(rng), uz(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(env1().velocity().at(pts[i++ & 1023]));
}
BENCHMARK(BM_VelocityAt);

void BM_NodeIndexNearest(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 5000), uz(-300, 300);
  NodeIndex index(500.0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) index.insert(i, Vec3(u(rng), u(rng), uz(rng)));
  std::vector<Vec3> queries;
  for (int i = 0; i < 1024; ++i) queries.emplace_back(u(rng), u(rng), uz(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(index.nearest(queries[i++ & 1023]));
}
BENCHMARK(BM_NodeIndexNearest)->Arg(100)->Arg(5000);

void BM_NodeIndexWithin(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 5000), uz(-300, 300);
  NodeIndex index(500.0);
  for (std::size_t i = 0; i < 5000; ++i) index.insert(i, Vec3(u(rng), u(rng), uz(rng)));
  std::vector<Vec3> queries;
  for (int i = 0; i < 1024; ++i) queries.emplace_back(u(rng), u(rng), uz(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(index.within(queries[i++ & 1023], 500.0));
}
BENCHMARK(BM_NodeIndexWithin);

void BM_PlanRast(benchmark::State& state) {
  PlannerConfig cfg = spec1().planner;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_planner(Algorithm::Rast, env1(), spec1().vehicle, spec1().task, cfg, spec1().pso,
                                         child_seed(spec1().base_seed, Algorithm::Rast, 0)));
}
BENCHMARK(BM_PlanRast)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
}  // namespace hauv

BENCHMARK_MAIN();
