#include <benchmark/benchmark.h>

#include "samo/mgda.hpp"
#include "samo/mlp.hpp"
#include "samo/nsga2.hpp"
#include "samo/pareto.hpp"
#include "samo/problem.hpp"
#include "samo/random.hpp"
#include "samo/rbf.hpp"
#include "samo/sampling.hpp"

namespace {

using namespace samo;

std::vector<ObjectiveVector> random_front(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ObjectiveVector> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(ObjectiveVector{uniform01(rng), uniform01(rng)});
  return pts;
}

Dataset sample(const problems::Problem& p, std::size_t n) {
  Dataset data;
  for (const auto& x : sampling::latin_hypercube(n, p.bounds(), 1).points) data.add({x, p.evaluate(x), 0});
  return data;
}

void BM_NonDominatedSort(benchmark::State& state) {
  const auto pts = random_front(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(moea::fast_non_dominated_sort(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NonDominatedSort)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void BM_Hausdorff(benchmark::State& state) {
  const auto a = random_front(static_cast<std::size_t>(state.range(0)), 2);
  const auto b = random_front(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_distance(a, b));
}
BENCHMARK(BM_Hausdorff)->Arg(100)->Arg(1000);

void BM_QuarterCarEvaluation(benchmark::State& state) {
  const problems::QuarterCarBenchmark bench;
  const DecisionVector x(std::vector<double>(24, 0.001));
  for (auto _ : state) benchmark::DoNotOptimize(bench.evaluate(x));
}
BENCHMARK(BM_QuarterCarEvaluation)->Unit(benchmark::kMillisecond);

void BM_RbfFit(benchmark::State& state) {
  const auto data = sample(problems::make_analytic_problem("two-paraboloids"), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(surrogate::fit_rbf(data, 0.5));
}
BENCHMARK(BM_RbfFit)->Arg(20)->Arg(120);

void BM_MlpFit(benchmark::State& state) {
  const auto data = sample(problems::make_analytic_problem("two-paraboloids"), static_cast<std::size_t>(state.range(0)));
  surrogate::TrainConfig cfg;
  cfg.epochs = 500;
  for (auto _ : state) benchmark::DoNotOptimize(surrogate::fit_mlp(data, cfg));
}
BENCHMARK(BM_MlpFit)->Arg(20)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_MlpPredictRows(benchmark::State& state) {
  const auto p = problems::make_analytic_problem("two-paraboloids");
  surrogate::TrainConfig cfg;
  cfg.epochs = 10;
  const auto model = surrogate::fit_mlp(sample(p, 20), cfg);
  const Eigen::MatrixXd rows = Eigen::MatrixXd::Random(100, 4);
  for (auto _ : state) benchmark::DoNotOptimize(model.predict_rows(rows));
}
BENCHMARK(BM_MlpPredictRows);

void BM_Nsga2Zdt1(benchmark::State& state) {
  const auto p = problems::make_analytic_problem("zdt1");
  moea::MoeaConfig cfg;
  cfg.generations = static_cast<std::size_t>(state.range(0));
  const auto objective = moea::pointwise([&](const DecisionVector& x) { return p.evaluate(x).data(); });
  for (auto _ : state) benchmark::DoNotOptimize(moea::nsga2_run(objective, p.bounds(), cfg));
}
BENCHMARK(BM_Nsga2Zdt1)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_CommonDescentDirection(benchmark::State& state) {
  Rng rng(4);
  Eigen::MatrixXd jac(state.range(0), 24);
  for (Eigen::Index r = 0; r < jac.rows(); ++r) {
    for (Eigen::Index c = 0; c < jac.cols(); ++c) jac(r, c) = standard_normal(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mgda::common_descent_direction(jac));
}
BENCHMARK(BM_CommonDescentDirection)->Arg(2)->Arg(3)->Arg(5);

void BM_ParetoInformedSamples(benchmark::State& state) {
  const auto bounds = BoxBounds::uniform(24, -0.003, 0.003);
  const auto set = sampling::latin_hypercube(100, bounds, 5).points;
  std::vector<ObjectiveVector> front;
  for (std::size_t i = 0; i < set.size(); ++i) front.push_back(ObjectiveVector{static_cast<double>(i), -static_cast<double>(i)});
  const ParetoApproximation pareto(set, front);
  for (auto _ : state) benchmark::DoNotOptimize(sampling::pareto_informed_samples(pareto, 20, Dataset{}, bounds, 1));
}
BENCHMARK(BM_ParetoInformedSamples);

}  // namespace

BENCHMARK_MAIN();
