#include <benchmark/benchmark.h>

#include "swme/basis.hpp"
#include "swme/model.hpp"
#include "swme/scenarios.hpp"
#include "swme/solver.hpp"

namespace {

swme::ModelSpec table_one_spec(swme::Family family, int order) {
  return swme::make_model_spec(family, order, swme::nondimensionalize(swme::PhysicalSetup{}));
}

void BM_BuildTensors(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(swme::build_tensors(order));
}
BENCHMARK(BM_BuildTensors)->DenseRange(1, 8);

void BM_MaxWaveSpeed(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const swme::ModelSpec spec = table_one_spec(swme::Family::modified, order);
  swme::MomentCoefficients u{0.1, std::vector<double>(static_cast<std::size_t>(order), 0.02)};
  swme::MomentCoefficients v{-0.05, std::vector<double>(static_cast<std::size_t>(order), 0.01)};
  const swme::MomentState s = swme::MomentState::from_primitive(2, 0.8, u, v);
  for (auto _ : state) benchmark::DoNotOptimize(swme::max_wave_speed(s, spec, swme::Direction::x));
}
BENCHMARK(BM_MaxWaveSpeed)->DenseRange(0, 4);

void BM_Step1D(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const bool implicit = state.range(1) != 0;
  const swme::ModelSpec spec =
      table_one_spec(implicit ? swme::Family::standard : swme::Family::modified, order);
  swme::ScenarioConfig cfg = swme::dambreak_1d();
  cfg.nx = 4000;
  const swme::GridField f = swme::build_field(cfg, order);
  const swme::BasisTensors& tensors = swme::cached_tensors(order);
  const double dt = swme::cfl_dt(f, spec, 0.7);
  for (auto _ : state) {
    auto next = implicit ? swme::step_semi_implicit(f, spec, tensors, dt) : swme::step_explicit(f, spec, tensors, dt);
    benchmark::DoNotOptimize(next);
  }
  state.SetItemsProcessed(state.iterations() * cfg.nx);
}
BENCHMARK(BM_Step1D)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Step2D(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const swme::ModelSpec spec = table_one_spec(swme::Family::modified, order);
  swme::ScenarioConfig cfg = swme::radial_collapse_2d();
  cfg.nx = cfg.ny = 200;
  const swme::GridField f = swme::build_field(cfg, order);
  const double dt = swme::cfl_dt(f, spec, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(swme::step_explicit(f, spec, swme::cached_tensors(order), dt));
  state.SetItemsProcessed(state.iterations() * cfg.nx * cfg.ny);
}
BENCHMARK(BM_Step2D)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
