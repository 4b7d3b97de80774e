#include "diracac/dirac1d.hpp"
#include "diracac/greens3d.hpp"
#include "diracac/oracles.hpp"
#include "diracac/partialwave.hpp"
#include "diracac/potential_io.hpp"

#include <benchmark/benchmark.h>

using namespace diracac;
namespace pw = diracac::partialwave;
namespace g3 = diracac::greens3d;

namespace {

void BM_JostAtZero(benchmark::State& state) {
  const auto pot = random_step_potential(static_cast<int>(state.range(0)), 2.0, 1);
  double lambda = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirac1d::jost_at_zero(pot, lambda));
    lambda += 1e-3;
  }
}
BENCHMARK(BM_JostAtZero)->Arg(1)->Arg(2)->Arg(3);

void BM_JostTransfer(benchmark::State& state) {
  const auto pot = random_step_potential(static_cast<int>(state.range(0)), 2.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(oracles::jost_transfer(pot, 0.5));
}
BENCHMARK(BM_JostTransfer)->Arg(1)->Arg(3);

void BM_DensityAt(benchmark::State& state) {
  const auto pot = MatrixPotential::scalar(profiles::bump(0.2, 1.2), 0.3, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(dirac1d::density_at(pot, 1.5));
}
BENCHMARK(BM_DensityAt);

void BM_ResolventDensity(benchmark::State& state) {
  const auto pot = MatrixPotential::scalar(profiles::step(0.0, 1.0), 0.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(oracles::resolvent_density(pot, 1.5));
}
BENCHMARK(BM_ResolventDensity)->Unit(benchmark::kMillisecond);

void BM_CoupleAt(benchmark::State& state) {
  const auto v = pw::potentials3d::modulated_power_decay(0.5, 0.1);
  const auto channels = pw::channel_spectrum(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pw::couple_at(v, channels, 3.0));
}
BENCHMARK(BM_CoupleAt)->Arg(2)->Arg(8);

void BM_FreeGreen(benchmark::State& state) {
  const g3::Vec3 x(1.0, 2.0, 3.0), s(0.1, -0.2, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(g3::free_green(Complex(0.0, 1.0), x, s));
}
BENCHMARK(BM_FreeGreen);

void BM_BornStep(benchmark::State& state) {
  const auto v = pw::potentials3d::power_decay(0.02, 0.1, false);
  const auto nodes = g3::born_nodes(20.0);
  for (auto _ : state) benchmark::DoNotOptimize(g3::born_step(v, g3::free_field(), nodes));
}
BENCHMARK(BM_BornStep)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
