#include <benchmark/benchmark.h>

#include "sonic/kg_spectrum.hpp"
#include "sonic/packets_modes.hpp"
#include "sonic/profile_flow.hpp"
#include "sonic/special_fn.hpp"
#include "sonic/wave_solver.hpp"

namespace {

void BM_ComplexGamma(benchmark::State& state) {
  double y = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sonic::gamma(sonic::Complex(1.25, y)));
    y = y < 20.0 ? y + 0.37 : 0.5;
  }
}
BENCHMARK(BM_ComplexGamma);

void BM_PacketFourier(benchmark::State& state) {
  const sonic::GammaParams p{1.0, 0.25};
  double eta = -0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sonic::packet_fourier(eta, p, 8.0));
    eta = eta > -400.0 ? eta * 1.1 : -0.1;
  }
}
BENCHMARK(BM_PacketFourier);

void BM_SigmaOf(benchmark::State& state) {
  const sonic::FlowConfig flow;
  const double x0 = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(sonic::sigma_of(1.7, x0, flow));
}
BENCHMARK(BM_SigmaOf)->Arg(1)->Arg(5)->Arg(20);

void BM_Separatrix(benchmark::State& state) {
  const sonic::FlowConfig flow;
  for (auto _ : state) benchmark::DoNotOptimize(sonic::find_separatrix(flow).sigma_star);
}
BENCHMARK(BM_Separatrix)->Unit(benchmark::kMillisecond);

void BM_TotalNumber(benchmark::State& state) {
  sonic::PacketParams p;
  p.a = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sonic::total_number(p).value);
}
BENCHMARK(BM_TotalNumber)->Arg(8)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_WaveStep(benchmark::State& state) {
  sonic::RadialGrid grid;
  grid.n_rho = static_cast<int>(state.range(0));
  grid.order = state.range(1) == 2 ? sonic::SchemeOrder::kSecond : sonic::SchemeOrder::kFourth;
  const auto profile = sonic::VelocityProfile::smooth_step(-1.2, -0.8, 1.0);
  const auto data = sonic::outgoing_mode_data(-6.0, grid, profile, sonic::DataWindow::for_grid(grid));
  sonic::WaveSolver solver(grid, profile, data);
  for (auto _ : state) solver.step();
  state.SetItemsProcessed(state.iterations() * grid.n_rho);
}
BENCHMARK(BM_WaveStep)->Args({1024, 2})->Args({4096, 2})->Args({4096, 4})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
