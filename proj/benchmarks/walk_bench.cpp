#include <benchmark/benchmark.h>

#include "qwalk/edge.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/topology.hpp"

using namespace qwalk;

static void BM_Step(benchmark::State& state) {
  const long n = state.range(0);
  const auto u = build_walk({0.1, 0.0, kPi / 2, 0.0}, ThetaProfile::sharp_interface(-kPi / 4, kPi / 4, n));
  WalkerState s = WalkerState::localized(n, 0, 0);
  for (auto _ : state) {
    s = step(u, s);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Step)->RangeMultiplier(4)->Range(64, 16384);

static void BM_Diagonalize(benchmark::State& state) {
  const long n = state.range(0);
  const auto u = build_walk({0.0, 0.0, kPi / 2, 0.0}, ThetaProfile::sharp_interface(-kPi / 4, kPi / 4, n));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(u));
}
BENCHMARK(BM_Diagonalize)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_BandStructure(benchmark::State& state) {
  const CoinParams p(0.2, 0.3, 0.4, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(band_structure(p, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BandStructure)->RangeMultiplier(4)->Range(64, 4096);

static void BM_WindingMT(benchmark::State& state) {
  const CoinParams p(0.2, 0.3, 0.4, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(winding_mt(p, Band::Upper, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_WindingMT)->RangeMultiplier(4)->Range(64, 4096);

static void BM_RotatedWinding(benchmark::State& state) {
  const CoinParams p(0.0, 0.0, 0.0, kPi / 4);
  for (auto _ : state) benchmark::DoNotOptimize(rotated_winding(p, Frame::V2, Vec3::unit_z()));
}
BENCHMARK(BM_RotatedWinding);

static void BM_InterfaceDynamics(benchmark::State& state) {
  const long steps = state.range(0);
  const auto spec = default_interface_spec(dynamics_ring_size(steps));
  for (auto _ : state) benchmark::DoNotOptimize(interface_dynamics(spec, OverlapCase::OverlapBoth, steps));
}
BENCHMARK(BM_InterfaceDynamics)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
