#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "boundpair/bethe.hpp"
#include "boundpair/spectral.hpp"
#include "boundpair/wavepacket.hpp"

using namespace boundpair;

static void BM_BuildPairHamiltonian(benchmark::State& state) {
  const LatticeParams p(static_cast<int>(state.range(0)), 1.0, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_full_pair_hamiltonian(p));
  state.SetLabel("dim " + std::to_string(pair_dimension(p.n_sites())));
}
BENCHMARK(BM_BuildPairHamiltonian)->Arg(51)->Arg(151)->Arg(301)->Unit(benchmark::kMillisecond);

static void BM_BoundBand(benchmark::State& state) {
  const LatticeParams p(static_cast<int>(state.range(0)), 1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(bound_band(p));
}
BENCHMARK(BM_BoundBand)->Arg(101)->Arg(301)->Unit(benchmark::kMillisecond);

static void BM_PairChebyshev(benchmark::State& state) {
  const LatticeParams p(151, 1.0, 5.0);
  const Propagator prop(std::make_shared<const Hamiltonian>(build_full_pair_hamiltonian(p)));
  const PairState phi = make_bp_packet({linear_point(p).k0, 76.0, 2.0 / 15.0}, p);
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(phi.amplitudes, 15.0));
}
BENCHMARK(BM_PairChebyshev)->Unit(benchmark::kMillisecond);

static void BM_HardcoreChebyshev(benchmark::State& state) {
  const LatticeParams p(201, 1.0, 20.0);
  const Propagator prop(std::make_shared<const Hamiltonian>(build_hardcore_hamiltonian(p, 1.0)));
  const HardcoreState s = make_hardcore_product({kPi / 2, 30.0, 2.0 / 15.0}, {0.0, 101.0, 2.0 / 15.0}, p);
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(s.amplitudes, static_cast<double>(state.range(0))));
}
BENCHMARK(BM_HardcoreChebyshev)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_SpectralSetup(benchmark::State& state) {
  auto h = std::make_shared<const Hamiltonian>(build_full_pair_hamiltonian(LatticeParams(41, 1.0, 5.0)));
  for (auto _ : state) benchmark::DoNotOptimize(Propagator(h, PropagationMethod::kSpectral));
}
BENCHMARK(BM_SpectralSetup)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
