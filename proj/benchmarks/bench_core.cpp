#include <benchmark/benchmark.h>

#include "molent/atom_optics.hpp"
#include "molent/pair_correlations.hpp"
#include "molent/propagator.hpp"
#include "molent/runners.hpp"

using namespace molent;

namespace {

// Cost of one propagation step on the default grid, measured as a 100-step run.
void propagate_100_steps(benchmark::State& state, Scheme scheme) {
  const RunConfig cfg;
  const WaveFunction psi0 = initial_state(cfg);
  const double g = g1d(cfg.initial_a1d(), cfg.feshbach().reduced_mass());
  PropagatorConfig pc;
  pc.scheme = scheme;
  pc.dt = 1e-6;
  pc.check_interval = 1000;
  for (auto _ : state) {
    auto run = propagate(psi0, [g](double) { return g; }, cfg.feshbach().reduced_mass(), pc, 100e-6);
    benchmark::DoNotOptimize(run.state.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * 100);
}

void BM_CrankNicolson(benchmark::State& state) { propagate_100_steps(state, Scheme::crank_nicolson); }
void BM_Strang(benchmark::State& state) { propagate_100_steps(state, Scheme::strang_split); }

void BM_QuadrantProbabilities(benchmark::State& state) {
  const RunConfig cfg;
  const WaveFunction psi = initial_state(cfg);
  const CmPacket packet{cfg.initial_a1d(), 2.0 * cfg.atom_mass(), 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(quadrant_probabilities(psi, packet));
}

void BM_MomentumDistribution(benchmark::State& state) {
  const RunConfig cfg;
  const WaveFunction psi = initial_state(cfg);
  for (auto _ : state) {
    auto md = momentum_distribution(psi);
    benchmark::DoNotOptimize(md.density.data());
  }
}

void BM_FringePoint(benchmark::State& state) {
  const double s = 0.7071067811865476;
  const auto bell = optics::molecule_bs(s, -s);
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optics::fringe_point(bell, phi));
    phi += 0.01;
  }
}

}  // namespace

BENCHMARK(BM_CrankNicolson)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Strang)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadrantProbabilities)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MomentumDistribution)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FringePoint);
BENCHMARK_MAIN();
