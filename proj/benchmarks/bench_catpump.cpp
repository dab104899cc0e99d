// Copyright 2026 The catpump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "catpump/analysis.hpp"
#include "catpump/dynamics.hpp"
#include "catpump/fock.hpp"

namespace {

using namespace catpump;

dynamics::CycleConfig cycle_at(double phi_inv) { return dynamics::CycleConfig::from_phi_inv(phi_inv, {0.0, -2.0}); }

// Steady state of the Phi^-1 = 2 pump, used as a realistic input.
const fock::DensityMatrix& steady_state() {
  static const fock::DensityMatrix rho = [] {
    auto cfg = cycle_at(2.0);
    const dynamics::SynchronousCycle cycle(cfg, 40, 20);
    fock::DensityMatrix r = fock::DensityMatrix::vacuum({40});
    for (int k = 0; k < cfg.n_cycles; ++k) r = cycle(r);
    return r;
  }();
  return rho;
}

void BM_BuildKrausCycle(benchmark::State& state) {
  const auto propagator = static_cast<dynamics::Propagator>(state.range(0));
  const auto cfg = cycle_at(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::SynchronousCycle(cfg, 40, 20, propagator));
}
BENCHMARK(BM_BuildKrausCycle)
    ->Arg(static_cast<int>(dynamics::Propagator::kRk4))
    ->Arg(static_cast<int>(dynamics::Propagator::kExact))
    ->Unit(benchmark::kMillisecond);

void BM_ApplyKrausCycle(benchmark::State& state) {
  const dynamics::SynchronousCycle cycle(cycle_at(2.0), 40, 20);
  const auto& rho = steady_state();
  for (auto _ : state) benchmark::DoNotOptimize(cycle(rho));
}
BENCHMARK(BM_ApplyKrausCycle)->Unit(benchmark::kMicrosecond);

void BM_LossyCycle(benchmark::State& state) {
  auto cfg = cycle_at(2.0);
  cfg.gamma_s_signal = 0.1;
  cfg.gamma_s_pump = 0.1;
  const int ds = static_cast<int>(state.range(0)), dp = static_cast<int>(state.range(1));
  const auto rho = fock::DensityMatrix::vacuum({ds});
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::lossy_cycle(rho, cfg, dp));
}
BENCHMARK(BM_LossyCycle)->Args({16, 10})->Args({20, 12})->Unit(benchmark::kMillisecond);

void BM_AdiabaticEvolution(benchmark::State& state) {
  const dynamics::AdiabaticParams p{{0.128, 0.0}, 0.064};
  const auto rho = fock::DensityMatrix::vacuum({40});
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::evolve_adiabatic(rho, p, 1.0, 0.005));
}
BENCHMARK(BM_AdiabaticEvolution)->Unit(benchmark::kMillisecond);

void BM_FidelitySearch(benchmark::State& state) {
  const analysis::CatFidelitySearch search(40);
  const auto& rho = steady_state();
  for (auto _ : state) benchmark::DoNotOptimize(search(rho));
}
BENCHMARK(BM_FidelitySearch)->Unit(benchmark::kMicrosecond);

void BM_Wigner(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const auto spec = analysis::WignerGridSpec::covering(1.67, points);
  const auto& rho = steady_state();
  for (auto _ : state) benchmark::DoNotOptimize(analysis::wigner(rho, spec));
  state.SetItemsProcessed(state.iterations() * points * points);
}
BENCHMARK(BM_Wigner)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
