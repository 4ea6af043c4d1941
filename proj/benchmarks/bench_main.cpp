// Copyright 2026 The steercert Authors
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
#include <random>

#include <benchmark/benchmark.h>

#include "steercert/guessing.hpp"
#include "steercert/steering.hpp"
#include "steercert/verification.hpp"

namespace {

using namespace steercert;

void BM_GuessingSolve(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec::maximal(d));
  GuessingOptions o;
  o.beta_max = 2.0;
  o.keep_attack = false;
  int iterations = 0;
  for (auto _ : state) {
    const GuessingCertificate c = guessing_probability(f, 1.95, 1, o);
    iterations = c.report.iterations;
    benchmark::DoNotOptimize(c.p_guess_dual);
  }
  state.counters["ipm_iterations"] = iterations;
}
BENCHMARK(BM_GuessingSolve)->DenseRange(2, 8, 2)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GuessingSolveNearMaximum(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec::maximal(d));
  GuessingOptions o;
  o.beta_max = 2.0;
  o.keep_attack = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(guessing_probability(f, 2.0 - 1e-6, 1, o).p_guess_dual);
  }
}
BENCHMARK(BM_GuessingSolveNearMaximum)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_LhsBound(benchmark::State& state) {
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec::maximal(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(lhs_bound(f));
}
BENCHMARK(BM_LhsBound)->RangeMultiplier(2)->Range(2, 32);

void BM_UniqueDistributions(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(0);
  const EnsemblePair p = random_ensemble_pair(d, rng);
  UniqueDistributionsOptions o;
  o.coeff_floor = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(unique_distributions(p.set_a, p.set_b, o).q);
}
BENCHMARK(BM_UniqueDistributions)->RangeMultiplier(2)->Range(2, 16);

}  // namespace
BENCHMARK_MAIN();
