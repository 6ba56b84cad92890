// Copyright 2026 the antideg authors
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

#include "antideg/comparison.hpp"
#include "antideg/rng.hpp"
#include "antideg/sdp.hpp"

using namespace antideg;

namespace {

void BM_tensor(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(1);
  const CMat a = rng.gaussian_matrix(d, d);
  const CMat b = rng.gaussian_matrix(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(BM_tensor)->Arg(4)->Arg(8)->Arg(16);

void BM_partial_trace(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(2);
  const CMat m = herm_part(rng.gaussian_matrix(d * d, d * d));
  for (auto _ : state)
    benchmark::DoNotOptimize(partial_trace(m, {{d, d}}, {0}));
}
BENCHMARK(BM_partial_trace)->Arg(4)->Arg(8);

void BM_hermitian_eig(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(3);
  const CMat m = herm_part(rng.gaussian_matrix(d, d));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_hermitian_eig)->Arg(9)->Arg(36);

void BM_choi_round_trip(benchmark::State& state) {
  Rng rng(4);
  const Channel c = rng.channel(3, 3);
  const CMat j = c.choi();
  for (auto _ : state)
    benchmark::DoNotOptimize(Channel::from_choi(3, 3, j).choi());
}
BENCHMARK(BM_choi_round_trip);

void BM_apply(benchmark::State& state) {
  Rng rng(5);
  const Channel c = rng.channel(3, 3);
  const CMat rho = rng.density(3);
  for (auto _ : state) benchmark::DoNotOptimize(antideg::apply(c, rho));
}
BENCHMARK(BM_apply);

void BM_complementary(benchmark::State& state) {
  Rng rng(6);
  const Channel c = rng.channel(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(complementary(c));
}
BENCHMARK(BM_complementary);

void BM_two_state_discrimination(benchmark::State& state) {
  Rng rng(7);
  Ensemble e;
  e.dim = 2;
  e.items.push_back({0.5, rng.density(2)});
  e.items.push_back({0.5, rng.density(2)});
  const Channel id2 = identity_channel(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(guessing_probability(id2, e).pstar);
}
BENCHMARK(BM_two_state_discrimination)->Unit(benchmark::kMillisecond);

void BM_degrading_fit_erasure(benchmark::State& state) {
  const Channel n = erasure(0.5);
  const Channel nc = complementary(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(degradability_sdp(nc, n).residual);
}
BENCHMARK(BM_degrading_fit_erasure)->Unit(benchmark::kMillisecond);

void BM_verdict_half_erasure(benchmark::State& state) {
  const Channel n = erasure(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(is_antidegradable(n).kind);
}
BENCHMARK(BM_verdict_half_erasure)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
