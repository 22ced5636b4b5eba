// Copyright 2026 The freqdim Authors
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

#include "freqdim/dimension.hpp"
#include "freqdim/freqset.hpp"
#include "freqdim/netmeasure.hpp"
#include "freqdim/system.hpp"

namespace freqdim {
namespace {

FreqSetSpec uniform_spec(const SystemPtr& system, int n, const Rational& eps) {
  return {system, 1, FrequencyVector::parse("1/2,1/2", 1, 2), n, eps};
}

void BM_BuildFreqset(benchmark::State& state) {
  const auto spec = uniform_spec(ExpansionSystem::base(2), static_cast<int>(state.range(0)), Rational(1, 10));
  for (auto _ : state) benchmark::DoNotOptimize(build_freqset(spec).size());
}
BENCHMARK(BM_BuildFreqset)->Arg(12)->Arg(16)->Arg(20);

void BM_CylinderNetMeasure(benchmark::State& state) {
  const auto f = build_freqset(uniform_spec(ExpansionSystem::golden(), static_cast<int>(state.range(0)), Rational(1, 10)));
  for (auto _ : state) benchmark::DoNotOptimize(cylinder_net_measure(f, Rational(4, 5)).value);
  state.counters["members"] = static_cast<double>(f.size());
}
BENCHMARK(BM_CylinderNetMeasure)->Arg(10)->Arg(14)->Arg(18);

void BM_DyadicOuterMeasure(benchmark::State& state) {
  const auto f = build_freqset(uniform_spec(ExpansionSystem::base(2), static_cast<int>(state.range(0)), Rational(1, 10)));
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_outer_measure(f, Rational(4, 5), default_depth_cap(f)).bound.upper);
}
BENCHMARK(BM_DyadicOuterMeasure)->Arg(10)->Arg(14);

void BM_FreqSetMeasure(benchmark::State& state) {
  const auto spec = uniform_spec(ExpansionSystem::base(2), static_cast<int>(state.range(0)), Rational(1, 10));
  for (auto _ : state) {
    FreqSetMeasure meas(spec, Rational(4, 5));
    benchmark::DoNotOptimize(meas.total());
  }
}
BENCHMARK(BM_FreqSetMeasure)->Arg(16)->Arg(24)->Arg(32);

void BM_ExpandGolden(benchmark::State& state) {
  const SystemPtr golden = ExpansionSystem::golden();
  const Rational x(1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(expand(*golden, x, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ExpandGolden)->Arg(64)->Arg(256);

}  // namespace
}  // namespace freqdim

BENCHMARK_MAIN();
