// Copyright 2026 The qsuper Authors
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

#include "qsuper/qsuper.hpp"

namespace {

using namespace qsuper;

void BM_VerifySwitch(benchmark::State& state) {
  const auto sw = build_quantum_switch(static_cast<Index>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_pure_superchannel(sw.unitary, sw.layout));
}
BENCHMARK(BM_VerifySwitch)->Arg(2)->Arg(3);

void BM_DecomposeD3d(benchmark::State& state) {
  const auto d3 = build_d3d_example();
  for (auto _ : state) benchmark::DoNotOptimize(direct_sum_decompose(d3.unitary, d3.layout));
}
BENCHMARK(BM_DecomposeD3d);

void BM_DecomposeRandomSum(benchmark::State& state) {
  const auto l = simple_layout(6, 2, 2, 2, 2, 6);
  const auto r = random_direct_sum(l, 4, 11);
  for (auto _ : state) benchmark::DoNotOptimize(direct_sum_decompose(r.instance.unitary, l));
}
BENCHMARK(BM_DecomposeRandomSum);

void BM_Staircase(benchmark::State& state) {
  std::vector<SystemDims> spaces;
  const std::vector<Index> dims = {4, 2, 2, 2, 2, 4};
  for (std::size_t m = 0; m < dims.size(); ++m) spaces.push_back(SystemDims{{"H" + std::to_string(m), dims[m]}});
  const SlotLayout l(spaces);
  const LinOp u = random_pure_comb(l, 3);
  for (auto _ : state) benchmark::DoNotOptimize(staircase_decompose(u, l));
}
BENCHMARK(BM_Staircase);

void BM_ReducedSubspace(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const SystemDims amb{{"E", n}, {"F", n}};
  Rng rng(5);
  const Subspace w = Subspace::from_spanning(amb, gaussian_matrix(n * n, n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(reduced_subspace(w, {"E"}, {"F"}));
}
BENCHMARK(BM_ReducedSubspace)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
