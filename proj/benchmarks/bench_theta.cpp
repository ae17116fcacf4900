// Copyright 2026 The gaussprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "gaussprep/theta.hpp"

namespace {

void BM_ThetaDirect(benchmark::State &state) {
    const gaussprep::GaussianParams p{static_cast<double>(state.range(0)), 0.37};
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::theta_direct(p));
}
BENCHMARK(BM_ThetaDirect)->Arg(1)->Arg(16)->Arg(256);

void BM_ThetaPoisson(benchmark::State &state) {
    const gaussprep::GaussianParams p{1.0 / static_cast<double>(state.range(0)), 0.37};
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::theta_poisson(p));
}
BENCHMARK(BM_ThetaPoisson)->Arg(1)->Arg(2)->Arg(4);

void BM_RecursionAngle(benchmark::State &state) {
    const gaussprep::GaussianParams p{static_cast<double>(state.range(0)), 12.25};
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::recursion_angle(p));
}
BENCHMARK(BM_RecursionAngle)->Arg(1)->Arg(64);

}  // namespace
