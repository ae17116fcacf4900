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

#include "gaussprep/prep1d.hpp"
#include "gaussprep/resample.hpp"

namespace {

void BM_Resample(benchmark::State &state) {
    gaussprep::PrepConfig cfg;
    cfg.n_qubits = static_cast<unsigned>(state.range(0));
    cfg.params = {cfg.n_qubits * 6.0, static_cast<double>(1u << (cfg.n_qubits - 1))};
    const gaussprep::ResampleInput input{gaussprep::prepare_xi(cfg).state, cfg.params};
    const gaussprep::ScaleMap map(1.5);
    const gaussprep::WindowSpec window = gaussprep::GaussianWindow{8.0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::resample(input, map, window));
}
BENCHMARK(BM_Resample)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ShiftAddB(benchmark::State &state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    const auto window = gaussprep::prepare_window(gaussprep::UniformWindow{8, false}, n, "B");
    gaussprep::PrepConfig cfg;
    cfg.n_qubits = n;
    cfg.params = {20.0, static_cast<double>(1u << (n - 1))};
    cfg.register_name = "A";
    const auto joint = gaussprep::tensor(gaussprep::prepare_xi(cfg).state, window);
    const gaussprep::ScaleMap map(1.5);
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::shift_add_B(joint, map));
}
BENCHMARK(BM_ShiftAddB)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
