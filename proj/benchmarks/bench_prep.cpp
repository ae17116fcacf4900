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
#include "gaussprep/prepnd.hpp"

namespace {

void BM_PrepareXi(benchmark::State &state) {
    gaussprep::PrepConfig cfg;
    cfg.n_qubits = static_cast<unsigned>(state.range(0));
    cfg.params = {static_cast<double>(1u << (cfg.n_qubits - 3)), static_cast<double>(1u << (cfg.n_qubits - 1))};
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::prepare_xi(cfg));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << cfg.n_qubits));
}
BENCHMARK(BM_PrepareXi)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_PrepareQuantized(benchmark::State &state) {
    gaussprep::PrepConfig cfg;
    cfg.n_qubits = 10;
    cfg.params = {32.0, 512.0};
    cfg.mode = gaussprep::AngleMode::Quantized;
    cfg.angle_bits = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::prepare_xi_quantized(cfg));
}
BENCHMARK(BM_PrepareQuantized)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Shear(benchmark::State &state) {
    const unsigned bits = static_cast<unsigned>(state.range(0));
    const gaussprep::QuadraticForm form(2, {0.02, 0.01, 0.01, 0.02});
    const auto dec = gaussprep::decompose(form);
    const auto base = gaussprep::prepare_diagonal(dec.diagonal, bits);
    const gaussprep::SignedCodec codec(bits);
    for (auto _ : state) benchmark::DoNotOptimize(gaussprep::apply_shears(base, dec, codec));
}
BENCHMARK(BM_Shear)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
