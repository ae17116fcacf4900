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

#include "reports.hpp"

#include <algorithm>
#include <numeric>

namespace gaussprep::harness {

nlohmann::json to_json(const GateCountReport &r) {
    return {{"n_qubits", r.n_qubits},
            {"angle_bits", r.angle_bits},
            {"standard_rotations", r.standard_rotations},
            {"max_active_rotations", r.max_active_rotations},
            {"delta_target", r.delta_target},
            {"bits_for_target", r.bits_for_target},
            {"predicted_distance", r.predicted_distance},
            {"error_constant", kAngleErrorConstant},
            {"arithmetic_bits", r.arithmetic_bits},
            {"supplementary_bits", r.supplementary_bits}};
}

nlohmann::json to_json(const UdutDecomposition &dec) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto &f : dec.factors) factors.push_back({{"row", f.row}, {"col", f.col}, {"value", f.value}});
    return {{"dim", dec.dim}, {"diagonal", dec.diagonal}, {"factors", factors}, {"shear_matrix", dec.shear_matrix()}};
}

nlohmann::json to_json(const QuadraticForm &form, const NdPreparation &prepared, const NdReport &report) {
    nlohmann::json j;
    j["matrix"] = std::vector<double>(form.entries().begin(), form.entries().end());
    j["decomposition"] = to_json(prepared.decomposition);
    j["congruence_residual"] = report.residual;
    j["det_a"] = report.det_a;
    j["det_d"] = report.det_d;
    j["tail_mass_estimate"] = report.tail_mass;
    j["fidelity"] = report.fidelity ? nlohmann::json(*report.fidelity) : nlohmann::json(nullptr);
    j["warnings"] = prepared.warnings;
    return j;
}

nlohmann::json to_json(const ResampleReport &r) {
    std::vector<std::size_t> order(r.a_marginal.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return r.a_marginal[x] > r.a_marginal[y]; });
    nlohmann::json leaks = nlohmann::json::array();
    for (const auto v : order) {
        if (v == 0) continue;
        if (leaks.size() == 16 || r.a_marginal[v] == 0.0) break;
        leaks.push_back({{"a_value", v}, {"mass", r.a_marginal[v]}});
    }
    return {{"a", r.a},
            {"n_qubits", r.n_qubits},
            {"window", r.window},
            {"uncompute_window", r.uncompute_window},
            {"band_width_used", r.band_width},
            {"window_rounding", r.window_rounding},
            {"prob_A_zero", r.prob_A_zero},
            {"fidelity_B_vs_target", r.fidelity_B_vs_target},
            {"strip_agreement", r.strip_agreement},
            {"leaked_mass", r.leaked_mass},
            {"largest_leaks", leaks},
            {"a_marginal", r.a_marginal},
            {"stage_norm_error", r.stage_norm_error},
            {"warnings", r.warnings}};
}

}  // namespace gaussprep::harness
