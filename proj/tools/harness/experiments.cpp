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

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaussprep/prepnd.hpp"
#include "gaussprep/resample.hpp"

namespace gaussprep::harness {

namespace {

const std::vector<std::string> kExperimentIds{"angle-bits", "window-size", "sigma-ladder", "nd-ladder"};

void require_budget(unsigned qubits, const std::string &what) {
    try {
        check_amplitude_budget(qubits);
    } catch (const MemoryCapError &e) {
        throw ValidationError(what + ": " + e.what());
    }
}

std::string join(const std::vector<std::string> &parts) {
    std::string out;
    for (const auto &p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

template <typename T>
std::string list_string(const std::vector<T> &values) {
    std::vector<std::string> parts;
    for (const auto &v : values) {
        if constexpr (std::is_floating_point_v<T>) {
            parts.push_back(format_double(v));
        } else {
            parts.push_back(std::to_string(v));
        }
    }
    return join(parts);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (std::find(kExperimentIds.begin(), kExperimentIds.end(), id) == kExperimentIds.end()) {
        throw ValidationError("unknown experiment '" + id + "'; expected one of " + join(kExperimentIds));
    }
    if (id == "angle-bits") {
        params.validate();
        require_budget(n_qubits, "angle-bits grid");
        if (angle_bits.empty()) throw ValidationError("angle-bits: empty k range");
        for (const auto k : angle_bits) {
            if (k < 1 || k > 52) throw ValidationError("angle-bits: k must be in [1, 52]");
        }
    } else if (id == "window-size" || id == "sigma-ladder") {
        require_budget(2 * n_qubits, id + " grid");
        if (!(a > 0.0)) throw ValidationError(id + ": a must be positive");
        const auto &ns = id == "window-size" ? half_widths : std::vector<std::int64_t>{half_width};
        for (const auto n : ns) {
            if (n < 1 || 2 * n > (std::int64_t{1} << n_qubits)) throw ValidationError(id + ": window does not fit");
        }
        for (const double s : id == "window-size" ? std::vector<double>{psi_sigma} : psi_sigmas) {
            if (!(s > 0.0)) throw ValidationError(id + ": psi sigma must be positive");
        }
    } else {
        require_budget(2 * k_bits, "nd-ladder grid");
        for (const double s : scales) {
            if (!(s > 0.0)) throw ValidationError("nd-ladder: scales must be positive");
        }
    }
}

Params ExperimentConfig::params_map() const {
    Params p{{"experiment", id}};
    if (id == "angle-bits") {
        p["n_qubits"] = std::to_string(n_qubits);
        p["sigma"] = format_double(params.sigma);
        p["mu"] = format_double(params.mu);
        p["k"] = list_string(angle_bits);
    } else if (id == "window-size" || id == "sigma-ladder") {
        p["n_qubits"] = std::to_string(n_qubits);
        p["a"] = format_double(a);
        p["psi_mu"] = format_double(psi_mu);
        if (id == "window-size") {
            p["psi_sigma"] = format_double(psi_sigma);
            p["half_widths"] = list_string(half_widths);
        } else {
            p["psi_sigmas"] = list_string(psi_sigmas);
            p["half_width"] = std::to_string(half_width);
        }
    } else {
        p["k_bits"] = std::to_string(k_bits);
        p["scales"] = list_string(scales);
    }
    return p;
}

double fit_slope(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AngleBitsSweep sweep_angle_bits(const GaussianParams &params, unsigned n_qubits, const std::vector<unsigned> &bits) {
    PrepConfig cfg;
    cfg.params = params;
    cfg.n_qubits = n_qubits;
    const auto exact = prepare_xi(cfg).state;

    AngleBitsSweep out;
    std::vector<double> xs, ys;
    for (const unsigned k : bits) {
        auto q = cfg;
        q.mode = AngleMode::Quantized;
        q.angle_bits = k;
        AngleBitsRow row;
        row.k = k;
        row.distance = distance(exact, prepare_xi_quantized(q).state);
        row.bound = kAngleErrorConstant * n_qubits * std::ldexp(1.0, -static_cast<int>(k));
        out.rows.push_back(row);
        xs.push_back(k);
        ys.push_back(std::log2(row.distance));
    }
    out.slope = xs.size() >= 2 ? fit_slope(xs, ys) : 0.0;
    return out;
}

BandRow band_gap(double psi_sigma, double psi_mu, std::int64_t half_width, double a, unsigned n_qubits) {
    PrepConfig cfg;
    cfg.params = {psi_sigma, psi_mu};
    cfg.n_qubits = n_qubits;
    const auto psi = prepare_xi(cfg).state.with_layout(RegisterLayout::single("A", n_qubits));
    const auto window = prepare_window(UniformWindow{half_width}, n_qubits, "B");
    const auto eta2 = shift_add_B(tensor(psi, window), ScaleMap(a));
    return BandRow{psi_sigma, half_width, band_diagnostic(eta2, ScaleMap(a)).max_gap};
}

NdRow nd_point(double scale, unsigned k_bits) {
    const QuadraticForm form(2, {2 * scale, scale, scale, 2 * scale});
    const auto prepared = prepare_general(form, k_bits);
    const auto report = nd_report(form, k_bits, std::nullopt, prepared);
    NdRow row;
    row.scale = scale;
    row.min_sigma = 1.0 / std::sqrt(*std::max_element(prepared.decomposition.diagonal.begin(),
                                                      prepared.decomposition.diagonal.end()));
    row.fidelity = report.fidelity.value_or(std::nan(""));
    row.tail_mass = report.tail_mass;
    return row;
}

std::string angle_bits_csv(const AngleBitsSweep &sweep, const std::vector<std::string> &metadata) {
    std::ostringstream out;
    for (const auto &m : metadata) out << "# " << m << '\n';
    out << "# slope " << format_double(sweep.slope) << " error_constant " << format_double(kAngleErrorConstant)
        << '\n';
    out << "k,distance,bound\n";
    for (const auto &r : sweep.rows) {
        out << r.k << ',' << format_double(r.distance) << ',' << format_double(r.bound) << '\n';
    }
    return out.str();
}

std::filesystem::path run_experiment(const ExperimentConfig &config) {
    config.validate();
    const auto metadata = csv_metadata("sweep", config.params_map());
    const auto path = config.out_dir / (config.id + ".csv");
    std::ostringstream out;

    if (config.id == "angle-bits") {
        write_text(path, angle_bits_csv(sweep_angle_bits(config.params, config.n_qubits, config.angle_bits), metadata));
        return path;
    }
    for (const auto &m : metadata) out << "# " << m << '\n';
    if (config.id == "nd-ladder") {
        out << "scale,min_sigma,fidelity,tail_mass\n";
        for (const double s : config.scales) {
            const auto r = nd_point(s, config.k_bits);
            out << format_double(r.scale) << ',' << format_double(r.min_sigma) << ',' << format_double(r.fidelity)
                << ',' << format_double(r.tail_mass) << '\n';
        }
        write_text(path, out.str());
        return path;
    }

    out << "psi_sigma,half_width,strip_gap,prob_A_zero,fidelity\n";
    std::vector<std::pair<double, std::int64_t>> grid;
    if (config.id == "window-size") {
        for (const auto n : config.half_widths) grid.emplace_back(config.psi_sigma, n);
    } else {
        for (const double s : config.psi_sigmas) grid.emplace_back(s, config.half_width);
    }
    for (const auto &[sigma, n] : grid) {
        PrepConfig cfg;
        cfg.params = {sigma, config.psi_mu};
        cfg.n_qubits = config.n_qubits;
        const ResampleInput input{prepare_xi(cfg).state, cfg.params};
        const auto res = resample(input, ScaleMap(config.a), UniformWindow{n});
        out << format_double(sigma) << ',' << n << ',' << format_double(res.report.strip_agreement) << ','
            << format_double(res.report.prob_A_zero) << ',' << format_double(res.report.fidelity_B_vs_target) << '\n';
    }
    write_text(path, out.str());
    return path;
}

}  // namespace gaussprep::harness
