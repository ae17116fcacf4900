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

#include "gaussprep/resample.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace gaussprep {

namespace {

std::int64_t modulo(std::int64_t v, std::int64_t p) {
    const std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

void check_window_fits(const WindowSpec &spec, unsigned n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("window: qubit count must be in [1, 30]");
    if (const auto *u = std::get_if<UniformWindow>(&spec)) {
        if (u->half_width < 1) throw std::invalid_argument("uniform window: half-width must be at least 1");
        if (2 * u->half_width > (std::int64_t{1} << n_qubits)) {
            throw std::invalid_argument("uniform window: 2n = " + std::to_string(2 * u->half_width) +
                                        " exceeds the register size");
        }
    } else {
        const auto &g = std::get<GaussianWindow>(spec);
        GaussianParams{g.sigma, g.mu}.validate();
    }
}

std::vector<Amplitude> uniform_window_amplitudes(const UniformWindow &w, unsigned n_qubits) {
    const SignedCodec codec(n_qubits);
    std::vector<Amplitude> amps(std::uint64_t{1} << n_qubits);
    const double value = 1.0 / std::sqrt(2.0 * static_cast<double>(w.half_width));
    const std::int64_t first = w.reflected ? 1 - w.half_width : -w.half_width;
    for (std::int64_t j = first; j < first + 2 * w.half_width; ++j) amps[codec.encode(codec.wrap(j))] = value;
    return amps;
}

// Householder reflection through (|0> - |w>) on one register: swaps |0> and
// |w>, is real and self-inverse.
StateVector reflect_register(const StateVector &joint, std::string_view reg, const StateVector &window) {
    const auto &layout = joint.layout();
    const std::size_t r = layout.index_of(reg);
    const unsigned width = layout.registers()[r].width;
    if (width != window.num_qubits()) throw std::invalid_argument("window width differs from the register");
    const unsigned off = layout.offset(r);

    std::vector<std::pair<std::uint64_t, double>> v;  // sparse (value, coefficient)
    double vnorm2 = 0.0;
    for (std::uint64_t k = 0; k < window.size(); ++k) {
        const double coef = (k == 0 ? 1.0 : 0.0) - window[k].real();
        if (coef != 0.0) {
            v.emplace_back(k, coef);
            vnorm2 += coef * coef;
        }
    }
    if (v.empty()) return joint;

    std::vector<Amplitude> out(joint.amplitudes().begin(), joint.amplitudes().end());
    const std::uint64_t low_mask = (std::uint64_t{1} << off) - 1;
    const std::uint64_t contexts = joint.size() >> width;
    for (std::uint64_t c = 0; c < contexts; ++c) {
        const std::uint64_t base = ((c & ~low_mask) << width) | (c & low_mask);
        Amplitude dot = 0.0;
        for (const auto &[k, coef] : v) dot += coef * out[base | (k << off)];
        const Amplitude scale = 2.0 * dot / vnorm2;
        for (const auto &[k, coef] : v) out[base | (k << off)] -= scale * coef;
    }
    return StateVector(layout, std::move(out));
}

std::string short_double(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

std::string describe(const WindowSpec &spec) {
    if (const auto *u = std::get_if<UniformWindow>(&spec)) {
        return "uniform:" + std::to_string(u->half_width) + (u->reflected ? ",reflected" : "");
    }
    const auto &g = std::get<GaussianWindow>(spec);
    return "gaussian:" + format_double(g.sigma) + "," + format_double(g.mu);
}

WindowSpec scaled_window(const WindowSpec &spec, double a) {
    if (const auto *u = std::get_if<UniformWindow>(&spec)) {
        const auto n = static_cast<std::int64_t>(std::llround(a * static_cast<double>(u->half_width)));
        return UniformWindow{std::max<std::int64_t>(1, n), !u->reflected};
    }
    const auto &g = std::get<GaussianWindow>(spec);
    return GaussianWindow{a * g.sigma, 0.0 - a * g.mu};
}

ScaleMap::ScaleMap(double a) : a_(a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("ScaleMap: a must be positive and finite");
}

std::int64_t ScaleMap::forward(std::int64_t x) const {
    return static_cast<std::int64_t>(std::floor(static_cast<double>(x) / a_));
}

std::int64_t ScaleMap::pullback(std::int64_t y) const {
    return static_cast<std::int64_t>(std::floor(a_ * static_cast<double>(y)));
}

StateVector prepare_window(const WindowSpec &spec, unsigned n_qubits, const std::string &reg) {
    check_window_fits(spec, n_qubits);
    if (const auto *u = std::get_if<UniformWindow>(&spec)) {
        return StateVector(RegisterLayout::single(reg, n_qubits), uniform_window_amplitudes(*u, n_qubits));
    }
    const auto &g = std::get<GaussianWindow>(spec);
    PrepConfig cfg;
    cfg.params = {g.sigma, g.mu};
    cfg.n_qubits = n_qubits;
    cfg.register_name = reg;
    return prepare_xi(cfg).state;
}

WindowPreparation::WindowPreparation(const WindowSpec &spec, unsigned n_qubits)
    : spec_(spec), state_(prepare_window(spec, n_qubits)) {
    if (const auto *g = std::get_if<GaussianWindow>(&spec)) {
        PrepConfig cfg;
        cfg.params = {g->sigma, g->mu};
        cfg.n_qubits = n_qubits;
        cfg.register_name = "w";
        trace_ = prepare_xi(cfg).trace;
    }
}

StateVector WindowPreparation::unprepare(const StateVector &joint, std::string_view reg) const {
    if (trace_) return apply_trace(joint, reg, *trace_, /*inverse=*/true);
    return reflect_register(joint, reg, state_);
}

std::vector<std::string> WindowPreparation::warnings() const {
    std::vector<std::string> out;
    if (const auto *g = std::get_if<GaussianWindow>(&spec_)) {
        if (g->sigma <= 1.0) out.push_back("gaussian window sigma <= 1 is not wide compared to the grid");
    } else {
        out.push_back("uniform window is initialized directly; its circuit construction is not simulated");
    }
    return out;
}

RegisterLayout resample_layout(unsigned n_qubits) {
    return RegisterLayout({Register{"A", n_qubits}, Register{"B", n_qubits}});
}

StateVector shift_add_B(const StateVector &state_ab, const ScaleMap &map, bool inverse) {
    const auto &layout = state_ab.layout();
    const std::size_t ra = layout.index_of("A");
    const std::size_t rb = layout.index_of("B");
    const auto period = static_cast<std::int64_t>(std::uint64_t{1} << layout.registers()[rb].width);
    return permute_basis(state_ab, [&](std::uint64_t index) {
        const auto x = static_cast<std::int64_t>(layout.extract(index, ra));
        const auto b = static_cast<std::int64_t>(layout.extract(index, rb));
        const std::int64_t step = map.forward(x);
        const std::int64_t moved = modulo(inverse ? b - step : b + step, period);
        return layout.insert(index, rb, static_cast<std::uint64_t>(moved));
    });
}

StateVector uncompute_A_side(const StateVector &state_ab, const ScaleMap &map, const WindowSpec &spec) {
    const auto &layout = state_ab.layout();
    const std::size_t ra = layout.index_of("A");
    const std::size_t rb = layout.index_of("B");
    const unsigned n = layout.registers()[ra].width;
    const auto period = static_cast<std::int64_t>(std::uint64_t{1} << n);
    auto shifted = permute_basis(state_ab, [&](std::uint64_t index) {
        const auto x = static_cast<std::int64_t>(layout.extract(index, ra));
        const auto y = static_cast<std::int64_t>(layout.extract(index, rb));
        const std::int64_t moved = modulo(x - map.pullback(y), period);
        return layout.insert(index, ra, static_cast<std::uint64_t>(moved));
    });
    const WindowPreparation window(scaled_window(spec, map.a()), n);
    return window.unprepare(shifted, "A");
}

BandDiagnostic band_diagnostic(const StateVector &state_ab, const ScaleMap &map, double threshold) {
    const auto &layout = state_ab.layout();
    const std::size_t ra = layout.index_of("A");
    const std::size_t rb = layout.index_of("B");
    const unsigned n = layout.registers()[rb].width;
    const SignedCodec offsets(n);

    std::vector<double> strip = register_marginal(state_ab, "A");
    double vmax = 0.0;
    for (auto &v : strip) {
        v = std::sqrt(v);
        vmax = std::max(vmax, v);
    }
    double amax = 0.0;
    for (const auto &amp : state_ab.amplitudes()) amax = std::max(amax, std::norm(amp));

    const double last = static_cast<double>(strip.size() - 1);
    auto strip_at = [&](double t) {
        if (t < 0.0 || t > last) return 0.0;
        const double lo = std::floor(t);
        const auto i = static_cast<std::size_t>(lo);
        const double frac = t - lo;
        if (frac == 0.0) return strip[i];
        return strip[i] * (1.0 - frac) + strip[i + 1] * frac;
    };

    BandDiagnostic out;
    if (vmax == 0.0) return out;
    for (std::uint64_t index = 0; index < state_ab.size(); ++index) {
        const Amplitude amp = state_ab[index];
        if (std::norm(amp) < threshold * amax || std::norm(amp) == 0.0) continue;
        const auto x = static_cast<std::int64_t>(layout.extract(index, ra));
        const auto b = static_cast<std::int64_t>(layout.extract(index, rb));
        const std::int64_t fx = map.forward(x);
        const std::int64_t y = fx + offsets.wrap(b - fx);
        BandPoint p;
        p.x = x;
        p.y = y;
        p.amplitude = amp;
        p.gap = std::abs(strip[static_cast<std::size_t>(x)] - strip_at(map.a() * static_cast<double>(y))) / vmax;
        out.max_gap = std::max(out.max_gap, p.gap);
        out.points.push_back(p);
    }
    return out;
}

void write_band_csv(std::ostream &out, const BandDiagnostic &band, const std::vector<std::string> &metadata) {
    for (const auto &line : metadata) out << "# " << line << '\n';
    out << "x,y,re,im,abs2\n";
    for (const auto &p : band.points) {
        out << p.x << ',' << p.y << ',' << format_double(p.amplitude.real()) << ','
            << format_double(p.amplitude.imag()) << ',' << format_double(std::norm(p.amplitude)) << '\n';
    }
}

ResampleError::ResampleError(const std::string &what, ResampleReport report)
    : std::runtime_error(what), report_(std::move(report)) {}

StateVector resample_target(const ResampleInput &input, const ScaleMap &map) {
    const unsigned n = input.psi.num_qubits();
    const auto layout = RegisterLayout::single("B", n);
    if (input.gaussian) {
        const auto xi = periodized_oracle({input.gaussian->sigma / map.a(), input.gaussian->mu / map.a()}, n);
        return StateVector::normalized(layout, std::vector<Amplitude>(xi.begin(), xi.end()));
    }
    const double last = static_cast<double>(input.psi.size() - 1);
    std::vector<Amplitude> amps(input.psi.size());
    for (std::uint64_t y = 0; y < amps.size(); ++y) {
        const double t = map.a() * static_cast<double>(y);
        if (t > last) continue;
        const double lo = std::floor(t);
        const auto i = static_cast<std::uint64_t>(lo);
        const double frac = t - lo;
        const Amplitude v = frac == 0.0 ? input.psi[i] : input.psi[i] * (1.0 - frac) + input.psi[i + 1] * frac;
        amps[y] = std::sqrt(map.a()) * v;
    }
    return StateVector::normalized(layout, std::move(amps));
}

ResampleResult resample(const ResampleInput &input, const ScaleMap &map, const WindowSpec &spec,
                        bool keep_band_state) {
    const unsigned n = input.psi.num_qubits();
    check_amplitude_budget(2 * n);
    check_window_fits(spec, n);
    const WindowSpec unwindow = scaled_window(spec, map.a());
    check_window_fits(unwindow, n);

    ResampleReport report;
    report.a = map.a();
    report.n_qubits = n;
    report.window = describe(spec);
    report.uncompute_window = describe(unwindow);
    if (const auto *g = std::get_if<GaussianWindow>(&spec)) report.band_width = g->sigma;
    if (const auto *u = std::get_if<UniformWindow>(&spec)) {
        report.band_width = 2.0 * static_cast<double>(u->half_width);
        const double exact = map.a() * static_cast<double>(u->half_width);
        report.window_rounding = std::abs(exact - static_cast<double>(std::get<UniformWindow>(unwindow).half_width));
        if (report.window_rounding > 0.0) {
            report.warnings.push_back("uncompute half-width a*n = " + short_double(exact) + " rounded to " +
                                      std::to_string(std::get<UniformWindow>(unwindow).half_width));
        }
    }
    const WindowPreparation window(spec, n);
    for (auto &w : window.warnings()) report.warnings.push_back(std::move(w));

    // Smoothness and edge checks on psi.
    {
        double peak = 0.0, jump = 0.0, mass_peak = 0.0;
        for (std::uint64_t x = 0; x < input.psi.size(); ++x) {
            peak = std::max(peak, std::abs(input.psi[x]));
            mass_peak = std::max(mass_peak, std::norm(input.psi[x]));
            if (x + 1 < input.psi.size()) jump = std::max(jump, std::abs(input.psi[x + 1] - input.psi[x]));
        }
        if (jump > 0.05 * peak) {
            report.warnings.push_back("psi is not slowly varying: max |psi(x+1) - psi(x)| = " +
                                      short_double(jump / peak) + " of its peak");
        }
        std::int64_t lo = -1, hi = -1;
        for (std::uint64_t x = 0; x < input.psi.size(); ++x) {
            if (std::norm(input.psi[x]) > 1e-12 * mass_peak) {
                if (lo < 0) lo = static_cast<std::int64_t>(x);
                hi = static_cast<std::int64_t>(x);
            }
        }
        double reach = 0.0;
        if (const auto *u = std::get_if<UniformWindow>(&spec)) {
            reach = static_cast<double>(u->half_width);
        } else {
            const auto &g = std::get<GaussianWindow>(spec);
            reach = std::abs(g.mu) + 6.0 * g.sigma;
        }
        const double image_lo = static_cast<double>(map.forward(lo)) - reach;
        const double image_hi = static_cast<double>(map.forward(hi)) + reach;
        if (image_lo < 0.0 || image_hi >= static_cast<double>(input.psi.size())) {
            report.warnings.push_back("the band around the image of psi's support reaches the register edge");
        }
    }

    auto note_norm = [&report](const StateVector &s) {
        report.stage_norm_error = std::max(report.stage_norm_error, std::abs(s.squared_norm() - 1.0));
    };

    const auto psi_a = input.psi.with_layout(RegisterLayout::single("A", n));
    auto eta1 = tensor(psi_a, window.state().with_layout(RegisterLayout::single("B", n)));
    note_norm(eta1);
    auto eta2 = shift_add_B(eta1, map);
    note_norm(eta2);
    report.strip_agreement = band_diagnostic(eta2, map).max_gap;
    auto eta3 = uncompute_A_side(eta2, map, spec);
    note_norm(eta3);

    report.a_marginal = register_marginal(eta3, "A");
    report.prob_A_zero = report.a_marginal[0];
    for (std::size_t v = 1; v < report.a_marginal.size(); ++v) report.leaked_mass += report.a_marginal[v];

    std::optional<StateVector> band_state;
    if (keep_band_state) band_state = std::move(eta2);

    auto projection = project_subregister(eta3, "A", 0);
    if (!projection.conditional) {
        throw ResampleError("resample: register A carries no mass on |0>; the parameters are unusable", report);
    }
    report.fidelity_B_vs_target = fidelity(*projection.conditional, resample_target(input, map));
    return ResampleResult{std::move(*projection.conditional), std::move(report), std::move(band_state)};
}

}  // namespace gaussprep
