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

#include "gaussprep/prep1d.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace gaussprep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string path_string(std::uint64_t path, unsigned level) {
    if (level == 0) return "*";
    std::string s(level, '0');
    for (unsigned q = 0; q < level; ++q) {
        if ((path >> q) & 1u) s[level - 1 - q] = '1';
    }
    return s;
}

}  // namespace

const char *to_string(AngleMode mode) { return mode == AngleMode::Exact ? "exact" : "quantized"; }

void PrepConfig::validate() const {
    params.validate();
    if (n_qubits < 1) throw std::invalid_argument("PrepConfig: need at least one qubit");
    if (mode == AngleMode::Quantized && (angle_bits < 1 || angle_bits > 52)) {
        throw std::invalid_argument("PrepConfig: quantized mode needs 1 <= angle bits <= 52");
    }
}

std::uint64_t QuantizedAngle::numerator() const {
    std::uint64_t m = 0;
    for (const auto b : bits) m = (m << 1) | b;
    return m;
}

QuantizedAngle quantize_angle(double alpha, unsigned bits, AngleRounding rounding) {
    if (bits < 1 || bits > 52) throw std::invalid_argument("quantize_angle: bits must be in [1, 52]");
    if (!std::isfinite(alpha)) throw std::invalid_argument("quantize_angle: angle is not finite");
    double turns = std::fmod(alpha / kTwoPi, 1.0);
    if (turns < 0) turns += 1.0;
    const std::uint64_t steps = std::uint64_t{1} << bits;
    const double scaled = std::ldexp(turns, static_cast<int>(bits));
    const double rounded = rounding == AngleRounding::Nearest ? std::nearbyint(scaled) : std::floor(scaled);
    const std::uint64_t m = static_cast<std::uint64_t>(rounded) % steps;

    QuantizedAngle out;
    out.bits.resize(bits);
    for (unsigned i = 0; i < bits; ++i) out.bits[i] = static_cast<std::uint8_t>((m >> (bits - 1 - i)) & 1u);
    out.realized = kTwoPi * std::ldexp(static_cast<double>(m), -static_cast<int>(bits));
    return out;
}

std::span<const TraceRecord> CircuitTrace::level(unsigned i) const {
    if (i >= n_qubits) throw std::out_of_range("CircuitTrace::level: no such level");
    const std::size_t begin = (std::size_t{1} << i) - 1;
    return std::span<const TraceRecord>(records).subspan(begin, std::size_t{1} << i);
}

std::vector<double> CircuitTrace::level_angles(unsigned i) const {
    std::vector<double> out;
    for (const auto &r : level(i)) out.push_back(r.applied_angle());
    return out;
}

TraceSummary CircuitTrace::summary() const {
    TraceSummary s;
    s.records = records.size();
    s.levels = n_qubits;
    if (mode == AngleMode::Quantized) {
        s.standard_rotations = std::uint64_t{n_qubits} * angle_bits;
        s.angle_register_bits = angle_bits;
        for (unsigned i = 0; i < n_qubits; ++i) {
            std::uint64_t active = 0;
            for (const auto &r : level(i)) {
                active = std::max<std::uint64_t>(
                    active, static_cast<std::uint64_t>(std::count(r.quantized->bits.begin(), r.quantized->bits.end(), 1)));
            }
            s.max_active_rotations += active;
        }
    }
    return s;
}

PreparedState prepare_xi(const PrepConfig &config) {
    config.validate();
    const unsigned n = config.n_qubits;
    check_amplitude_budget(n);
    const std::uint64_t size = std::uint64_t{1} << n;

    CircuitTrace trace;
    trace.n_qubits = n;
    trace.mode = config.mode;
    trace.angle_bits = config.mode == AngleMode::Quantized ? config.angle_bits : 0;
    trace.params = config.params;
    trace.records.reserve(size - 1);

    std::vector<std::string> warnings;
    const double span = std::ldexp(1.0, static_cast<int>(n));
    const double room = std::min(config.params.mu, span - config.params.mu);
    if (room < 4.0 * config.params.sigma) {
        warnings.push_back("mu is within 4 sigma of the register edge; the state is visibly periodized");
    }

    std::vector<double> amps(size, 0.0);
    amps[0] = 1.0;
    std::vector<double> mus{config.params.mu};
    std::vector<double> level_error(n, 0.0);
    double sigma = config.params.sigma;
    bool health_flagged = false;

    for (unsigned level = 0; level < n; ++level) {
        const std::uint64_t count = std::uint64_t{1} << level;
        std::vector<double> next_mus(level + 1 < n ? 2 * count : 0);
        for (std::uint64_t p = 0; p < count; ++p) {
            TraceRecord rec;
            rec.level = level;
            rec.path = p;
            rec.params = {sigma, mus[p]};
            const RecursionAngle ra = recursion_angle(rec.params);
            rec.alpha = ra.alpha;
            if (ra.health_warning && !health_flagged) {
                health_flagged = true;
                warnings.push_back("branch masses deviated from the split identity at level " +
                                   std::to_string(level));
            }
            if (config.mode == AngleMode::Quantized) {
                rec.quantized = quantize_angle(ra.alpha, config.angle_bits, config.rounding);
                level_error[level] = std::max(level_error[level], std::abs(ra.alpha - rec.quantized->realized));
            }
            const double angle = rec.applied_angle();
            const double parent = amps[p];
            amps[p] = parent * std::cos(angle);
            amps[p + count] = parent * std::sin(angle);
            if (!next_mus.empty()) {
                next_mus[p] = rec.params.child(0).mu;
                next_mus[p + count] = rec.params.child(1).mu;
            }
            trace.records.push_back(std::move(rec));
        }
        mus = std::move(next_mus);
        sigma /= 2;
    }

    std::vector<Amplitude> complex_amps(amps.begin(), amps.end());
    return PreparedState{StateVector(RegisterLayout::single(config.register_name, n), std::move(complex_amps)),
                         std::move(trace), std::move(level_error), std::move(warnings)};
}

PreparedState prepare_xi_quantized(const PrepConfig &config) {
    if (config.mode != AngleMode::Quantized) {
        throw std::invalid_argument("prepare_xi_quantized: config is not in quantized mode");
    }
    return prepare_xi(config);
}

StateVector replay_trace(const CircuitTrace &trace) {
    auto state = StateVector::basis_state(RegisterLayout::single("x", trace.n_qubits), 0);
    for (unsigned level = 0; level < trace.n_qubits; ++level) {
        const auto angles = trace.level_angles(level);
        state = apply_multiplexed_rotation(state, level, 0, level, angles);
    }
    return state;
}

StateVector apply_trace(const StateVector &state, std::string_view reg, const CircuitTrace &trace, bool inverse) {
    const auto &layout = state.layout();
    const std::size_t r = layout.index_of(reg);
    if (layout.registers()[r].width != trace.n_qubits) {
        throw std::invalid_argument("apply_trace: register width differs from the trace");
    }
    const unsigned offset = layout.offset(r);
    StateVector out = state;
    for (unsigned step = 0; step < trace.n_qubits; ++step) {
        const unsigned level = inverse ? trace.n_qubits - 1 - step : step;
        auto angles = trace.level_angles(level);
        if (inverse) {
            for (auto &a : angles) a = -a;
        }
        out = apply_multiplexed_rotation(out, offset + level, offset, level, angles);
    }
    return out;
}

void write_trace(std::ostream &out, const CircuitTrace &trace, const std::vector<std::string> &metadata) {
    for (const auto &line : metadata) out << "# " << line << '\n';
    out << "HEADER N " << trace.n_qubits << " MODE " << to_string(trace.mode) << " K " << trace.angle_bits
        << " SIGMA " << format_double(trace.params.sigma) << " MU " << format_double(trace.params.mu) << '\n';
    for (const auto &r : trace.records) {
        out << "LEVEL " << r.level << " PATH " << path_string(r.path, r.level) << " SIGMA "
            << format_double(r.params.sigma) << " MU " << format_double(r.params.mu) << " ALPHA "
            << format_double(r.alpha) << " BITS ";
        if (r.quantized) {
            for (const auto b : r.quantized->bits) out << static_cast<char>('0' + b);
        } else {
            out << '-';
        }
        out << '\n';
    }
}

unsigned angle_bits_for(double delta, unsigned n_qubits, double error_constant) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("angle_bits_for: target precision must be positive");
    }
    // delta = m 2^e with m in [0.5, 1); ceil(log2(cN/m) - e) = ceil(log2(cN/m)) - e
    // exactly, so halving delta adds exactly one bit.
    int e = 0;
    const double m = std::frexp(delta, &e);
    const double base = std::ceil(std::log2(error_constant * n_qubits / m));
    const long k = static_cast<long>(base) - e;
    return static_cast<unsigned>(std::max(1L, k));
}

GateCountReport gate_count_report(const CircuitTrace &trace, double delta_target, unsigned arithmetic_bits,
                                  double error_constant) {
    if (!(delta_target > 0.0)) throw std::invalid_argument("gate_count_report: delta_target must be positive");
    const TraceSummary s = trace.summary();
    GateCountReport r;
    r.n_qubits = trace.n_qubits;
    r.angle_bits = trace.angle_bits;
    r.standard_rotations = s.standard_rotations;
    r.max_active_rotations = s.max_active_rotations;
    r.delta_target = delta_target;
    r.bits_for_target = angle_bits_for(delta_target, trace.n_qubits, error_constant);
    r.predicted_distance =
        trace.angle_bits > 0 ? error_constant * trace.n_qubits * std::ldexp(1.0, -static_cast<int>(trace.angle_bits))
                             : 0.0;
    r.arithmetic_bits = arithmetic_bits;
    // Stored (sigma_i, mu_i) for levels 1..N-1, plus the working alpha and
    // its k-bit binary fraction.
    const unsigned k = trace.angle_bits > 0 ? trace.angle_bits : r.bits_for_target;
    r.supplementary_bits = 2ull * (trace.n_qubits - 1) * arithmetic_bits + arithmetic_bits + k;
    return r;
}

}  // namespace gaussprep
