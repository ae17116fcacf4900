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

#ifndef GAUSSPREP_PREP1D_HPP
#define GAUSSPREP_PREP1D_HPP

// Lowest-bit-first preparation of the periodized discrete Gaussian on N
// qubits. Qubit i is rotated by an angle that depends on the values of
// qubits 0..i-1 (the "path"); each path carries its own (sigma_i, mu_i),
// halved and shifted one level at a time.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaussprep/statevec.hpp"
#include "gaussprep/theta.hpp"

namespace gaussprep {

enum class AngleMode { Exact, Quantized };
enum class AngleRounding { Nearest, Truncate };

const char *to_string(AngleMode mode);

struct PrepConfig {
    GaussianParams params;
    unsigned n_qubits = 1;
    AngleMode mode = AngleMode::Exact;
    unsigned angle_bits = 0;  // used in Quantized mode
    AngleRounding rounding = AngleRounding::Nearest;
    std::string register_name = "x";

    void validate() const;
};

/// k-bit binary fraction of alpha / 2pi. bits[0] is the most significant
/// digit a_1 and selects R(pi); bits[k-1] selects R(pi / 2^(k-1)).
struct QuantizedAngle {
    std::vector<std::uint8_t> bits;
    double realized = 0.0;  // 2 pi * numerator / 2^k, in [0, 2 pi)

    std::uint64_t numerator() const;
};

QuantizedAngle quantize_angle(double alpha, unsigned bits, AngleRounding rounding = AngleRounding::Nearest);

struct TraceRecord {
    unsigned level = 0;
    std::uint64_t path = 0;  // qubits 0..level-1, qubit 0 least significant
    GaussianParams params;
    double alpha = 0.0;  // exact recursion angle
    std::optional<QuantizedAngle> quantized;

    double applied_angle() const { return quantized ? quantized->realized : alpha; }
};

struct TraceSummary {
    std::uint64_t records = 0;
    unsigned levels = 0;
    /// One controlled standard rotation per angle bit per level.
    std::uint64_t standard_rotations = 0;
    /// Sum over levels of the largest number of set angle bits on any path.
    std::uint64_t max_active_rotations = 0;
    unsigned angle_register_bits = 0;
};

/// Every rotation of a preparation, level-major with paths ascending, so that
/// level i occupies records [2^i - 1, 2^(i+1) - 1).
struct CircuitTrace {
    unsigned n_qubits = 0;
    AngleMode mode = AngleMode::Exact;
    unsigned angle_bits = 0;
    GaussianParams params;
    std::vector<TraceRecord> records;

    std::span<const TraceRecord> level(unsigned i) const;
    std::vector<double> level_angles(unsigned i) const;
    TraceSummary summary() const;
};

struct PreparedState {
    StateVector state;
    CircuitTrace trace;
    /// Largest |alpha - realized| per level; all zero in Exact mode.
    std::vector<double> level_angle_error;
    std::vector<std::string> warnings;
};

PreparedState prepare_xi(const PrepConfig &config);

/// prepare_xi restricted to Quantized mode; throws std::invalid_argument
/// otherwise.
PreparedState prepare_xi_quantized(const PrepConfig &config);

/// Rebuilds the state by applying the trace's rotations, level by level, to
/// |0...0>. Bit-identical to the state returned with the trace.
StateVector replay_trace(const CircuitTrace &trace);

/// Applies the traced circuit (or its inverse) to one register of a larger
/// state. The register must be as wide as the trace.
StateVector apply_trace(const StateVector &state, std::string_view reg, const CircuitTrace &trace, bool inverse);

/// Line-based trace format:
///   HEADER N <n> MODE <exact|quantized> K <k> SIGMA <s> MU <m>
///   LEVEL i PATH <bits|*> SIGMA <s> MU <m> ALPHA <a> BITS <a_1..a_k|->
/// PATH lists qubits i-1..0 left to right.
void write_trace(std::ostream &out, const CircuitTrace &trace, const std::vector<std::string> &metadata = {});

/// Frozen regression constant for distance(exact, quantized) <= c N 2^-k.
/// Summing per-level rotation errors bounds c by pi for nearest rounding;
/// the measured worst case over N = 4..12, k = 8..16 is 1.02.
inline constexpr double kAngleErrorConstant = 1.25;

struct GateCountReport {
    unsigned n_qubits = 0;
    unsigned angle_bits = 0;
    std::uint64_t standard_rotations = 0;
    std::uint64_t max_active_rotations = 0;
    double delta_target = 0.0;
    unsigned bits_for_target = 0;
    double predicted_distance = 0.0;  // at the trace's angle_bits
    unsigned arithmetic_bits = 0;
    std::uint64_t supplementary_bits = 0;
};

/// Throws std::invalid_argument if delta_target <= 0.
GateCountReport gate_count_report(const CircuitTrace &trace, double delta_target, unsigned arithmetic_bits = 64,
                                  double error_constant = kAngleErrorConstant);

/// Smallest k with error_constant * n * 2^-k <= delta.
unsigned angle_bits_for(double delta, unsigned n_qubits, double error_constant = kAngleErrorConstant);

}  // namespace gaussprep

#endif  // GAUSSPREP_PREP1D_HPP
