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

#ifndef GAUSSPREP_RESAMPLE_HPP
#define GAUSSPREP_RESAMPLE_HPP

// Two-register resampling of a slowly varying wavefunction under y = x / a.
//
// Register A holds psi(x); register B starts in a narrow window state. Adding
// floor(x/a) to B produces a band of width ~2n around the line y = x/a whose
// amplitudes are constant on vertical strips. The same band, built the other
// way around from xi(y) = sqrt(a) psi(a y), has amplitudes constant on
// horizontal strips; when psi varies slowly the two bands nearly coincide, so
// running the second construction backwards returns A to |0> and leaves xi
// on B.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaussprep/prep1d.hpp"
#include "gaussprep/statevec.hpp"
#include "gaussprep/theta.hpp"

namespace gaussprep {

/// (|-n> + ... + |n-1>) / sqrt(2n), signed values in two's complement.
/// The reflected window covers -(n-1) .. n instead.
struct UniformWindow {
    std::int64_t half_width = 1;
    bool reflected = false;
};

/// Periodized discrete Gaussian window.
struct GaussianWindow {
    double sigma = 1.0;
    double mu = 0.0;
};

using WindowSpec = std::variant<UniformWindow, GaussianWindow>;

std::string describe(const WindowSpec &spec);

/// Window the A side must be unprepared with. Band offsets map as
/// j' = x - floor(a y) ~ -a j, so the window is stretched by a and mirrored:
/// reflected half-width round(a n) for a uniform window, (a sigma, -a mu) for
/// a Gaussian one.
WindowSpec scaled_window(const WindowSpec &spec, double a);

class ScaleMap {
   public:
    explicit ScaleMap(double a);
    double a() const { return a_; }
    /// floor(x / a)
    std::int64_t forward(std::int64_t x) const;
    /// floor(a y)
    std::int64_t pullback(std::int64_t y) const;

   private:
    double a_;
};

/// A window state together with a unitary W with W|0> = window, so the
/// window can be un-prepared on any register of a larger state.
class WindowPreparation {
   public:
    /// Throws std::invalid_argument when the window does not fit N qubits.
    WindowPreparation(const WindowSpec &spec, unsigned n_qubits);

    const WindowSpec &spec() const { return spec_; }
    const StateVector &state() const { return state_; }
    /// Applies W^dagger to register `reg`.
    StateVector unprepare(const StateVector &joint, std::string_view reg) const;
    std::vector<std::string> warnings() const;

   private:
    WindowSpec spec_;
    StateVector state_;
    std::optional<CircuitTrace> trace_;  // Gaussian: the preparation circuit
};

/// Window amplitudes on a single register named `reg`.
StateVector prepare_window(const WindowSpec &spec, unsigned n_qubits, const std::string &reg = "w");

/// Joint layout: A (x axis, most significant) then B (y axis), N qubits each.
RegisterLayout resample_layout(unsigned n_qubits);

/// |x, b> -> |x, b + floor(x/a) mod 2^N>, or the modular subtraction.
StateVector shift_add_B(const StateVector &state_ab, const ScaleMap &map, bool inverse = false);

/// |x, y> -> |x - floor(a y) mod 2^N, y>, then W^dagger of the scaled window on A.
StateVector uncompute_A_side(const StateVector &state_ab, const ScaleMap &map, const WindowSpec &spec);

struct BandPoint {
    std::int64_t x = 0;
    std::int64_t y = 0;  // unwrapped: floor(x/a) + signed offset
    Amplitude amplitude;
    double gap = 0.0;
};

struct BandDiagnostic {
    /// max |v(x) - v(a y)| over band points, relative to max v, where v is
    /// the vertical-strip amplitude sqrt(SUM_y |amp(x, y)|^2) and v(a y) is
    /// linearly interpolated.
    double max_gap = 0.0;
    std::vector<BandPoint> points;
};

/// Expects the state right after shift_add_B. Points whose squared amplitude
/// is below `threshold` times the largest one are skipped.
BandDiagnostic band_diagnostic(const StateVector &state_ab, const ScaleMap &map, double threshold = 1e-10);

void write_band_csv(std::ostream &out, const BandDiagnostic &band, const std::vector<std::string> &metadata = {});

struct ResampleReport {
    double a = 1.0;
    unsigned n_qubits = 0;
    std::string window;
    std::string uncompute_window;
    /// 2n for a uniform window; sigma_w for a Gaussian one (sigma ~ 2n).
    double band_width = 0.0;
    double window_rounding = 0.0;  // |a n - round(a n)| for uniform windows
    double prob_A_zero = 0.0;
    double fidelity_B_vs_target = 0.0;
    double strip_agreement = 0.0;
    double leaked_mass = 0.0;
    /// Mass of register A per value after uncomputation.
    std::vector<double> a_marginal;
    double stage_norm_error = 0.0;  // worst |norm^2 - 1| across the unitary stages
    std::vector<std::string> warnings;
};

class ResampleError : public std::runtime_error {
   public:
    ResampleError(const std::string &what, ResampleReport report);
    const ResampleReport &report() const { return report_; }

   private:
    ResampleReport report_;
};

struct ResampleInput {
    StateVector psi;
    /// When psi is a periodized Gaussian, the target is evaluated analytically.
    std::optional<GaussianParams> gaussian;
};

struct ResampleResult {
    StateVector b_state;
    ResampleReport report;
    /// Joint state right after shift_add_B, for band plots.
    std::optional<StateVector> band_state;
};

/// Grid target xi(y) proportional to psi(a y), normalized on N qubits.
StateVector resample_target(const ResampleInput &input, const ScaleMap &map);

ResampleResult resample(const ResampleInput &input, const ScaleMap &map, const WindowSpec &spec,
                        bool keep_band_state = false);

}  // namespace gaussprep

#endif  // GAUSSPREP_RESAMPLE_HPP
