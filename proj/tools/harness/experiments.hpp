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

#ifndef GAUSSPREP_HARNESS_EXPERIMENTS_HPP
#define GAUSSPREP_HARNESS_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gaussprep/prep1d.hpp"
#include "io.hpp"

namespace gaussprep::harness {

// Parameter sweeps behind `gaussprep sweep` and the acceptance suite.
//
//   angle-bits   distance(exact, quantized) vs k at fixed (N, sigma, mu)
//   window-size  band gap and resampling quality vs uniform half-width n
//   sigma-ladder band gap and resampling quality vs the width of psi
//   nd-ladder    prepnd fidelity vs scale s of A = s [[2,1],[1,2]]
struct ExperimentConfig {
    std::string id;
    unsigned n_qubits = 8;
    GaussianParams params{16.0, 128.0};
    std::vector<unsigned> angle_bits{8, 9, 10, 11, 12, 13, 14, 15, 16};
    std::vector<double> psi_sigmas{30.0, 60.0, 120.0};
    double psi_mu = 512.0;
    std::vector<std::int64_t> half_widths{4, 16, 64};
    std::int64_t half_width = 16;
    double psi_sigma = 60.0;
    double a = 1.5;
    std::vector<double> scales{0.08, 0.04, 0.02};
    unsigned k_bits = 6;
    std::filesystem::path out_dir;

    /// Checks the id and that every grid point fits the amplitude cap.
    void validate() const;
    Params params_map() const;
};

struct AngleBitsRow {
    unsigned k = 0;
    double distance = 0.0;
    double bound = 0.0;
};

struct AngleBitsSweep {
    std::vector<AngleBitsRow> rows;
    double slope = 0.0;  // least squares of log2(distance) on k
};

AngleBitsSweep sweep_angle_bits(const GaussianParams &params, unsigned n_qubits, const std::vector<unsigned> &bits);

/// Least-squares slope of y on x.
double fit_slope(const std::vector<double> &x, const std::vector<double> &y);

struct BandRow {
    double psi_sigma = 0.0;
    std::int64_t half_width = 0;
    double strip_gap = 0.0;
};

/// Band gap after shift_add_B with a uniform window of half-width n; psi is
/// the periodized Gaussian (sigma, mu) on N qubits.
BandRow band_gap(double psi_sigma, double psi_mu, std::int64_t half_width, double a, unsigned n_qubits);

struct NdRow {
    double scale = 0.0;
    double min_sigma = 0.0;
    double fidelity = 0.0;
    double tail_mass = 0.0;
};

NdRow nd_point(double scale, unsigned k_bits);

std::string angle_bits_csv(const AngleBitsSweep &sweep, const std::vector<std::string> &metadata);

/// Runs one experiment, writes <out_dir>/<id>.csv and returns its path.
std::filesystem::path run_experiment(const ExperimentConfig &config);

}  // namespace gaussprep::harness

#endif  // GAUSSPREP_HARNESS_EXPERIMENTS_HPP
