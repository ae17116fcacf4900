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

#ifndef GAUSSPREP_THETA_HPP
#define GAUSSPREP_THETA_HPP

// Normalization sums of discrete Gaussians.
//
// f(sigma, mu) = SUM_n exp(-(n - mu)^2 / sigma^2), summed over all integers n,
// is the squared-norm normalizer of the integer-sampled Gaussian
// exp(-(i - mu)^2 / (2 sigma^2)). It is a special value of the third Jacobi
// theta function. Two evaluators are provided:
//
//   direct  - sum the lattice terms outward from the dominant point
//             n = round(mu); cheap for small sigma.
//   poisson - sigma*sqrt(pi) * SUM_k exp(-pi^2 sigma^2 k^2) cos(2 pi k mu),
//             the dual lattice sum; cheap for large sigma.
//
// Everything is carried as a natural logarithm so that ratios of f values
// survive when sigma is tiny and every term underflows.

#include <cstdint>
#include <vector>

namespace gaussprep {

/// Parameters (sigma, mu) of a discrete Gaussian, in grid units.
struct GaussianParams {
    double sigma = 1.0;
    double mu = 0.0;

    /// Throws std::invalid_argument unless sigma > 0 and mu is finite.
    void validate() const;

    /// Parameters of the child sub-lattice selected by the lowest bit:
    /// (sigma/2, (mu - bit)/2).
    [[nodiscard]] GaussianParams child(unsigned bit) const {
        return {sigma / 2, (mu - static_cast<double>(bit)) / 2};
    }
};

enum class ThetaBranch { Direct, Poisson };

const char *to_string(ThetaBranch branch);

struct ThetaValue {
    double log_value = 0.0;  // authoritative
    double value = 0.0;      // exp(log_value); may underflow to 0
    ThetaBranch branch = ThetaBranch::Direct;
    int terms = 0;
};

/// Regime switch between the direct and the dual-lattice evaluator.
inline constexpr double kThetaSigmaSwitch = 1.0;

/// Default relative tolerance used by callers that do not care.
inline constexpr double kThetaDefaultEps = 1e-16;

ThetaValue theta_direct(const GaussianParams &params, double eps = kThetaDefaultEps);
ThetaValue theta_poisson(const GaussianParams &params, double eps = kThetaDefaultEps);

/// Dispatches to theta_direct for sigma <= kThetaSigmaSwitch, else theta_poisson.
ThetaValue theta(const GaussianParams &params, double eps = kThetaDefaultEps);

struct RecursionAngle {
    double alpha = 0.0;      // in [0, pi/2]
    double even_ratio = 1.0; // f(sigma/2, mu/2) / f(sigma, mu)
    double odd_ratio = 0.0;  // f(sigma/2, (mu-1)/2) / f(sigma, mu)
    /// |even_ratio + odd_ratio - 1| exceeded the 4 ulp budget.
    bool health_warning = false;
};

/// Angle alpha with cos^2(alpha) = even-branch mass fraction and
/// sin^2(alpha) = odd-branch mass fraction.
RecursionAngle recursion_angle(const GaussianParams &params, double eps = kThetaDefaultEps);

/// Brute-force periodized Gaussian on 2^n_qubits points:
/// xi(i) = sqrt(SUM_j exp(-(i + j 2^N - mu)^2 / sigma^2) / f(sigma, mu)).
/// Independent of the recursive preparation; used as its oracle.
std::vector<double> periodized_oracle(const GaussianParams &params, unsigned n_qubits);

}  // namespace gaussprep

#endif  // GAUSSPREP_THETA_HPP
