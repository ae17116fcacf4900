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

#include "gaussprep/theta.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gaussprep {

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("theta: eps must lie in (0, 1), got " + std::to_string(eps));
    }
}

// Exponents below this underflow to zero in double precision.
constexpr double kUnderflowExponent = 745.0;

}  // namespace

void GaussianParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("GaussianParams: sigma must be positive and finite");
    }
    if (!std::isfinite(mu)) {
        throw std::invalid_argument("GaussianParams: mu must be finite");
    }
}

const char *to_string(ThetaBranch branch) {
    switch (branch) {
        case ThetaBranch::Direct:
            return "direct";
        case ThetaBranch::Poisson:
            return "poisson";
    }
    return "?";
}

ThetaValue theta_direct(const GaussianParams &params, double eps) {
    params.validate();
    check_eps(eps);
    const double s2 = params.sigma * params.sigma;
    // Offset from the dominant lattice point; |d| <= 1/2.
    const double d = params.mu - std::round(params.mu);
    const double ad = std::abs(d);

    // Terms are scaled by the dominant one, exp(-d^2/s2), so sum >= 1.
    double sum = 1.0;
    int terms = 1;
    for (long step = 1;; ++step) {
        const double s = static_cast<double>(step);
        const double toward = std::exp(-(s * s - 2.0 * s * ad) / s2);
        const double away = std::exp(-(s * s + 2.0 * s * ad) / s2);
        sum += toward + away;
        terms += 2;

        // Both tails beyond `step` are dominated by a geometric series.
        const double n1 = s + 1.0;
        const double next = std::exp(-(n1 * n1 - 2.0 * n1 * ad) / s2);
        const double q = std::exp(-(2.0 * n1 + 1.0 - 2.0 * ad) / s2);
        if (terms >= 3 && (next == 0.0 || 2.0 * next < eps * sum * (1.0 - q))) {
            break;
        }
    }
    ThetaValue out;
    out.log_value = -d * d / s2 + std::log(sum);
    out.value = std::exp(out.log_value);
    out.branch = ThetaBranch::Direct;
    out.terms = terms;
    return out;
}

ThetaValue theta_poisson(const GaussianParams &params, double eps) {
    params.validate();
    check_eps(eps);
    const double pi = std::numbers::pi;
    const double c = pi * pi * params.sigma * params.sigma;
    const double d = params.mu - std::round(params.mu);

    double sum = 1.0;
    int terms = 1;
    for (long step = 1;; ++step) {
        const double k = static_cast<double>(step);
        sum += 2.0 * std::exp(-c * k * k) * std::cos(2.0 * pi * k * d);
        ++terms;

        const double k1 = k + 1.0;
        const double next = std::exp(-c * k1 * k1);
        const double q = std::exp(-c * (2.0 * k1 + 1.0));
        if (terms >= 3 && (next == 0.0 || 2.0 * next < eps * std::abs(sum) * (1.0 - q))) {
            break;
        }
    }
    if (!(sum > 0.0)) {
        // Only reachable far below the regime switch, where cancellation wins.
        throw std::domain_error("theta_poisson: series cancelled to a non-positive value; use theta_direct");
    }
    ThetaValue out;
    out.log_value = std::log(params.sigma * std::sqrt(pi)) + std::log(sum);
    out.value = std::exp(out.log_value);
    out.branch = ThetaBranch::Poisson;
    out.terms = terms;
    return out;
}

ThetaValue theta(const GaussianParams &params, double eps) {
    if (params.sigma <= kThetaSigmaSwitch) {
        return theta_direct(params, eps);
    }
    return theta_poisson(params, eps);
}

RecursionAngle recursion_angle(const GaussianParams &params, double eps) {
    const double parent = theta(params, eps).log_value;
    const double even = theta(params.child(0), eps).log_value;
    const double odd = theta(params.child(1), eps).log_value;

    RecursionAngle out;
    out.even_ratio = std::exp(even - parent);
    out.odd_ratio = std::exp(odd - parent);
    // atan2 keeps full relative precision in whichever branch is small.
    out.alpha = std::atan2(std::sqrt(out.odd_ratio), std::sqrt(out.even_ratio));
    const double budget = 4.0 * DBL_EPSILON;
    out.health_warning = out.even_ratio > 1.0 + budget || out.odd_ratio > 1.0 + budget ||
                         std::abs(out.even_ratio + out.odd_ratio - 1.0) > 1e-12;
    return out;
}

std::vector<double> periodized_oracle(const GaussianParams &params, unsigned n_qubits) {
    params.validate();
    if (n_qubits < 1 || n_qubits > 40) {
        throw std::invalid_argument("periodized_oracle: qubit count must be in [1, 40]");
    }
    const std::uint64_t size = std::uint64_t{1} << n_qubits;
    const double period = static_cast<double>(size);
    const double log_norm = theta(params).log_value;
    const double s2 = params.sigma * params.sigma;
    const double reach = params.sigma * std::sqrt(kUnderflowExponent);

    std::vector<double> out(size);
    for (std::uint64_t i = 0; i < size; ++i) {
        const double x0 = static_cast<double>(i);
        const double j_lo = std::ceil((params.mu - reach - x0) / period);
        const double j_hi = std::floor((params.mu + reach - x0) / period);
        double mass = 0.0;
        for (double j = j_lo; j <= j_hi; j += 1.0) {
            const double dx = x0 + j * period - params.mu;
            mass += std::exp(-dx * dx / s2 - log_norm);
        }
        out[i] = std::sqrt(mass);
    }
    return out;
}

}  // namespace gaussprep
