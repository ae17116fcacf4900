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

#include <gtest/gtest.h>

#include <cmath>

namespace gaussprep {
namespace {

StateVector psi_state(double sigma, double mu, unsigned n) {
    PrepConfig cfg;
    cfg.params = {sigma, mu};
    cfg.n_qubits = n;
    cfg.register_name = "A";
    return prepare_xi(cfg).state;
}

// B(y) = SUM_j w(j) w(-j') psi(y - j) for a = 1: the convolution of psi with
// the product of the window and its mirrored uncompute window.
struct ConvolutionOracle {
    double prob = 0.0;
    double fid = 0.0;
};

ConvolutionOracle identity_oracle(const StateVector &psi, const std::vector<double> &kernel, std::int64_t lo) {
    const auto n = static_cast<std::int64_t>(psi.size());
    std::vector<double> b(psi.size(), 0.0);
    for (std::int64_t y = 0; y < n; ++y) {
        for (std::size_t t = 0; t < kernel.size(); ++t) {
            const auto j = lo + static_cast<std::int64_t>(t);
            b[y] += kernel[t] * psi[((y - j) % n + n) % n].real();
        }
    }
    ConvolutionOracle out;
    double overlap = 0.0;
    for (std::int64_t y = 0; y < n; ++y) {
        out.prob += b[y] * b[y];
        overlap += b[y] * psi[y].real();
    }
    out.fid = std::abs(overlap) / std::sqrt(out.prob);
    return out;
}

TEST(ScaleMap, FloorsBothWays) {
    const ScaleMap m(1.5);
    EXPECT_EQ(m.forward(3), 2);
    EXPECT_EQ(m.forward(-1), -1);
    EXPECT_EQ(m.pullback(3), 4);
    EXPECT_EQ(m.pullback(-1), -2);
    EXPECT_THROW(ScaleMap(0.0), std::invalid_argument);
    EXPECT_THROW(ScaleMap(-2.0), std::invalid_argument);
}

TEST(Window, ScaledWindowStretchesAndMirrors) {
    const auto u = std::get<UniformWindow>(scaled_window(UniformWindow{8, false}, 1.5));
    EXPECT_EQ(u.half_width, 12);
    EXPECT_TRUE(u.reflected);
    const auto g = std::get<GaussianWindow>(scaled_window(GaussianWindow{16.0, 2.0}, 1.5));
    EXPECT_DOUBLE_EQ(g.sigma, 24.0);
    EXPECT_DOUBLE_EQ(g.mu, -3.0);
    EXPECT_EQ(describe(UniformWindow{4, true}), "uniform:4,reflected");
}

TEST(Window, UniformSupport) {
    const SignedCodec codec(5);
    for (const bool reflected : {false, true}) {
        const auto w = prepare_window(UniformWindow{3, reflected}, 5);
        for (std::uint64_t i = 0; i < 32; ++i) {
            const auto v = codec.decode(i);
            const bool inside = reflected ? (v >= -2 && v <= 3) : (v >= -3 && v <= 2);
            EXPECT_NEAR(std::abs(w[i]), inside ? 1.0 / std::sqrt(6.0) : 0.0, 1e-15);
        }
    }
    EXPECT_THROW(prepare_window(UniformWindow{17, false}, 5), std::invalid_argument);
    EXPECT_THROW(prepare_window(UniformWindow{0, false}, 5), std::invalid_argument);
}

TEST(Window, UnprepareReturnsToZero) {
    for (const WindowSpec spec : {WindowSpec{UniformWindow{5, false}}, WindowSpec{UniformWindow{5, true}},
                                  WindowSpec{GaussianWindow{3.0, 0.0}}, WindowSpec{GaussianWindow{2.5, -4.0}}}) {
        const WindowPreparation prep(spec, 6);
        const auto back = prep.unprepare(prep.state(), "w");
        EXPECT_NEAR(std::abs(back[0]), 1.0, 1e-13) << describe(spec);
    }
}

TEST(ShiftAddB, InverseRoundTrip) {
    const auto joint = tensor(psi_state(6.0, 30.0, 6), prepare_window(UniformWindow{4, false}, 6, "B"));
    const ScaleMap m(1.7);
    const auto moved = shift_add_B(joint, m);
    const auto back = shift_add_B(moved, m, true);
    for (std::uint64_t i = 0; i < joint.size(); ++i) EXPECT_EQ(back[i], joint[i]);
    // |x, 0> lands on |x, floor(x / a)>.
    const auto layout = resample_layout(6);
    const auto x = StateVector::basis_state(layout, layout.insert(0, 0, 20));
    const auto y = shift_add_B(x, m);
    EXPECT_EQ(y[layout.insert(layout.insert(0, 0, 20), 1, 11)], Amplitude(1.0));
}

TEST(Resample, IdentityGaussianMatchesConvolution) {
    const unsigned n = 8;
    const auto psi = psi_state(20.0, 128.0, n);
    const double w = 4.0;
    std::vector<double> kernel;
    double mass = 0.0;
    for (int j = -60; j <= 60; ++j) {
        kernel.push_back(std::exp(-static_cast<double>(j * j) / (w * w)));
        mass += kernel.back();
    }
    for (auto &k : kernel) k /= mass;
    const auto oracle = identity_oracle(psi, kernel, -60);
    const auto r = resample({psi, GaussianParams{20.0, 128.0}}, ScaleMap(1.0), GaussianWindow{w, 0.0});
    EXPECT_NEAR(r.report.prob_A_zero, oracle.prob, 1e-12);
    EXPECT_NEAR(r.report.fidelity_B_vs_target, oracle.fid, 1e-12);
}

TEST(Resample, IdentityUniformMatchesConvolution) {
    const unsigned n = 8;
    const auto psi = psi_state(20.0, 128.0, n);
    const std::int64_t half = 6;
    // Window j in [-n, n-1]; uncompute window needs -j, so every offset survives.
    const std::vector<double> kernel(2 * half, 1.0 / (2 * half));
    const auto oracle = identity_oracle(psi, kernel, -half);
    const auto r = resample({psi, GaussianParams{20.0, 128.0}}, ScaleMap(1.0), UniformWindow{half, false});
    EXPECT_NEAR(r.report.prob_A_zero, oracle.prob, 1e-12);
    EXPECT_NEAR(r.report.fidelity_B_vs_target, oracle.fid, 1e-12);
}

TEST(Resample, IdentityClosedFormAtFullSize) {
    // Continuum limit: P0 = sqrt(s^2 / (s^2 + w^2 / 2)).
    const double s = 60.0, w = 16.0;
    const auto r = resample({psi_state(s, 512.0, 10), GaussianParams{s, 512.0}}, ScaleMap(1.0), GaussianWindow{w, 0.0});
    const double v = s * s + w * w / 2;
    EXPECT_NEAR(r.report.prob_A_zero, std::sqrt(s * s / v), 1e-6);
    EXPECT_NEAR(r.report.fidelity_B_vs_target, std::sqrt(2 * s * std::sqrt(v) / (s * s + v)), 1e-6);
}

TEST(Resample, StretchedGaussian) {
    const auto r = resample({psi_state(60.0, 512.0, 10), GaussianParams{60.0, 512.0}}, ScaleMap(1.5),
                            GaussianWindow{16.0, 0.0});
    EXPECT_GE(r.report.fidelity_B_vs_target, 0.999);
    EXPECT_NEAR(r.report.prob_A_zero, 0.961584, 1e-5);
    EXPECT_EQ(r.b_state.layout(), RegisterLayout::single("B", 10));
    EXPECT_LE(r.report.stage_norm_error, 1e-12);
    double total = 0.0;
    for (const double m : r.report.a_marginal) total += m;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(r.report.leaked_mass, 1.0 - r.report.prob_A_zero, 1e-12);
    EXPECT_EQ(r.report.uncompute_window, "gaussian:24,0");
}

TEST(Resample, GaussianWindowBeatsUniformOfEqualWidth) {
    const ResampleInput in{psi_state(60.0, 512.0, 10), GaussianParams{60.0, 512.0}};
    const auto g = resample(in, ScaleMap(1.5), GaussianWindow{16.0, 0.0});
    const auto u = resample(in, ScaleMap(1.5), UniformWindow{8, false});
    EXPECT_GT(g.report.prob_A_zero, u.report.prob_A_zero);
}

TEST(Resample, TargetFromSampledPsi) {
    const auto psi = psi_state(40.0, 400.0, 10);
    const auto with = resample_target({psi, GaussianParams{40.0, 400.0}}, ScaleMap(2.0));
    const auto without = resample_target({psi, std::nullopt}, ScaleMap(2.0));
    EXPECT_GE(fidelity(with, without), 1.0 - 1e-5);
}

TEST(BandDiagnostic, GapShrinksForSmootherPsi) {
    double last = 1.0;
    for (const double s : {15.0, 30.0, 60.0}) {
        const auto r = resample({psi_state(s, 256.0, 9), GaussianParams{s, 256.0}}, ScaleMap(1.5),
                                UniformWindow{8, false}, true);
        ASSERT_TRUE(r.band_state);
        const auto band = band_diagnostic(*r.band_state, ScaleMap(1.5));
        EXPECT_LT(band.max_gap, last);
        EXPECT_NEAR(band.max_gap, r.report.strip_agreement, 1e-15);
        last = band.max_gap;
        for (const auto &p : band.points) EXPECT_LE(p.gap, band.max_gap);
    }
}

}  // namespace
}  // namespace gaussprep
