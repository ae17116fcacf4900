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

#include <gtest/gtest.h>

#include <cmath>

#include "acceptance.hpp"
#include "gaussprep/statevec.hpp"

namespace gaussprep::harness {
namespace {

TEST(Parse, Windows) {
    const auto u = std::get<UniformWindow>(parse_window("uniform:16"));
    EXPECT_EQ(u.half_width, 16);
    const auto g = std::get<GaussianWindow>(parse_window("gaussian:4.5,-1"));
    EXPECT_DOUBLE_EQ(g.sigma, 4.5);
    EXPECT_DOUBLE_EQ(g.mu, -1.0);
    EXPECT_DOUBLE_EQ(std::get<GaussianWindow>(parse_window("gaussian:3")).mu, 0.0);
    for (const auto *bad : {"uniform:", "uniform:x", "box:3", "gaussian:1,2,3", "gaussian:-1"}) {
        EXPECT_THROW((void)parse_window(bad), ValidationError) << bad;
    }
}

TEST(Parse, PsiAndLists) {
    const auto p = parse_psi("gaussian:60,512");
    ASSERT_TRUE(p.gaussian);
    EXPECT_DOUBLE_EQ(p.gaussian->sigma, 60.0);
    EXPECT_EQ(parse_psi("state.csv").file, "state.csv");
    EXPECT_THROW((void)parse_psi("gaussian:1"), ValidationError);
    EXPECT_EQ(parse_uint_range("8:11"), (std::vector<unsigned>{8, 9, 10, 11}));
    EXPECT_EQ(parse_uint_range("5"), (std::vector<unsigned>{5}));
    EXPECT_THROW((void)parse_uint_range("9:8"), ValidationError);
    EXPECT_EQ(parse_int_list("3,-2"), (std::vector<std::int64_t>{3, -2}));
    EXPECT_EQ(parse_double_list("0.5,2"), (std::vector<double>{0.5, 2.0}));
}

TEST(Experiment, ValidatesBeforeRunning) {
    ExperimentConfig c;
    c.id = "nope";
    EXPECT_THROW(c.validate(), ValidationError);
    c.id = "window-size";
    c.n_qubits = 6;
    c.half_widths = {4, 40};
    EXPECT_THROW(c.validate(), ValidationError);
    c.half_widths = {4};
    EXPECT_NO_THROW(c.validate());

    const auto cap = max_amplitudes();
    set_max_amplitudes(1u << 10);
    c.n_qubits = 6;
    EXPECT_THROW(c.validate(), ValidationError);
    set_max_amplitudes(cap);
}

TEST(Experiment, SlopeFit) {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 1, -1, -3};
    EXPECT_NEAR(fit_slope(x, y), -2.0, 1e-15);
}

TEST(Experiment, AngleBitsSlope) {
    const auto s = sweep_angle_bits({16.0, 128.0}, 8, {8, 9, 10, 11, 12, 13, 14, 15, 16});
    EXPECT_NEAR(s.slope, -0.956, 1e-3);
}

TEST(Experiment, BandGapLadders) {
    const double s30 = band_gap(30, 512, 16, 1.5, 10).strip_gap;
    const double s60 = band_gap(60, 512, 16, 1.5, 10).strip_gap;
    const double n4 = band_gap(60, 512, 4, 1.5, 10).strip_gap;
    EXPECT_GT(s30, s60);
    EXPECT_LT(n4, s60);
}

TEST(Experiment, NdLadderMonotone) {
    EXPECT_LT(nd_point(0.08, 6).fidelity, nd_point(0.04, 6).fidelity);
}

TEST(Acceptance, CriteriaAreNumbered) {
    EXPECT_THROW((void)run_criterion(0), std::out_of_range);
    EXPECT_THROW((void)run_criterion(kCriterionCount + 1), std::out_of_range);
    const auto r = run_criterion(1);
    EXPECT_EQ(r.id, 1);
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.artifacts.size(), 1u);
    EXPECT_EQ(r.artifacts[0].name, "theta_crosscheck.csv");
}

}  // namespace
}  // namespace gaussprep::harness
