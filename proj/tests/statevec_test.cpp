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

#include "gaussprep/statevec.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace gaussprep {
namespace {

std::vector<Amplitude> random_amplitudes(std::uint64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Amplitude> v(n);
    double norm = 0.0;
    for (auto &a : v) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : v) a /= std::sqrt(norm);
    return v;
}

StateVector random_state(unsigned qubits, std::uint64_t seed) {
    return StateVector(RegisterLayout::single("q", qubits), random_amplitudes(std::uint64_t{1} << qubits, seed));
}

class CapGuard {
   public:
    CapGuard() : cap_(max_amplitudes()), threads_(worker_threads()) {}
    ~CapGuard() {
        set_max_amplitudes(cap_);
        set_worker_threads(threads_);
    }

   private:
    std::uint64_t cap_;
    unsigned threads_;
};

TEST(RegisterLayout, FirstRegisterIsMostSignificant) {
    const RegisterLayout l({{"a", 3}, {"b", 2}});
    EXPECT_EQ(l.total_width(), 5u);
    EXPECT_EQ(l.offset(0), 2u);
    EXPECT_EQ(l.offset(1), 0u);
    const std::uint64_t idx = (5u << 2) | 3u;
    EXPECT_EQ(l.extract(idx, 0), 5u);
    EXPECT_EQ(l.extract(idx, 1), 3u);
    EXPECT_EQ(l.insert(idx, 0, 2), (2u << 2) | 3u);
    EXPECT_EQ(l.index_of("b"), 1u);
    EXPECT_THROW((void)l.index_of("c"), std::out_of_range);
    EXPECT_EQ(l.without(0), RegisterLayout::single("b", 2));
    EXPECT_EQ(RegisterLayout::single("a", 3).concat(RegisterLayout::single("b", 2)), l);
}

TEST(SignedCodec, RoundTripsEveryValue) {
    const SignedCodec c(4);
    EXPECT_EQ(c.min(), -8);
    EXPECT_EQ(c.max(), 7);
    for (std::int64_t v = -8; v <= 7; ++v) EXPECT_EQ(c.decode(c.encode(v)), v);
    EXPECT_EQ(c.encode(-1), 15u);
    EXPECT_EQ(c.wrap(8), -8);
    EXPECT_EQ(c.wrap(-9), 7);
    EXPECT_EQ(c.wrap(35), 3);
    EXPECT_THROW((void)c.encode(8), std::out_of_range);
    EXPECT_THROW(SignedCodec(0), std::invalid_argument);
}

TEST(SignedCodec, BasisIndexRoundTrip) {
    const SignedCodec c(3);
    for (std::uint64_t i = 0; i < 64; ++i) {
        const auto coords = basis_coords(i, 2, c);
        EXPECT_EQ(basis_index(coords, c), i);
    }
    const std::vector<std::int64_t> xy{-1, 2};
    EXPECT_EQ(basis_index(xy, c), (7u << 3) | 2u);
}

TEST(StateVector, ValidatesInput) {
    const auto l = RegisterLayout::single("q", 1);
    EXPECT_THROW(StateVector(l, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(StateVector(l, {1.0}), std::invalid_argument);
    EXPECT_THROW(StateVector::normalized(l, {0.0, 0.0}), std::invalid_argument);
    const auto s = StateVector::normalized(l, {3.0, 4.0});
    EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(s.squared_norm(), 1.0, 1e-15);
}

TEST(StateVector, MemoryCap) {
    CapGuard guard;
    set_max_amplitudes(16);
    EXPECT_NO_THROW(StateVector::basis_state(RegisterLayout::single("q", 4), 0));
    EXPECT_THROW(StateVector::basis_state(RegisterLayout::single("q", 5), 0), MemoryCapError);
    EXPECT_THROW(check_amplitude_budget(5), MemoryCapError);
}

TEST(StateVector, TensorOrdering) {
    const auto a = StateVector::basis_state(RegisterLayout::single("a", 1), 1);
    const auto b = StateVector::basis_state(RegisterLayout::single("b", 2), 2);
    const auto ab = tensor(a, b);
    EXPECT_EQ(ab.layout(), RegisterLayout({{"a", 1}, {"b", 2}}));
    EXPECT_EQ(ab[0b110], Amplitude(1.0));
}

TEST(StateVector, FidelityIgnoresGlobalPhase) {
    const auto s = random_state(5, 1);
    std::vector<Amplitude> rotated(s.amplitudes().begin(), s.amplitudes().end());
    for (auto &a : rotated) a *= std::polar(1.0, 0.7);
    const StateVector t(s.layout(), rotated);
    EXPECT_NEAR(fidelity(s, t), 1.0, 1e-15);
    EXPECT_NEAR(distance(s, s), 0.0, 0.0);
    EXPECT_GT(distance(s, t), 0.5);
    EXPECT_THROW((void)inner_product(s, random_state(4, 2)), std::invalid_argument);
}

TEST(StateVector, ProjectionAndMarginal) {
    const RegisterLayout l({{"a", 1}, {"b", 1}});
    const double h = std::sqrt(0.5);
    // (|00> + |11>) / sqrt 2
    const StateVector bell(l, {h, 0.0, 0.0, h});
    const auto p = project_subregister(bell, "a", 1);
    EXPECT_NEAR(p.probability, 0.5, 1e-15);
    ASSERT_TRUE(p.conditional);
    EXPECT_EQ(p.conditional->layout(), RegisterLayout::single("b", 1));
    EXPECT_NEAR(std::abs((*p.conditional)[1]), 1.0, 1e-15);

    const StateVector zero_b(l, {1.0, 0.0, 0.0, 0.0});
    EXPECT_FALSE(project_subregister(zero_b, "b", 1).conditional);

    const auto s = tensor(random_state(3, 5).with_layout(RegisterLayout::single("a", 3)),
                          random_state(2, 6).with_layout(RegisterLayout::single("b", 2)));
    const auto m = register_marginal(s, "b");
    double total = 0.0;
    for (const double v : m) total += v;
    EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(Rotation, MatchesDenseMatrix) {
    const auto s = random_state(3, 9);
    const double theta = 0.83;
    const auto out = apply_rotation(s, 1, theta);
    for (std::uint64_t i = 0; i < 8; ++i) {
        if (i & 2u) continue;
        const auto lo = s[i], hi = s[i | 2u];
        EXPECT_NEAR(std::abs(out[i] - (std::cos(theta) * lo - std::sin(theta) * hi)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(out[i | 2u] - (std::sin(theta) * lo + std::cos(theta) * hi)), 0.0, 1e-15);
    }
}

TEST(Rotation, ControlSeesIndexWithoutTarget) {
    const auto s = random_state(3, 4);
    const auto out = apply_rotation(s, 0, 1.0, [](std::uint64_t i) { return (i & 4u) != 0; });
    for (std::uint64_t i = 0; i < 4; ++i) EXPECT_EQ(out[i], s[i]);
    EXPECT_NE(out[4], s[4]);
}

TEST(Rotation, MultiplexedEqualsControlledSequence) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    const auto s = random_state(6, 12);
    std::vector<double> angles(8);
    for (auto &a : angles) a = ang(rng);
    const auto fast = apply_multiplexed_rotation(s, 4, 1, 3, angles);
    auto slow = s;
    for (std::uint64_t c = 0; c < 8; ++c) {
        slow = apply_rotation(slow, 4, angles[c], [c](std::uint64_t i) { return ((i >> 1) & 7u) == c; });
    }
    for (std::uint64_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(fast[i] - slow[i]), 0.0, 1e-15);
}

TEST(Rotation, DeterministicAcrossThreadCounts) {
    CapGuard guard;
    const auto s = random_state(17, 33);
    std::vector<double> angles(64);
    for (std::size_t i = 0; i < angles.size(); ++i) angles[i] = 0.01 * static_cast<double>(i);
    set_worker_threads(1);
    const auto one = apply_multiplexed_rotation(s, 16, 0, 6, angles);
    set_worker_threads(7);
    const auto many = apply_multiplexed_rotation(s, 16, 0, 6, angles);
    ASSERT_EQ(one.size(), many.size());
    for (std::uint64_t i = 0; i < one.size(); ++i) ASSERT_EQ(one[i], many[i]);
}

TEST(PermuteBasis, MovesAmplitudes) {
    const auto s = random_state(4, 8);
    const auto out = permute_basis(s, [](std::uint64_t i) { return (i + 3) % 16; });
    for (std::uint64_t i = 0; i < 16; ++i) EXPECT_EQ(out[(i + 3) % 16], s[i]);
}

TEST(PermuteBasis, ReportsCollisions) {
    const auto s = random_state(3, 8);
    try {
        (void)permute_basis(s, [](std::uint64_t i) { return i == 5 ? 2 : i; });
        FAIL() << "expected NonBijectiveError";
    } catch (const NonBijectiveError &e) {
        EXPECT_EQ(e.target(), 2u);
        EXPECT_TRUE((e.first() == 2 && e.second() == 5) || (e.first() == 5 && e.second() == 2));
    }
    EXPECT_THROW((void)permute_basis(s, [](std::uint64_t i) { return i + 1; }), std::out_of_range);
}

TEST(PermuteBasis, FuzzNonInjectiveMapsAlwaysThrow) {
    std::mt19937_64 rng(99);
    const auto s = random_state(6, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint64_t> table(64);
        for (std::uint64_t i = 0; i < 64; ++i) table[i] = i;
        std::shuffle(table.begin(), table.end(), rng);
        const auto a = rng() % 64;
        auto b = rng() % 64;
        if (b == a) b = (a + 1) % 64;
        table[b] = table[a];
        EXPECT_THROW((void)permute_basis(s, [&](std::uint64_t i) { return table[i]; }), NonBijectiveError);
    }
}

TEST(StateCsv, RoundTrip) {
    const RegisterLayout l({{"x", 2}, {"y", 2}});
    const StateVector s(l, random_amplitudes(16, 17));
    std::stringstream io;
    write_state_csv(io, s, {"meta line"});
    const std::string text = io.str();
    EXPECT_EQ(text.rfind("# meta line\nindex,coord_1,coord_2,re,im,abs2\n", 0), 0u);
    EXPECT_NE(text.find("\n15,-1,-1,"), std::string::npos);
    std::istringstream in(text);
    const auto back = read_state_csv_amplitudes(in);
    ASSERT_EQ(back.size(), 16u);
    for (std::uint64_t i = 0; i < 16; ++i) EXPECT_EQ(back[i], s[i]);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(17.724538509055154), "17.724538509055154");
    EXPECT_EQ(std::stod(format_double(std::numbers::pi)), std::numbers::pi);
}

}  // namespace
}  // namespace gaussprep
