// Copyright 2026 The qwalk Authors
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

#include "qwalk/coin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace qwalk;

namespace {

struct CoinVector {
    Amplitude down;
    Amplitude up;
};

CoinVector apply(const CoinMatrix &m, CoinVector v) {
    return {m.m_dd * v.down + m.m_du * v.up, m.m_ud * v.down + m.m_uu * v.up};
}

}  // namespace

TEST(HadamardCoin, maps_down_to_balanced_superposition) {
    const auto out = apply(hadamard_coin(), {1.0, 0.0});
    EXPECT_NEAR(std::abs(out.down - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.up - kInvSqrt2), 0.0, 1e-15);
}

TEST(HadamardCoin, maps_up_to_signed_superposition) {
    const auto out = apply(hadamard_coin(), {0.0, 1.0});
    EXPECT_NEAR(std::abs(out.down - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.up + kInvSqrt2), 0.0, 1e-15);
}

TEST(HadamardCoin, is_an_involution) {
    const auto h = hadamard_coin();
    EXPECT_LT(max_abs_difference(h * h, CoinMatrix{1.0, 0.0, 0.0, 1.0}), 1e-15);
    EXPECT_LT(h.unitarity_defect(), 1e-15);
}

TEST(ScatteringCoin, quarter_pi_is_hadamard) {
    EXPECT_LT(max_abs_difference(scattering_coin(std::numbers::pi / 4), hadamard_coin()), 1e-15);
}

TEST(ScatteringCoin, half_pi_transmits_with_sign_flip_on_up) {
    const auto c = scattering_coin(std::numbers::pi / 2);
    EXPECT_LT(max_abs_difference(c, CoinMatrix{1.0, 0.0, 0.0, -1.0}), 1e-15);
}

TEST(ScatteringCoin, zero_reflects) {
    EXPECT_EQ(scattering_coin(0.0), (CoinMatrix{0.0, 1.0, 1.0, -0.0}));
}

TEST(ScatteringCoin, down_column_is_transmission_then_reflection) {
    const double theta = std::numbers::pi / 6;
    const auto out = apply(scattering_coin(theta), {1.0, 0.0});
    EXPECT_DOUBLE_EQ(out.down.real(), std::sin(theta));
    EXPECT_DOUBLE_EQ(out.up.real(), std::cos(theta));
}

TEST(ScatteringCoin, rejects_non_finite_angles) {
    EXPECT_THROW(scattering_coin(std::numeric_limits<double>::quiet_NaN()), InputError);
    EXPECT_THROW(scattering_coin(std::numeric_limits<double>::infinity()), InputError);
    EXPECT_THROW(scattering_coin(-std::numeric_limits<double>::infinity()), InputError);
}

TEST(ScatteringCoin, unitary_for_random_angles) {
    std::mt19937_64 rng(20261017);
    std::uniform_real_distribution<double> angle(-50.0, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const double theta = angle(rng);
        ASSERT_LT(scattering_coin(theta).unitarity_defect(), 1e-12) << "theta=" << theta;
    }
}

TEST(CoinMatrix, call_operator_reads_new_from_old) {
    const CoinMatrix m{1.0, 2.0, 3.0, 4.0};
    EXPECT_EQ(m(CoinDirection::Down, CoinDirection::Down), 1.0);
    EXPECT_EQ(m(CoinDirection::Down, CoinDirection::Up), 2.0);
    EXPECT_EQ(m(CoinDirection::Up, CoinDirection::Down), 3.0);
    EXPECT_EQ(m(CoinDirection::Up, CoinDirection::Up), 4.0);
}
