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

#ifndef QWALK_COIN_HPP
#define QWALK_COIN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "qwalk/errors.hpp"

namespace qwalk {

using Amplitude = std::complex<double>;

inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

/// DOWN moves the walker to x-1, UP to x+1.
enum class CoinDirection : std::uint8_t { Down = 0, Up = 1 };

/// 2x2 unitary on the coin space, basis order (DOWN, UP).
/// Entry `m_ab` is the amplitude sent from old coin `b` to new coin `a`.
struct CoinMatrix {
    Amplitude m_dd;
    Amplitude m_du;
    Amplitude m_ud;
    Amplitude m_uu;

    constexpr Amplitude operator()(CoinDirection to, CoinDirection from) const {
        if (to == CoinDirection::Down) {
            return from == CoinDirection::Down ? m_dd : m_du;
        }
        return from == CoinDirection::Down ? m_ud : m_uu;
    }

    CoinMatrix operator*(const CoinMatrix &rhs) const {
        return {m_dd * rhs.m_dd + m_du * rhs.m_ud, m_dd * rhs.m_du + m_du * rhs.m_uu,
                m_ud * rhs.m_dd + m_uu * rhs.m_ud, m_ud * rhs.m_du + m_uu * rhs.m_uu};
    }

    CoinMatrix adjoint() const {
        return {std::conj(m_dd), std::conj(m_ud), std::conj(m_du), std::conj(m_uu)};
    }

    /// Largest absolute entry of M M^dagger - I.
    double unitarity_defect() const {
        const CoinMatrix p = *this * adjoint();
        return std::max({std::abs(p.m_dd - 1.0), std::abs(p.m_du), std::abs(p.m_ud),
                         std::abs(p.m_uu - 1.0)});
    }

    bool operator==(const CoinMatrix &) const = default;
};

inline double max_abs_difference(const CoinMatrix &a, const CoinMatrix &b) {
    return std::max({std::abs(a.m_dd - b.m_dd), std::abs(a.m_du - b.m_du),
                     std::abs(a.m_ud - b.m_ud), std::abs(a.m_uu - b.m_uu)});
}

inline CoinMatrix hadamard_coin() {
    constexpr double s = kInvSqrt2;
    return {s, s, s, -s};
}

/// Scattering coin with transmission t = sin(theta) on the diagonal and
/// reflection r = cos(theta) off it. theta = pi/4 reproduces the Hadamard coin.
inline CoinMatrix scattering_coin(double theta) {
    if (!std::isfinite(theta)) {
        throw InputError("scattering_coin: theta must be finite");
    }
    const double t = std::sin(theta);
    const double r = std::cos(theta);
    return {t, r, r, -t};
}

}  // namespace qwalk

#endif  // QWALK_COIN_HPP
