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

#ifndef QWALK_POTENTIAL_HPP
#define QWALK_POTENTIAL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Scattering sites sit at every multiple of `period` (including x = 0 and
/// negative multiples); every other site uses the Hadamard coin.
class PotentialProfile {
  public:
    PotentialProfile(std::int64_t period, double theta)
        : period_(period), theta_(theta), scatter_(scattering_coin(theta)) {
        if (period < 1) {
            throw InputError("PotentialProfile: period must be >= 1");
        }
    }

    std::int64_t period() const { return period_; }
    double theta() const { return theta_; }
    double transmission() const { return scatter_.m_dd.real(); }
    double reflection() const { return scatter_.m_ud.real(); }

    /// theta reduced into [0, 2pi). Display only; the coin uses the raw angle.
    double reduced_theta() const {
        double r = std::fmod(theta_, 2 * std::numbers::pi);
        return r < 0 ? r + 2 * std::numbers::pi : r;
    }

    bool is_scattering_site(std::int64_t x) const {
        // C++ % truncates toward zero; -8 % 4 == 0 still holds, and any
        // nonzero remainder means "not a multiple" regardless of sign.
        return x % period_ == 0;
    }

    const CoinMatrix &coin_at(std::int64_t x) const {
        return is_scattering_site(x) ? scatter_ : hadamard_;
    }

    const CoinMatrix &scattering() const { return scatter_; }

  private:
    std::int64_t period_;
    double theta_;
    CoinMatrix scatter_;
    CoinMatrix hadamard_ = hadamard_coin();
};

inline const CoinMatrix &coin_at(const PotentialProfile &profile, std::int64_t x) {
    return profile.coin_at(x);
}

}  // namespace qwalk

#endif  // QWALK_POTENTIAL_HPP
