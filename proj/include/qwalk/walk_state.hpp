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

#ifndef QWALK_WALK_STATE_HPP
#define QWALK_WALK_STATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Dense amplitude table over positions -capacity..+capacity and both coin
/// directions. Storage is struct-of-arrays (one vector per direction) so the
/// shift is a pair of contiguous moves.
///
/// The table tracks a window [window_min, window_max] of positions that may
/// be nonzero; cells outside it are exact zeros. Each step grows the window
/// by one site on either side, so a walk started at the origin keeps the
/// window equal to [-steps_taken, steps_taken].
class WalkState {
  public:
    explicit WalkState(std::int64_t capacity)
        : capacity_(capacity),
          down_(checked_size(capacity)),
          up_(checked_size(capacity)),
          window_min_(0),
          window_max_(0) {}

    /// |x, dir> with unit amplitude.
    static WalkState basis(std::int64_t capacity, std::int64_t x, CoinDirection dir) {
        WalkState s(capacity);
        s.set_amplitude(x, dir, 1.0);
        return s;
    }

    std::int64_t capacity() const { return capacity_; }
    std::int64_t origin_offset() const { return capacity_; }
    std::int64_t steps_taken() const { return steps_; }
    std::int64_t window_min() const { return window_min_; }
    std::int64_t window_max() const { return window_max_; }

    bool in_table(std::int64_t x) const { return x >= -capacity_ && x <= capacity_; }

    Amplitude amplitude(std::int64_t x, CoinDirection dir) const {
        if (!in_table(x)) {
            return {};
        }
        const auto i = index(x);
        return dir == CoinDirection::Down ? down_[i] : up_[i];
    }

    /// Writes one amplitude and widens the window to include x. Intended for
    /// preparing initial states; evolution goes through the step functions.
    void set_amplitude(std::int64_t x, CoinDirection dir, Amplitude value) {
        if (!in_table(x)) {
            throw CapacityError("WalkState: position " + std::to_string(x) +
                                " outside table of capacity " + std::to_string(capacity_));
        }
        const auto i = index(x);
        (dir == CoinDirection::Down ? down_[i] : up_[i]) = value;
        if (!touched_) {
            window_min_ = window_max_ = x;
            touched_ = true;
        } else {
            window_min_ = std::min(window_min_, x);
            window_max_ = std::max(window_max_, x);
        }
    }

    double norm_squared() const {
        double total = 0.0;
        for (auto x = window_min_; x <= window_max_; ++x) {
            const auto i = index(x);
            total += std::norm(down_[i]) + std::norm(up_[i]);
        }
        return total;
    }

    double probability_at(std::int64_t x) const {
        if (!in_table(x)) {
            return 0.0;
        }
        const auto i = index(x);
        return std::norm(down_[i]) + std::norm(up_[i]);
    }

    bool all_finite() const {
        for (std::size_t i = 0; i < down_.size(); ++i) {
            if (!std::isfinite(down_[i].real()) || !std::isfinite(down_[i].imag()) ||
                !std::isfinite(up_[i].real()) || !std::isfinite(up_[i].imag())) {
                return false;
            }
        }
        return true;
    }

    std::span<const Amplitude> down_amplitudes() const { return down_; }
    std::span<const Amplitude> up_amplitudes() const { return up_; }

  private:
    template <class Selector>
    friend void apply_step(WalkState &state, Selector &&coin_for_site);

    static std::size_t checked_size(std::int64_t capacity) {
        if (capacity < 1) {
            throw InputError("WalkState: capacity must be >= 1");
        }
        return static_cast<std::size_t>(2 * capacity + 1);
    }

    std::size_t index(std::int64_t x) const { return static_cast<std::size_t>(x + capacity_); }

    std::int64_t capacity_;
    std::vector<Amplitude> down_;
    std::vector<Amplitude> up_;
    std::int64_t window_min_;
    std::int64_t window_max_;
    std::int64_t steps_ = 0;
    bool touched_ = false;
};

/// (|0,DOWN> + i|0,UP>) / sqrt(2), sized for `capacity_steps` steps.
inline WalkState initial_state(std::int64_t capacity_steps) {
    if (capacity_steps < 1) {
        throw InputError("initial_state: capacity_steps must be >= 1");
    }
    WalkState s(capacity_steps);
    s.set_amplitude(0, CoinDirection::Down, {kInvSqrt2, 0.0});
    s.set_amplitude(0, CoinDirection::Up, {0.0, kInvSqrt2});
    return s;
}

/// Largest componentwise |a - b| over the union of both tables.
inline double max_amplitude_difference(const WalkState &a, const WalkState &b) {
    const auto lo = std::min(a.window_min(), b.window_min());
    const auto hi = std::max(a.window_max(), b.window_max());
    double worst = 0.0;
    for (auto x = lo; x <= hi; ++x) {
        for (auto dir : {CoinDirection::Down, CoinDirection::Up}) {
            worst = std::max(worst, std::abs(a.amplitude(x, dir) - b.amplitude(x, dir)));
        }
    }
    return worst;
}

}  // namespace qwalk

#endif  // QWALK_WALK_STATE_HPP
