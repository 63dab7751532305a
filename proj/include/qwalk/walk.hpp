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

#ifndef QWALK_WALK_HPP
#define QWALK_WALK_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <string>

#include "qwalk/potential.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

template <class F>
concept CoinSelector = requires(F f, std::int64_t x) {
    { f(x) } -> std::convertible_to<CoinMatrix>;
};

/// One step in place: coin chosen by the pre-shift position, then DOWN moves
/// left and UP moves right.
template <class Selector>
void apply_step(WalkState &state, Selector &&coin_for_site) {
    const auto lo = state.window_min_;
    const auto hi = state.window_max_;
    if (lo - 1 < -state.capacity_ || hi + 1 > state.capacity_) {
        throw CapacityError("step: amplitude table capacity " + std::to_string(state.capacity_) +
                            " exhausted after " + std::to_string(state.steps_) + " steps");
    }
    auto *down = state.down_.data();
    auto *up = state.up_.data();
    const auto first = state.index(lo);
    const auto last = state.index(hi);

    for (auto x = lo; x <= hi; ++x) {
        const auto i = state.index(x);
        const CoinMatrix &c = coin_for_site(x);
        const Amplitude d = down[i];
        const Amplitude u = up[i];
        down[i] = c.m_dd * d + c.m_du * u;
        up[i] = c.m_ud * d + c.m_uu * u;
    }

    std::copy(down + first, down + last + 1, down + first - 1);
    down[last] = {};
    std::copy_backward(up + first, up + last + 1, up + last + 2);
    up[first] = {};

    state.window_min_ = lo - 1;
    state.window_max_ = hi + 1;
    ++state.steps_;
}

inline void advance(WalkState &state, const PotentialProfile &profile) {
    apply_step(state,
               [&profile](std::int64_t x) -> const CoinMatrix & { return profile.coin_at(x); });
}

inline WalkState step(WalkState state, const PotentialProfile &profile) {
    advance(state, profile);
    return state;
}

inline void require_room(const WalkState &state, std::int64_t n_steps) {
    if (n_steps < 0) {
        throw InputError("evolve: n_steps must be non-negative");
    }
    if (state.window_min() - n_steps < -state.capacity() ||
        state.window_max() + n_steps > state.capacity()) {
        throw CapacityError("evolve: " + std::to_string(n_steps) +
                            " steps do not fit in capacity " + std::to_string(state.capacity()));
    }
}

/// Applies `n_steps` steps, calling `after_step(state)` after each one.
template <CoinSelector Selector, class Observer>
void evolve_with(WalkState &state, Selector &&coin_for_site, std::int64_t n_steps,
                 Observer &&after_step) {
    require_room(state, n_steps);
    for (std::int64_t k = 0; k < n_steps; ++k) {
        apply_step(state, coin_for_site);
        after_step(static_cast<const WalkState &>(state));
    }
}

template <class Observer>
void evolve_in_place(WalkState &state, const PotentialProfile &profile, std::int64_t n_steps,
                     Observer &&after_step) {
    evolve_with(
        state, [&profile](std::int64_t x) -> const CoinMatrix & { return profile.coin_at(x); },
        n_steps, after_step);
}

inline void evolve_in_place(WalkState &state, const PotentialProfile &profile,
                            std::int64_t n_steps) {
    evolve_in_place(state, profile, n_steps, [](const WalkState &) {});
}

inline WalkState evolve(WalkState state, const PotentialProfile &profile, std::int64_t n_steps) {
    evolve_in_place(state, profile, n_steps);
    return state;
}

/// Plain Hadamard walk: every site uses the Hadamard coin.
inline WalkState evolve_hadamard(WalkState state, std::int64_t n_steps) {
    const CoinMatrix h = hadamard_coin();
    evolve_with(
        state, [&h](std::int64_t) -> const CoinMatrix & { return h; }, n_steps,
        [](const WalkState &) {});
    return state;
}

}  // namespace qwalk

#endif  // QWALK_WALK_HPP
