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

#ifndef QWALK_OBSERVABLES_HPP
#define QWALK_OBSERVABLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Position distribution with the coin traced out. Zero-probability sites
/// inside the window are kept so parity structure survives into output.
struct Distribution {
    std::vector<std::int64_t> positions;
    std::vector<double> probabilities;
    std::int64_t n_steps = 0;

    std::size_t size() const { return positions.size(); }

    double at(std::int64_t x) const {
        auto it = std::lower_bound(positions.begin(), positions.end(), x);
        if (it == positions.end() || *it != x) {
            return 0.0;
        }
        return probabilities[static_cast<std::size_t>(it - positions.begin())];
    }

    double total() const {
        double s = 0.0;
        for (double p : probabilities) {
            s += p;
        }
        return s;
    }
};

struct Moments {
    double mean = 0.0;
    double second_moment = 0.0;
    double sigma = 0.0;
};

/// Covers [-N, N] and anything else the state's window reaches.
inline Distribution distribution(const WalkState &state) {
    const auto n = state.steps_taken();
    const auto lo = std::min(-n, state.window_min());
    const auto hi = std::max(n, state.window_max());
    Distribution d;
    d.n_steps = n;
    d.positions.reserve(static_cast<std::size_t>(hi - lo + 1));
    d.probabilities.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (auto x = lo; x <= hi; ++x) {
        d.positions.push_back(x);
        d.probabilities.push_back(state.probability_at(x));
    }
    return d;
}

inline Moments moments(const Distribution &dist) {
    Moments m;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const auto x = static_cast<double>(dist.positions[i]);
        m.mean += x * dist.probabilities[i];
        m.second_moment += x * x * dist.probabilities[i];
    }
    // Centered second pass; agrees with <x^2> - <x>^2 but does not cancel.
    double variance = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double dx = static_cast<double>(dist.positions[i]) - m.mean;
        variance += dx * dx * dist.probabilities[i];
    }
    m.sigma = std::sqrt(std::max(variance, 0.0));
    return m;
}

inline double sigma_of(const WalkState &state) { return moments(distribution(state)).sigma; }

/// sqrt(1 - |cos theta|) * N, the closed-form spreading law for q = 1.
inline double q1_law(double theta, std::int64_t n_steps) {
    return std::sqrt(1.0 - std::abs(std::cos(theta))) * static_cast<double>(n_steps);
}

/// max_x |P(x) - P(-x)|.
inline double symmetry_residual(const Distribution &dist) {
    double worst = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        worst = std::max(worst, std::abs(dist.probabilities[i] - dist.at(-dist.positions[i])));
    }
    return worst;
}

}  // namespace qwalk

#endif  // QWALK_OBSERVABLES_HPP
