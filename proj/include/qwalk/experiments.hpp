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

#ifndef QWALK_EXPERIMENTS_HPP
#define QWALK_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/observables.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Thresholds that turn "approximately linear" and "nearly constant" into
/// checks. The lazy-spread bound was measured on the default grid (q = 2,
/// N = 100: 3.02e-4) and frozen with headroom.
struct TrendThresholds {
    double r2_inverse_period = 0.9;
    double r2_steps = 0.99;
    double lazy_relative_spread = 5e-4;
    double lazy_contrast_factor = 5.0;
    double q1_law_max_residual = 1e-4;
    double norm_drift = 1e-9;
};

struct SweepSpec {
    std::string kind;
    std::vector<std::int64_t> periods;
    std::vector<double> thetas;
    std::vector<std::int64_t> steps;
};

struct SweepResult {
    std::vector<double> independent;
    std::vector<double> sigma;
    SweepSpec spec;

    std::size_t size() const { return sigma.size(); }
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares. When every y is identical (SS_tot = 0) the fit is
/// exact and r^2 is reported as 1.
inline LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw FitError("linear_fit: xs and ys differ in length");
    }
    const auto n = static_cast<double>(xs.size());
    if (xs.size() < 2) {
        throw FitError("linear_fit: need at least two points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw FitError("linear_fit: all x values are identical");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    return fit;
}

inline LinearFit linear_fit(const SweepResult &sweep) { return linear_fit(sweep.independent, sweep.sigma); }

/// (max - min) / mean.
inline double relative_spread(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    return (*hi - *lo) / mean;
}

/// Evaluates fn(0..count-1) on up to `threads` workers (0 = hardware
/// concurrency). Results land at their own index, so output order never
/// depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn, unsigned threads = 1) {
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> out(count);
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        if (!failed.exchange(true)) {
                            failure = std::current_exception();
                        }
                        return;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

inline void check_norm(const WalkState &state, double tolerance) {
    const double drift = std::abs(state.norm_squared() - 1.0);
    if (!(drift <= tolerance) || !state.all_finite()) {
        throw InvariantError("norm drift " + std::to_string(drift) + " after " +
                             std::to_string(state.steps_taken()) + " steps exceeds tolerance");
    }
}

/// sigma after `n_steps` from the standard initial state, with a norm check.
inline double simulate_sigma(std::int64_t period, double theta, std::int64_t n_steps,
                             double norm_tolerance = TrendThresholds{}.norm_drift) {
    WalkState s = initial_state(std::max<std::int64_t>(n_steps, 1));
    evolve_in_place(s, PotentialProfile(period, theta), n_steps);
    check_norm(s, norm_tolerance);
    return sigma_of(s);
}

/// sigma at each requested N, read off snapshots of a single evolution.
inline SweepResult sweep_sigma_vs_steps(std::int64_t period, double theta,
                                        std::span<const std::int64_t> n_values,
                                        double norm_tolerance = TrendThresholds{}.norm_drift) {
    for (auto n : n_values) {
        if (n < 1) {
            throw InputError("sweep_sigma_vs_steps: every N must be >= 1");
        }
    }
    SweepResult result;
    result.spec = {"sweep-steps", {period}, {theta}, {n_values.begin(), n_values.end()}};
    if (n_values.empty()) {
        return result;
    }
    const auto n_max = *std::max_element(n_values.begin(), n_values.end());
    std::vector<double> sigma_at(static_cast<std::size_t>(n_max + 1), 0.0);
    WalkState s = initial_state(n_max);
    evolve_in_place(s, PotentialProfile(period, theta), n_max, [&](const WalkState &st) {
        sigma_at[static_cast<std::size_t>(st.steps_taken())] = sigma_of(st);
    });
    check_norm(s, norm_tolerance);
    for (auto n : n_values) {
        result.independent.push_back(static_cast<double>(n));
        result.sigma.push_back(sigma_at[static_cast<std::size_t>(n)]);
    }
    return result;
}

inline SweepResult sweep_sigma_vs_theta(std::int64_t period, std::span<const double> thetas,
                                        std::int64_t n_steps, unsigned threads = 1) {
    if (n_steps < 1) {
        throw InputError("sweep_sigma_vs_theta: n_steps must be >= 1");
    }
    SweepResult result;
    result.spec = {"sweep-theta", {period}, {thetas.begin(), thetas.end()}, {n_steps}};
    result.independent.assign(thetas.begin(), thetas.end());
    result.sigma = parallel_map(
        thetas.size(), [&](std::size_t i) { return simulate_sigma(period, thetas[i], n_steps); },
        threads);
    return result;
}

/// Rows keyed by 1/q.
inline SweepResult sweep_sigma_vs_inverse_period(double theta, std::span<const std::int64_t> periods,
                                                 std::int64_t n_steps, unsigned threads = 1) {
    for (auto q : periods) {
        if (q < 1) {
            throw InputError("sweep_sigma_vs_inverse_period: every q must be >= 1");
        }
    }
    SweepResult result;
    result.spec = {"sweep-period", {periods.begin(), periods.end()}, {theta}, {n_steps}};
    for (auto q : periods) {
        result.independent.push_back(1.0 / static_cast<double>(q));
    }
    result.sigma = parallel_map(
        periods.size(), [&](std::size_t i) { return simulate_sigma(periods[i], theta, n_steps); },
        threads);
    return result;
}

struct Q1LawRow {
    double theta = 0.0;
    double sigma2_over_n2 = 0.0;
    double law = 0.0;
    double residual = 0.0;
};

/// Compares sigma^2/N^2 at q = 1 with 1 - |cos theta| at each theta.
inline std::vector<Q1LawRow> check_q1_closed_form(std::span<const double> thetas,
                                                  std::int64_t n_steps, unsigned threads = 1) {
    if (n_steps < 100) {
        throw InputError("check_q1_closed_form: the law is asymptotic, use n_steps >= 100");
    }
    const auto n2 = static_cast<double>(n_steps) * static_cast<double>(n_steps);
    return parallel_map(
        thetas.size(),
        [&](std::size_t i) {
            Q1LawRow row;
            row.theta = thetas[i];
            const double sigma = simulate_sigma(1, thetas[i], n_steps);
            row.sigma2_over_n2 = sigma * sigma / n2;
            row.law = 1.0 - std::abs(std::cos(thetas[i]));
            row.residual = std::abs(row.sigma2_over_n2 - row.law);
            return row;
        },
        threads);
}

/// k * pi / 24 for k in [first, last].
inline std::vector<double> theta_grid_pi_over_24(int first, int last) {
    std::vector<double> grid;
    for (int k = first; k <= last; ++k) {
        grid.push_back(k * std::numbers::pi / 24.0);
    }
    return grid;
}

inline std::vector<std::int64_t> integer_range(std::int64_t first, std::int64_t last) {
    std::vector<std::int64_t> out;
    for (auto v = first; v <= last; ++v) {
        out.push_back(v);
    }
    return out;
}

}  // namespace qwalk

#endif  // QWALK_EXPERIMENTS_HPP
