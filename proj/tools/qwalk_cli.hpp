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

#ifndef QWALK_TOOLS_QWALK_CLI_HPP
#define QWALK_TOOLS_QWALK_CLI_HPP

// Command-line front end: argument parsing, dispatch to the experiment
// harness, and deterministic CSV / JSON manifest output.
//
// Exit statuses: 0 ok, 1 usage, 2 I/O, 3 numerical invariant violation.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk.hpp"

namespace qwalk::cli {

enum class Command { Simulate, SweepSteps, SweepTheta, SweepPeriod, CheckQ1 };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitInvariant = 3;

inline std::string_view command_name(Command c) {
    switch (c) {
    case Command::Simulate:
        return "simulate";
    case Command::SweepSteps:
        return "sweep-steps";
    case Command::SweepTheta:
        return "sweep-theta";
    case Command::SweepPeriod:
        return "sweep-period";
    case Command::CheckQ1:
        return "check-q1";
    }
    return "?";
}

struct RunConfig {
    Command command = Command::Simulate;
    std::vector<std::int64_t> periods;
    std::vector<double> thetas;
    std::string theta_spec;  // as typed, for the manifest
    std::vector<std::int64_t> steps;
    std::optional<std::filesystem::path> output_path;
    std::optional<std::filesystem::path> manifest_path;
    unsigned threads = 0;
    TrendThresholds thresholds;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// --help / --version; carries the text to print.
struct InfoRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::int64_t parse_int(std::string_view flag, std::string_view text) {
    std::int64_t v = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw UsageError(std::string(flag) + ": '" + std::string(text) + "' is not an integer");
    }
    return v;
}

inline double parse_real(std::string_view flag, std::string_view text) {
    double v = 0.0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty() || !std::isfinite(v)) {
        throw UsageError(std::string(flag) + ": '" + std::string(text) + "' is not a finite number");
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

/// "a:b" (inclusive range) or "a,b,c".
inline std::vector<std::int64_t> parse_int_list(std::string_view flag, std::string_view text) {
    std::vector<std::int64_t> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 2) {
            throw UsageError(std::string(flag) + ": range must look like first:last");
        }
        const auto first = parse_int(flag, parts[0]);
        const auto last = parse_int(flag, parts[1]);
        if (last < first) {
            throw UsageError(std::string(flag) + ": range " + std::string(text) + " is empty");
        }
        return integer_range(first, last);
    }
    for (auto p : split(text, ',')) {
        out.push_back(parse_int(flag, p));
    }
    return out;
}

/// "start:stop:count" (inclusive, count >= 2) or "a,b,c"; every value is
/// multiplied by `scale`.
inline std::vector<double> parse_real_grid(std::string_view flag, std::string_view text,
                                           double scale) {
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw UsageError(std::string(flag) + ": grid must look like start:stop:count");
        }
        const double start = parse_real(flag, parts[0]);
        const double stop = parse_real(flag, parts[1]);
        const auto count = parse_int(flag, parts[2]);
        if (count < 2) {
            throw UsageError(std::string(flag) + ": grid count must be >= 2");
        }
        for (std::int64_t k = 0; k < count; ++k) {
            const double v = start + (stop - start) * static_cast<double>(k) /
                                         static_cast<double>(count - 1);
            out.push_back(v * scale);
        }
        return out;
    }
    for (auto p : split(text, ',')) {
        out.push_back(parse_real(flag, p) * scale);
    }
    return out;
}

inline void require_single(std::string_view flag, std::size_t count) {
    if (count != 1) {
        throw UsageError(std::string(flag) + ": expected a single value");
    }
}

}  // namespace detail

/// argv without the program name, e.g. {"simulate", "--q", "4", ...}.
inline RunConfig parse_args(const std::vector<std::string> &args) {
    CLI::App app{"Discrete-time quantum walk in a periodic potential", "qwalk"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QWALK_VERSION);

    struct Raw {
        std::string q;
        std::string theta;
        std::string theta_pi;
        std::string steps;
        std::string out;
        std::string manifest;
        unsigned threads = 0;
    } raw;

    auto add_common = [&raw](CLI::App *sub, bool with_q) {
        if (with_q) {
            sub->add_option("--q", raw.q, "Period q (integer, list a,b,c or range a:b)");
        }
        auto *theta = sub->add_option("--theta", raw.theta,
                                      "Angle in radians (value, list, or start:stop:count)");
        auto *theta_pi = sub->add_option("--theta-pi", raw.theta_pi,
                                         "Angle in multiples of pi (0.25 means pi/4)");
        theta->excludes(theta_pi);
        sub->add_option("--steps", raw.steps, "Number of steps (integer, list, or range)");
        sub->add_option("--out", raw.out, "CSV output path (default: stdout)");
        sub->add_option("--manifest", raw.manifest,
                        "JSON manifest path (default: <out>.manifest.json)");
        sub->add_option("--threads", raw.threads, "Worker threads for sweeps (0 = all cores)");
    };

    auto *simulate = app.add_subcommand("simulate", "Probability distribution after N steps");
    auto *sweep_steps = app.add_subcommand("sweep-steps", "sigma versus N");
    auto *sweep_theta = app.add_subcommand("sweep-theta", "sigma versus theta");
    auto *sweep_period = app.add_subcommand("sweep-period", "sigma versus 1/q");
    auto *check_q1 = app.add_subcommand("check-q1", "q = 1 closed-form spreading law");
    add_common(simulate, true);
    add_common(sweep_steps, true);
    add_common(sweep_theta, true);
    add_common(sweep_period, true);
    add_common(check_q1, false);

    if (!args.empty() && !args.front().starts_with('-') && !app.get_subcommand_no_throw(args.front())) {
        throw UsageError("unknown command '" + args.front() + "'");
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        throw InfoRequested(app.help());
    } catch (const CLI::CallForVersion &) {
        throw InfoRequested(QWALK_VERSION "\n");
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    if (simulate->parsed()) {
        cfg.command = Command::Simulate;
    } else if (sweep_steps->parsed()) {
        cfg.command = Command::SweepSteps;
    } else if (sweep_theta->parsed()) {
        cfg.command = Command::SweepTheta;
    } else if (sweep_period->parsed()) {
        cfg.command = Command::SweepPeriod;
    } else {
        cfg.command = Command::CheckQ1;
    }

    if (!raw.q.empty()) {
        cfg.periods = detail::parse_int_list("--q", raw.q);
        for (auto q : cfg.periods) {
            if (q < 1) {
                throw UsageError("--q: period must be >= 1, got " + std::to_string(q));
            }
        }
    }
    if (!raw.theta.empty()) {
        cfg.thetas = detail::parse_real_grid("--theta", raw.theta, 1.0);
        cfg.theta_spec = raw.theta;
    } else if (!raw.theta_pi.empty()) {
        cfg.thetas = detail::parse_real_grid("--theta-pi", raw.theta_pi, std::numbers::pi);
        cfg.theta_spec = raw.theta_pi + " (units of pi)";
    }
    if (!raw.steps.empty()) {
        cfg.steps = detail::parse_int_list("--steps", raw.steps);
        for (auto n : cfg.steps) {
            if (n < 0) {
                throw UsageError("--steps: must be >= 0, got " + std::to_string(n));
            }
        }
    }
    if (!raw.out.empty()) {
        cfg.output_path = raw.out;
    }
    if (!raw.manifest.empty()) {
        cfg.manifest_path = raw.manifest;
    } else if (cfg.output_path) {
        cfg.manifest_path = std::filesystem::path(raw.out + ".manifest.json");
    }
    cfg.threads = raw.threads;

    const std::int64_t default_steps = 200;
    auto need_theta = [&cfg](std::string_view why) {
        if (cfg.thetas.empty()) {
            throw UsageError("--theta or --theta-pi is required for " + std::string(why));
        }
    };

    switch (cfg.command) {
    case Command::Simulate:
        if (cfg.periods.empty()) {
            throw UsageError("--q is required for simulate");
        }
        need_theta("simulate");
        if (cfg.steps.empty()) {
            cfg.steps = {default_steps};
        }
        detail::require_single("--q", cfg.periods.size());
        detail::require_single("--theta", cfg.thetas.size());
        detail::require_single("--steps", cfg.steps.size());
        break;
    case Command::SweepSteps:
        if (cfg.periods.empty()) {
            throw UsageError("--q is required for sweep-steps");
        }
        need_theta("sweep-steps");
        if (cfg.steps.empty()) {
            cfg.steps = integer_range(1, default_steps);
        }
        detail::require_single("--q", cfg.periods.size());
        detail::require_single("--theta", cfg.thetas.size());
        break;
    case Command::SweepTheta:
        if (cfg.periods.empty()) {
            throw UsageError("--q is required for sweep-theta");
        }
        if (cfg.thetas.empty()) {
            cfg.thetas = theta_grid_pi_over_24(0, 48);
            cfg.theta_spec = "k*pi/24, k=0..48";
        }
        if (cfg.steps.empty()) {
            cfg.steps = {default_steps};
        }
        detail::require_single("--q", cfg.periods.size());
        detail::require_single("--steps", cfg.steps.size());
        break;
    case Command::SweepPeriod:
        need_theta("sweep-period");
        if (cfg.periods.empty()) {
            cfg.periods = integer_range(1, 10);
        }
        if (cfg.steps.empty()) {
            cfg.steps = {default_steps};
        }
        detail::require_single("--theta", cfg.thetas.size());
        detail::require_single("--steps", cfg.steps.size());
        break;
    case Command::CheckQ1:
        if (cfg.thetas.empty()) {
            cfg.thetas = theta_grid_pi_over_24(1, 47);
            cfg.theta_spec = "k*pi/24, k=1..47";
        }
        if (cfg.steps.empty()) {
            cfg.steps = {default_steps};
        }
        detail::require_single("--steps", cfg.steps.size());
        if (cfg.steps.front() < 100) {
            throw UsageError("--steps: check-q1 needs at least 100 steps");
        }
        break;
    }
    if (cfg.command != Command::Simulate) {
        for (auto n : cfg.steps) {
            if (n < 1) {
                throw UsageError("--steps: sweeps need N >= 1");
            }
        }
    }
    return cfg;
}

/// 17 significant digits, '.' decimal point, independent of locale.
inline std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

struct CsvTable {
    std::vector<std::string> columns;
    std::string body;
    std::size_t rows = 0;

    void add_row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto &c : cells) {
            if (!first) {
                body += ',';
            }
            body += c;
            first = false;
        }
        body += '\n';
        ++rows;
    }

    std::string text() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out += (i ? "," : "") + columns[i];
        }
        out += '\n';
        return out + body;
    }
};

/// Runs the experiment and renders its CSV. Summary values go in `summary`.
inline CsvTable compute_table(const RunConfig &cfg, nlohmann::ordered_json &summary) {
    CsvTable t;
    const auto &th = cfg.thresholds;
    switch (cfg.command) {
    case Command::Simulate: {
        const auto n = cfg.steps.front();
        WalkState s = initial_state(std::max<std::int64_t>(n, 1));
        evolve_in_place(s, PotentialProfile(cfg.periods.front(), cfg.thetas.front()), n);
        check_norm(s, th.norm_drift);
        const auto dist = distribution(s);
        t.columns = {"position", "probability"};
        for (std::size_t i = 0; i < dist.size(); ++i) {
            t.add_row({std::to_string(dist.positions[i]), format_real(dist.probabilities[i])});
        }
        const auto m = moments(dist);
        summary["mean"] = m.mean;
        summary["sigma"] = m.sigma;
        summary["symmetry_residual"] = symmetry_residual(dist);
        break;
    }
    case Command::SweepSteps: {
        const auto r = sweep_sigma_vs_steps(cfg.periods.front(), cfg.thetas.front(), cfg.steps,
                                            th.norm_drift);
        t.columns = {"n", "sigma"};
        for (std::size_t i = 0; i < r.size(); ++i) {
            t.add_row({std::to_string(cfg.steps[i]), format_real(r.sigma[i])});
        }
        if (r.size() >= 2) {
            const auto fit = linear_fit(r);
            summary["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept},
                              {"r_squared", fit.r_squared}};
        }
        break;
    }
    case Command::SweepTheta: {
        const auto r =
            sweep_sigma_vs_theta(cfg.periods.front(), cfg.thetas, cfg.steps.front(), cfg.threads);
        t.columns = {"theta", "sigma"};
        for (std::size_t i = 0; i < r.size(); ++i) {
            t.add_row({format_real(r.independent[i]), format_real(r.sigma[i])});
        }
        summary["relative_spread"] = relative_spread(r.sigma);
        break;
    }
    case Command::SweepPeriod: {
        const auto r = sweep_sigma_vs_inverse_period(cfg.thetas.front(), cfg.periods,
                                                     cfg.steps.front(), cfg.threads);
        t.columns = {"q", "inv_q", "sigma"};
        for (std::size_t i = 0; i < r.size(); ++i) {
            t.add_row({std::to_string(cfg.periods[i]), format_real(r.independent[i]),
                       format_real(r.sigma[i])});
        }
        if (r.size() >= 2) {
            const auto fit = linear_fit(r);
            summary["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept},
                              {"r_squared", fit.r_squared}};
        }
        break;
    }
    case Command::CheckQ1: {
        const auto rows = check_q1_closed_form(cfg.thetas, cfg.steps.front(), cfg.threads);
        t.columns = {"theta", "sigma2_over_N2", "law", "residual"};
        double worst = 0.0;
        for (const auto &row : rows) {
            t.add_row({format_real(row.theta), format_real(row.sigma2_over_n2),
                       format_real(row.law), format_real(row.residual)});
            worst = std::max(worst, row.residual);
        }
        summary["max_residual"] = worst;
        break;
    }
    }
    return t;
}

inline nlohmann::ordered_json manifest_json(const RunConfig &cfg, const CsvTable &table,
                                            const nlohmann::ordered_json &summary,
                                            double wall_seconds) {
    nlohmann::ordered_json j;
    j["tool"] = "qwalk";
    j["version"] = QWALK_VERSION;
    j["command"] = command_name(cfg.command);
    j["config"] = {{"q", cfg.periods},
                   {"theta", cfg.thetas},
                   {"theta_spec", cfg.theta_spec},
                   {"steps", cfg.steps},
                   {"threads", cfg.threads},
                   {"initial_state", "(|0,down> + i|0,up>)/sqrt(2)"}};
    j["thresholds"] = {{"r2_inverse_period", cfg.thresholds.r2_inverse_period},
                       {"r2_steps", cfg.thresholds.r2_steps},
                       {"lazy_relative_spread", cfg.thresholds.lazy_relative_spread},
                       {"lazy_contrast_factor", cfg.thresholds.lazy_contrast_factor},
                       {"q1_law_max_residual", cfg.thresholds.q1_law_max_residual},
                       {"norm_drift", cfg.thresholds.norm_drift}};
    j["output"] = {{"csv", cfg.output_path ? cfg.output_path->string() : "-"},
                   {"columns", table.columns},
                   {"rows", table.rows}};
    j["summary"] = summary;
    j["wall_clock_seconds"] = wall_seconds;
    return j;
}

inline bool write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        return false;
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    return static_cast<bool>(f.flush());
}

inline int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto started = std::chrono::steady_clock::now();
    CsvTable table;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    try {
        table = compute_table(cfg, summary);
    } catch (const InvariantError &e) {
        err << "qwalk: invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::invalid_argument &e) {
        err << "qwalk: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CapacityError &e) {
        err << "qwalk: invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

    const std::string csv = table.text();
    if (cfg.output_path) {
        if (!write_file(*cfg.output_path, csv)) {
            err << "qwalk: cannot write " << cfg.output_path->string() << '\n';
            return kExitIo;
        }
    } else {
        out << csv;
    }
    if (cfg.manifest_path) {
        const auto j = manifest_json(cfg, table, summary, elapsed.count());
        if (!write_file(*cfg.manifest_path, j.dump(2) + "\n")) {
            err << "qwalk: cannot write " << cfg.manifest_path->string() << '\n';
            return kExitIo;
        }
    }
    return kExitOk;
}

inline int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const InfoRequested &info) {
        out << info.what();
        return kExitOk;
    } catch (const UsageError &e) {
        err << "qwalk: usage error: " << e.what() << "\nRun 'qwalk --help' for usage.\n";
        return kExitUsage;
    }
    return run(cfg, out, err);
}

}  // namespace qwalk::cli

#endif  // QWALK_TOOLS_QWALK_CLI_HPP
