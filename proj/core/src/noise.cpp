#include "savgol/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "savgol/filter.hpp"

namespace savgol {

namespace {

void require_equal_lengths(std::span<const double> y, std::span<const double> smoothed,
                           std::size_t min_length, const char* op) {
    if (y.size() != smoothed.size()) {
        throw ValidationError(fmt::format("{}: series lengths differ ({} vs {})",
                                          op, y.size(), smoothed.size()));
    }
    if (y.size() < min_length) {
        throw ValidationError(fmt::format("{}: need at least {} samples, got {}",
                                          op, min_length, y.size()));
    }
}

} // namespace

NoiseEstimate residual_sd(std::span<const double> y, std::span<const double> smoothed,
                          const FilterSpec& spec) {
    require_equal_lengths(y, smoothed, 2, "residual_sd");
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - smoothed[i];
        ss += r * r;
    }
    return {std::sqrt(ss / static_cast<double>(y.size())),
            NoiseMethod::ResidualVariance, Bias::Biased, spec};
}

NoiseEstimate differenced_sd(std::span<const double> y, std::span<const double> smoothed,
                             const FilterSpec& spec) {
    require_equal_lengths(y, smoothed, 3, "differenced_sd");
    double ss = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        const double d = (y[i + 1] - y[i]) - (smoothed[i + 1] - smoothed[i]);
        ss += d * d;
    }
    return {std::sqrt(ss / (2.0 * static_cast<double>(y.size() - 1))),
            NoiseMethod::DifferencedResidualVariance, Bias::Biased, spec};
}

NoiseEstimate unbias(const NoiseEstimate& estimate) {
    if (estimate.bias == Bias::Unbiased) {
        throw ValidationError(
            "unbias: estimate already carries the degrees-of-freedom correction; "
            "refusing to apply it twice");
    }
    const double window = estimate.spec.window_size();
    const double factor = window / (window - estimate.spec.params);
    NoiseEstimate out = estimate;
    out.sd = estimate.sd * std::sqrt(factor);
    out.bias = Bias::Unbiased;
    return out;
}

int min_half_window(int params) {
    // smallest m with 2m+1 > params
    return params / 2 + params % 2;
}

SweepTable sweep_residual_sd(int params, int max_half_window, std::span<const double> y,
                             Weighting weighting) {
    const int first = std::max(1, min_half_window(params));
    if (max_half_window < first) {
        throw ValidationError(fmt::format(
            "sweep_residual_sd: max half-window {} is below the smallest valid value {}",
            max_half_window, first));
    }
    const std::size_t needed = 2 * static_cast<std::size_t>(max_half_window) + 1;
    if (y.size() < needed) {
        const int feasible = (static_cast<int>(y.size()) - 1) / 2;
        throw ValidationError(fmt::format(
            "sweep_residual_sd: series of length {} supports half-windows only up to {}",
            y.size(), feasible));
    }

    SweepTable table{params, weighting, {}};
    table.rows.reserve(static_cast<std::size_t>(max_half_window - first + 1));
    for (int m = first; m <= max_half_window; ++m) {
        const FilterSpec spec(params, m, weighting);
        const FilteredSeries filtered = apply_filter(spec, y);
        table.rows.push_back({m,
                              residual_sd(y, filtered.smoothed, spec).sd,
                              differenced_sd(y, filtered.smoothed, spec).sd});
    }
    return table;
}

NoiseEstimate estimate_noise_floor(const SweepTable& table, const PlateauConfig& config) {
    const auto& rows = table.rows;
    if (rows.size() < 5) {
        throw ValidationError(fmt::format(
            "estimate_noise_floor: need at least 5 sweep rows, got {}", rows.size()));
    }

    // A run spans rows [begin, end]; consecutive rows join when the relative
    // step of the differenced SD stays under the threshold. Of the largest
    // runs, keep the one at larger half-windows (away from the over-fitting
    // dropoff).
    std::size_t best_begin = 0, best_len = 0;
    std::size_t begin = 0;
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        const double prev = rows[k].differenced_sd;
        const double step = std::abs(rows[k + 1].differenced_sd - prev);
        const bool stable = prev > 0.0 && step / prev < config.max_relative_step;
        if (!stable) {
            begin = k + 1;
            continue;
        }
        const std::size_t len = k + 2 - begin;
        if (len >= best_len) {
            best_len = len;
            best_begin = begin;
        }
    }

    if (best_len < static_cast<std::size_t>(config.min_run)) {
        throw NoPlateauError(fmt::format(
            "estimate_noise_floor: no stable run of at least {} rows below a {:.1f}% step; "
            "inspect the sweep manually", config.min_run, 100.0 * config.max_relative_step));
    }

    std::vector<double> run(best_len);
    for (std::size_t k = 0; k < best_len; ++k) run[k] = rows[best_begin + k].differenced_sd;
    std::sort(run.begin(), run.end());
    const double median = (best_len % 2 == 1)
                              ? run[best_len / 2]
                              : 0.5 * (run[best_len / 2 - 1] + run[best_len / 2]);

    const SweepRow& mid = rows[best_begin + best_len / 2];
    return {median, NoiseMethod::DifferencedResidualVariance, Bias::Biased,
            FilterSpec(table.params, mid.half_window, table.weighting)};
}

int select_half_window(const SweepTable& table, const NoiseEstimate& floor) {
    if (table.rows.empty()) {
        throw ValidationError("select_half_window: sweep table is empty");
    }
    int best_m = table.rows.front().half_window;
    double best_gap = std::abs(table.rows.front().residual_sd - floor.sd);
    for (const SweepRow& row : table.rows) {
        const double gap = std::abs(row.residual_sd - floor.sd);
        if (gap < best_gap) {
            best_gap = gap;
            best_m = row.half_window;
        }
    }
    return best_m;
}

} // namespace savgol
