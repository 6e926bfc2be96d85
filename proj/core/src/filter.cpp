#include "savgol/filter.hpp"

#include <fmt/format.h>

namespace savgol {

namespace {

double dot(std::span<const double> a, const double* b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

int coefficient_row_for(const FilterSpec& spec, std::size_t t, std::size_t q) {
    const std::size_t m = static_cast<std::size_t>(spec.half_window);
    if (t < m) return static_cast<int>(t);
    if (t >= q - m) return static_cast<int>(t + spec.window_size() - q);
    return spec.half_window;
}

FilteredSeries apply_filter(const CoefficientBank& bank, std::span<const double> y) {
    const FilterSpec& spec = bank.spec();
    const std::size_t q = y.size();
    const std::size_t window = static_cast<std::size_t>(spec.window_size());
    if (q < window) {
        throw ValidationError(fmt::format(
            "series of length {} is too short for half-window {}; need at least {} samples",
            q, spec.half_window, window));
    }

    const std::size_t m = static_cast<std::size_t>(spec.half_window);
    FilteredSeries out;
    out.smoothed.resize(q);
    out.derivative.resize(q);

    for (std::size_t t = 0; t < q; ++t) {
        // Window start: pinned to the data range in the tails.
        std::size_t start;
        if (t < m) {
            start = 0;
        } else if (t >= q - m) {
            start = q - window;
        } else {
            start = t - m;
        }
        const int row = coefficient_row_for(spec, t, q);
        out.smoothed[t] = dot(bank.smooth_row(row), y.data() + start);
        out.derivative[t] = dot(bank.deriv_row(row), y.data() + start);
    }
    return out;
}

FilteredSeries apply_filter(const FilterSpec& spec, std::span<const double> y) {
    return apply_filter(build_coefficient_bank(spec), y);
}

} // namespace savgol
