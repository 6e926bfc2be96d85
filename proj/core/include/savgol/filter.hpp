#pragma once

#include <span>
#include <vector>

#include "savgol/coefficients.hpp"

namespace savgol {

/// Smoothed values and first derivatives for a full series. The derivative
/// is per sample step; multiply by 1/dx for physical units.
struct FilteredSeries {
    std::vector<double> smoothed;
    std::vector<double> derivative;

    std::size_t size() const { return smoothed.size(); }
};

/// Index of the coefficient row used at output position t (0-based) in a
/// series of length q: the center row in the interior, edge rows where the
/// window is pinned to the first or last 2m+1 samples.
int coefficient_row_for(const FilterSpec& spec, std::size_t t, std::size_t q);

/// Apply the filter to the whole series. Requires q >= 2m+1.
FilteredSeries apply_filter(const CoefficientBank& bank, std::span<const double> y);
FilteredSeries apply_filter(const FilterSpec& spec, std::span<const double> y);

} // namespace savgol
