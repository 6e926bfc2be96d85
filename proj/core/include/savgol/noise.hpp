#pragma once

#include <span>
#include <vector>

#include "savgol/filter_spec.hpp"

namespace savgol {

enum class NoiseMethod {
    ResidualVariance,            ///< mean squared filter residual
    DifferencedResidualVariance, ///< mean squared differenced residual, halved
};

enum class Bias { Biased, Unbiased };

/// A standard-deviation estimate of the input noise, tagged with how it was
/// obtained and whether the degrees-of-freedom correction has been applied.
struct NoiseEstimate {
    double sd;
    NoiseMethod method;
    Bias bias;
    FilterSpec spec;
};

/// Biased noise SD from the filter residuals: sqrt((1/q) sum (y - yf)^2).
NoiseEstimate residual_sd(std::span<const double> y, std::span<const double> smoothed,
                          const FilterSpec& spec);

/// Biased noise SD from differenced residuals:
/// sqrt((1/(2(q-1))) sum [(y_{i+1}-y_i) - (yf_{i+1}-yf_i)]^2).
/// Differencing cancels most of the signal; the factor two compensates for
/// the doubled variance of a difference of uncorrelated noise.
NoiseEstimate differenced_sd(std::span<const double> y, std::span<const double> smoothed,
                             const FilterSpec& spec);

/// Apply the degrees-of-freedom correction: variance scaled by
/// (2m+1)/(2m+1-n). Refuses estimates that are already unbiased.
NoiseEstimate unbias(const NoiseEstimate& estimate);

struct SweepRow {
    int half_window;
    double residual_sd;    ///< biased, from the filter residuals
    double differenced_sd; ///< biased, from the differenced residuals
};

/// Residual SDs versus half-window for a fixed parameter count. Both
/// columns are deliberately biased: the bias factor is common to the two
/// estimators at each half-window, so it cannot disturb the selection.
struct SweepTable {
    int params;
    Weighting weighting;
    std::vector<SweepRow> rows;
};

/// Run the filter for every half-window from the smallest valid value up to
/// max_half_window and record both residual SDs.
SweepTable sweep_residual_sd(int params, int max_half_window, std::span<const double> y,
                             Weighting weighting = Weighting::OptimalQuadratic);

/// Smallest half-window satisfying 2m+1 > n.
int min_half_window(int params);

struct PlateauConfig {
    /// Successive differenced-SD values whose relative change stays below
    /// this bound count as part of a stable run.
    double max_relative_step = 0.02;
    /// Minimum number of rows a run must span to count as a plateau.
    int min_run = 3;
};

/// Locate the plateau of the differenced-residual SD: the median over the
/// largest stable run of half-windows. The over-fitting dropoff at small
/// half-windows changes too fast to join a run, so it is excluded
/// automatically. Throws NoPlateauError when no run is long enough.
NoiseEstimate estimate_noise_floor(const SweepTable& table, const PlateauConfig& config = {});

/// Half-window whose residual SD comes closest to the noise floor; ties
/// break toward the smaller half-window (less smoothing).
int select_half_window(const SweepTable& table, const NoiseEstimate& floor);

} // namespace savgol
