#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "savgol/coefficients.hpp"
#include "savgol/filter.hpp"
#include "savgol/noise.hpp"

namespace savgol {

/// Per-sample standard deviations of the filter outputs, from the input
/// noise SD times the 2-norm of the coefficient row in use at each sample.
struct OutputNoiseSd {
    std::vector<double> smoothed_sd;
    std::vector<double> derivative_sd;
};

/// Propagate an input-noise SD through the filter coefficients. The edge
/// rows have larger norms than the center row, so both SD series swell in
/// the tails. Requires an unbiased estimate; passing a biased one is a
/// contract violation (apply the degrees-of-freedom correction first).
OutputNoiseSd output_sd(const CoefficientBank& bank, const NoiseEstimate& input_noise,
                        std::size_t length);

/// Symmetric confidence bands, value +/- z * sd with z the two-sided normal
/// multiplier for the coverage level.
struct ConfidenceBands {
    double level = 0.0;
    double z = 0.0;
    std::vector<double> smoothed_sd;
    std::vector<double> derivative_sd;
    std::vector<double> smoothed_lo, smoothed_hi;
    std::vector<double> derivative_lo, derivative_hi;
};

ConfidenceBands bands(const FilteredSeries& filtered, const OutputNoiseSd& sds, double level);

/// Result of the Monte Carlo check of the output-noise propagation: noise of
/// a known SD is added to a fixed signal many times, and the per-sample
/// scatter of the filter outputs is compared with the analytic SDs.
struct MonteCarloSummary {
    int trials = 0;
    std::uint64_t seed = 0;
    double sigma = 0.0;
    double level = 0.0;
    std::vector<double> empirical_smoothed_sd;
    std::vector<double> empirical_derivative_sd;
    std::vector<double> analytic_smoothed_sd;
    std::vector<double> analytic_derivative_sd;
    /// Fraction of trials in which the level-band around the noisy smoothed
    /// output contained the noiseless filtered value.
    std::vector<double> smoothed_coverage;
};

/// Treats `signal` as truth, adds i.i.d. normal noise per trial, filters,
/// and records per-sample empirical SDs of the smoothed and derivative
/// errors against the filtered noiseless signal. Deterministic given the
/// seed; trial substreams are independent, so evaluation order is free.
MonteCarloSummary monte_carlo_validate(const FilterSpec& spec, std::span<const double> signal,
                                       double sigma, int trials, std::uint64_t seed,
                                       double level = 0.95);

} // namespace savgol
