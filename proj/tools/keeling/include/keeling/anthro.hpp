#pragma once

#include "keeling/series.hpp"
#include "savgol/filter_spec.hpp"
#include "savgol/noise.hpp"

#include <vector>

namespace keeling {

/// The concentration in excess of the preindustrial baseline, analysed on a
/// log scale so that exponential growth appears linear.
struct AnthropogenicSeries {
    double baseline = 280.0; ///< ppm

    std::vector<double> log2_excess_raw;      ///< log2(y - baseline), per sample
    std::vector<double> log2_excess_filtered; ///< filtered log excess / ln 2
    std::vector<double> frac_rate;            ///< d/dt ln(y - baseline), per year
    std::vector<double> frac_rate_sd;         ///< propagated SD of frac_rate

    double mean_frac_rate = 0.0; ///< per year
    double doubling_years = 0.0; ///< ln 2 / mean_frac_rate
    /// Unbiased noise SD of the log-excess series (placeholder spec until set).
    savgol::NoiseEstimate log_noise{0.0, savgol::NoiseMethod::ResidualVariance,
                                    savgol::Bias::Unbiased, savgol::FilterSpec(1, 1)};

    /// True when the rate came from dyf / (yf - baseline) instead of
    /// filtering the log-transformed series.
    bool alternative_rate = false;
};

/// Transform z = ln(y - baseline), filter z with the given spec, and report
/// the fractional rate of change of the excess along with its propagated
/// uncertainty. The rate is an exact linear statistic of z, so the output
/// noise propagation applies to it without approximation. With
/// alternative_rate the rate is computed as dyf / (yf - baseline) from the
/// untransformed series instead (for comparison; its SD uses the same
/// propagation divided by the local excess). Throws ValidationError when
/// any value fails to exceed the baseline.
AnthropogenicSeries anthropogenic_analysis(const AnnualSeries& series,
                                           const savgol::FilterSpec& spec,
                                           double baseline = 280.0,
                                           bool alternative_rate = false);

} // namespace keeling
