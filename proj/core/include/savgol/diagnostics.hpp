#pragma once

#include <span>
#include <vector>

#include "savgol/noise.hpp"

namespace savgol {

/// Two-half F test for constant residual variance.
struct VarianceTest {
    double ratio = 0.0; ///< first-half variance / second-half variance
    int first_count = 0;
    int second_count = 0;
    double first_variance = 0.0;
    double second_variance = 0.0;
    double p_value = 0.0; ///< two-sided
    bool pass_95 = false;
};

/// Split the residuals into the first floor(q/2) and remaining samples,
/// compare unbiased sample variances, and compute the two-sided p-value
/// under the F distribution. Requires at least 8 samples.
VarianceTest variance_ratio_test(std::span<const double> residuals);

/// Points of a normal probability plot: sorted normalized residuals against
/// the theoretical quantiles at plotting positions (i - 0.5)/q. On-line
/// points indicate normally distributed residuals.
struct ProbabilityPlotData {
    std::vector<double> sorted_residuals; ///< normalized by the noise SD, ascending
    std::vector<double> quantiles;        ///< matching normal quantiles, ascending
};

ProbabilityPlotData normal_plot_data(std::span<const double> residuals,
                                     const NoiseEstimate& sd);

/// One point of the global-polynomial noise check.
struct PolyFitPoint {
    int degree;
    double unbiased_sd; ///< sqrt(SSR / (q - (degree + 1)))
};

/// Unbiased residual SDs of global polynomial fits over a range of degrees.
/// The minimum of this curve is an independent estimate of the noise SD,
/// with no filter involved.
struct PolySweep {
    std::vector<PolyFitPoint> points;
    int best_degree = 0;
    double min_sd = 0.0;
};

/// Fit polynomials of each degree in [min_degree, max_degree] to y over an
/// abscissa rescaled to [-1, 1], using an orthogonal (Legendre) basis and a
/// QR solve; a raw power basis at degree 20 would be numerically
/// untrustworthy. Throws ConditioningError if the normal-equations residual
/// of any fit exceeds 1e-6 relative.
PolySweep polynomial_noise_oracle(std::span<const double> y, int min_degree, int max_degree);

/// Fitted values of the single global polynomial fit used by the sweep;
/// exposed for cross-checks against the windowed filter.
std::vector<double> polynomial_fit_values(std::span<const double> y, int degree);

} // namespace savgol
