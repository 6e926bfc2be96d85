#pragma once

namespace savgol {

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1). Absolute error below 1e-13
/// over p in [1e-6, 1 - 1e-6]. Throws ValidationError outside (0, 1).
double inverse_normal_cdf(double p);

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
/// x in [0, 1]. Relative accuracy ~1e-14 away from the endpoints.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of the F distribution with (df1, df2) degrees of freedom.
double f_cdf(double x, double df1, double df2);

} // namespace savgol
