#include "savgol/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "savgol/linalg.hpp"
#include "savgol/special_functions.hpp"

namespace savgol {

namespace {

double sample_variance(std::span<const double> x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(n - 1);
}

/// Legendre design matrix on q points rescaled to [-1, 1].
Matrix legendre_design(std::size_t q, int degree) {
    Matrix design(q, static_cast<std::size_t>(degree) + 1);
    for (std::size_t i = 0; i < q; ++i) {
        const double x = (q == 1) ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / (q - 1);
        design(i, 0) = 1.0;
        if (degree >= 1) design(i, 1) = x;
        for (int k = 1; k < degree; ++k) {
            design(i, k + 1) =
                ((2.0 * k + 1.0) * x * design(i, k) - k * design(i, k - 1)) / (k + 1.0);
        }
    }
    return design;
}

std::vector<double> fit_values(const Matrix& design, std::span<const double> y) {
    const std::vector<double> coeffs = least_squares_qr(design, y);

    std::vector<double> fitted(y.size(), 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < design.cols(); ++j) s += design(i, j) * coeffs[j];
        fitted[i] = s;
    }

    // Normal-equations residual A^T (A c - y); large values mean the solve
    // cannot be trusted.
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < design.cols(); ++j) {
        double atr = 0.0, aty = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            atr += design(i, j) * (fitted[i] - y[i]);
            aty += design(i, j) * y[i];
        }
        num += atr * atr;
        den += aty * aty;
    }
    if (den > 0.0 && std::sqrt(num / den) > 1e-6) {
        throw ConditioningError(fmt::format(
            "polynomial fit of degree {} is ill-conditioned "
            "(normal-equations residual {:.2e} relative)",
            design.cols() - 1, std::sqrt(num / den)));
    }
    return fitted;
}

} // namespace

VarianceTest variance_ratio_test(std::span<const double> residuals) {
    const std::size_t q = residuals.size();
    if (q < 8) {
        throw ValidationError(fmt::format(
            "variance_ratio_test: need at least 8 residuals, got {}", q));
    }
    const std::size_t half = q / 2;

    VarianceTest out;
    out.first_count = static_cast<int>(half);
    out.second_count = static_cast<int>(q - half);
    out.first_variance = sample_variance(residuals.subspan(0, half));
    out.second_variance = sample_variance(residuals.subspan(half));
    if (out.first_variance <= 0.0 || out.second_variance <= 0.0) {
        throw ValidationError("variance_ratio_test: a half with zero variance is degenerate");
    }
    out.ratio = out.first_variance / out.second_variance;
    const double cdf = f_cdf(out.ratio, out.first_count - 1, out.second_count - 1);
    out.p_value = std::clamp(2.0 * std::min(cdf, 1.0 - cdf), 0.0, 1.0);
    out.pass_95 = out.p_value >= 0.05;
    return out;
}

ProbabilityPlotData normal_plot_data(std::span<const double> residuals,
                                     const NoiseEstimate& sd) {
    if (!(sd.sd > 0.0)) {
        throw ValidationError("normal_plot_data: noise SD must be positive");
    }
    const std::size_t q = residuals.size();
    if (q < 3) {
        throw ValidationError(fmt::format(
            "normal_plot_data: need at least 3 residuals, got {}", q));
    }

    ProbabilityPlotData out;
    out.sorted_residuals.resize(q);
    for (std::size_t i = 0; i < q; ++i) out.sorted_residuals[i] = residuals[i] / sd.sd;
    std::sort(out.sorted_residuals.begin(), out.sorted_residuals.end());
    out.quantiles.resize(q);
    for (std::size_t i = 0; i < q; ++i) {
        out.quantiles[i] = inverse_normal_cdf((static_cast<double>(i) + 0.5) / q);
    }
    return out;
}

std::vector<double> polynomial_fit_values(std::span<const double> y, int degree) {
    if (degree < 0) throw ValidationError("polynomial_fit_values: degree must be non-negative");
    if (y.size() <= static_cast<std::size_t>(degree) + 1) {
        throw ValidationError(fmt::format(
            "polynomial_fit_values: degree {} needs more than {} samples",
            degree, degree + 1));
    }
    return fit_values(legendre_design(y.size(), degree), y);
}

PolySweep polynomial_noise_oracle(std::span<const double> y, int min_degree, int max_degree) {
    if (min_degree < 0 || max_degree < min_degree) {
        throw ValidationError("polynomial_noise_oracle: bad degree range");
    }
    if (y.size() <= static_cast<std::size_t>(max_degree) + 1) {
        throw ValidationError(fmt::format(
            "polynomial_noise_oracle: max degree {} needs more than {} samples, got {}",
            max_degree, max_degree + 1, y.size()));
    }

    PolySweep out;
    out.points.reserve(static_cast<std::size_t>(max_degree - min_degree + 1));
    for (int degree = min_degree; degree <= max_degree; ++degree) {
        const std::vector<double> fitted = polynomial_fit_values(y, degree);
        double ssr = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double r = y[i] - fitted[i];
            ssr += r * r;
        }
        const double dof = static_cast<double>(y.size()) - (degree + 1);
        out.points.push_back({degree, std::sqrt(ssr / dof)});
    }

    const auto min_it = std::min_element(
        out.points.begin(), out.points.end(),
        [](const PolyFitPoint& a, const PolyFitPoint& b) { return a.unbiased_sd < b.unbiased_sd; });
    out.best_degree = min_it->degree;
    out.min_sd = min_it->unbiased_sd;
    return out;
}

} // namespace savgol
