#include "savgol/uncertainty.hpp"

#include <cmath>
#include <fmt/format.h>

#include "savgol/rng.hpp"
#include "savgol/special_functions.hpp"

namespace savgol {

namespace {

double row_norm(std::span<const double> row) {
    double s = 0.0;
    for (double c : row) s += c * c;
    return std::sqrt(s);
}

} // namespace

OutputNoiseSd output_sd(const CoefficientBank& bank, const NoiseEstimate& input_noise,
                        std::size_t length) {
    if (input_noise.bias != Bias::Unbiased) {
        throw ValidationError(
            "output_sd: input noise estimate is biased; apply the degrees-of-freedom "
            "correction before propagating it through the filter");
    }
    const FilterSpec& spec = bank.spec();
    if (length < static_cast<std::size_t>(spec.window_size())) {
        throw ValidationError(fmt::format(
            "output_sd: series of length {} is shorter than the window ({} samples)",
            length, spec.window_size()));
    }

    OutputNoiseSd out;
    out.smoothed_sd.resize(length);
    out.derivative_sd.resize(length);
    for (std::size_t t = 0; t < length; ++t) {
        const int row = coefficient_row_for(spec, t, length);
        out.smoothed_sd[t] = input_noise.sd * row_norm(bank.smooth_row(row));
        out.derivative_sd[t] = input_noise.sd * row_norm(bank.deriv_row(row));
    }
    return out;
}

ConfidenceBands bands(const FilteredSeries& filtered, const OutputNoiseSd& sds, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw ValidationError(fmt::format(
            "bands: coverage level must lie strictly in (0, 1), got {}", level));
    }
    const std::size_t q = filtered.size();
    if (sds.smoothed_sd.size() != q || sds.derivative_sd.size() != q) {
        throw ValidationError("bands: SD series length does not match the filtered series");
    }

    ConfidenceBands out;
    out.level = level;
    out.z = inverse_normal_cdf(0.5 * (1.0 + level));
    out.smoothed_sd = sds.smoothed_sd;
    out.derivative_sd = sds.derivative_sd;
    out.smoothed_lo.resize(q);
    out.smoothed_hi.resize(q);
    out.derivative_lo.resize(q);
    out.derivative_hi.resize(q);
    for (std::size_t t = 0; t < q; ++t) {
        const double half = out.z * sds.smoothed_sd[t];
        out.smoothed_lo[t] = filtered.smoothed[t] - half;
        out.smoothed_hi[t] = filtered.smoothed[t] + half;
        const double dhalf = out.z * sds.derivative_sd[t];
        out.derivative_lo[t] = filtered.derivative[t] - dhalf;
        out.derivative_hi[t] = filtered.derivative[t] + dhalf;
    }
    return out;
}

MonteCarloSummary monte_carlo_validate(const FilterSpec& spec, std::span<const double> signal,
                                       double sigma, int trials, std::uint64_t seed,
                                       double level) {
    if (trials < 100) {
        throw ValidationError(fmt::format(
            "monte_carlo_validate: need at least 100 trials for a usable SD estimate, got {}",
            trials));
    }
    if (!(sigma >= 0.0)) {
        throw ValidationError("monte_carlo_validate: noise SD must be non-negative");
    }

    const CoefficientBank bank = build_coefficient_bank(spec);
    const FilteredSeries base = apply_filter(bank, signal);
    const std::size_t q = signal.size();

    MonteCarloSummary out;
    out.trials = trials;
    out.seed = seed;
    out.sigma = sigma;
    out.level = level;
    out.analytic_smoothed_sd.resize(q);
    out.analytic_derivative_sd.resize(q);
    for (std::size_t t = 0; t < q; ++t) {
        const int row = coefficient_row_for(spec, t, q);
        out.analytic_smoothed_sd[t] = sigma * row_norm(bank.smooth_row(row));
        out.analytic_derivative_sd[t] = sigma * row_norm(bank.deriv_row(row));
    }
    const double z = inverse_normal_cdf(0.5 * (1.0 + level));

    std::vector<double> ss_smoothed(q, 0.0), ss_derivative(q, 0.0);
    std::vector<double> covered(q, 0.0);
    std::vector<double> noisy(q);
    for (int trial = 0; trial < trials; ++trial) {
        NormalSampler normal = NormalSampler::for_trial(seed, static_cast<std::uint64_t>(trial));
        for (std::size_t i = 0; i < q; ++i) noisy[i] = signal[i] + sigma * normal();
        const FilteredSeries filtered = apply_filter(bank, noisy);
        for (std::size_t i = 0; i < q; ++i) {
            const double ds = filtered.smoothed[i] - base.smoothed[i];
            const double dd = filtered.derivative[i] - base.derivative[i];
            ss_smoothed[i] += ds * ds;
            ss_derivative[i] += dd * dd;
            if (std::abs(ds) <= z * out.analytic_smoothed_sd[i]) covered[i] += 1.0;
        }
    }

    out.empirical_smoothed_sd.resize(q);
    out.empirical_derivative_sd.resize(q);
    out.smoothed_coverage.resize(q);
    for (std::size_t i = 0; i < q; ++i) {
        out.empirical_smoothed_sd[i] = std::sqrt(ss_smoothed[i] / trials);
        out.empirical_derivative_sd[i] = std::sqrt(ss_derivative[i] / trials);
        out.smoothed_coverage[i] = covered[i] / trials;
    }
    return out;
}

} // namespace savgol
