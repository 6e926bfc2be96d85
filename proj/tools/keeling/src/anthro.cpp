#include "keeling/anthro.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "savgol/errors.hpp"
#include "savgol/filter.hpp"
#include "savgol/uncertainty.hpp"

namespace keeling {

using savgol::ValidationError;

AnthropogenicSeries anthropogenic_analysis(const AnnualSeries& series,
                                           const savgol::FilterSpec& spec, double baseline,
                                           bool alternative_rate) {
    const std::size_t q = series.size();
    for (std::size_t i = 0; i < q; ++i) {
        if (series.values[i] <= baseline) {
            throw ValidationError(fmt::format(
                "value {} ppm in year {} does not exceed the baseline of {} ppm",
                series.values[i], series.years[i], baseline));
        }
    }

    constexpr double ln2 = std::numbers::ln2;
    AnthropogenicSeries out;
    out.baseline = baseline;
    out.alternative_rate = alternative_rate;

    std::vector<double> z(q);
    for (std::size_t i = 0; i < q; ++i) z[i] = std::log(series.values[i] - baseline);
    out.log2_excess_raw.resize(q);
    for (std::size_t i = 0; i < q; ++i) out.log2_excess_raw[i] = z[i] / ln2;

    const auto bank = savgol::build_coefficient_bank(spec);
    const auto zf = savgol::apply_filter(bank, z);
    out.log_noise = savgol::unbias(savgol::residual_sd(z, zf.smoothed, spec));
    const auto z_sds = savgol::output_sd(bank, out.log_noise, q);

    if (!alternative_rate) {
        out.log2_excess_filtered.resize(q);
        for (std::size_t i = 0; i < q; ++i) out.log2_excess_filtered[i] = zf.smoothed[i] / ln2;
        out.frac_rate = zf.derivative;
        out.frac_rate_sd = z_sds.derivative_sd;
    } else {
        const auto yf = savgol::apply_filter(bank, series.values);
        const auto y_noise = savgol::unbias(savgol::residual_sd(series.values, yf.smoothed, spec));
        const auto y_sds = savgol::output_sd(bank, y_noise, q);
        out.log2_excess_filtered.resize(q);
        out.frac_rate.resize(q);
        out.frac_rate_sd.resize(q);
        for (std::size_t i = 0; i < q; ++i) {
            const double excess = yf.smoothed[i] - baseline;
            if (excess <= 0.0) {
                throw ValidationError(fmt::format(
                    "filtered value {} ppm in year {} does not exceed the baseline of {} ppm",
                    yf.smoothed[i], series.years[i], baseline));
            }
            out.log2_excess_filtered[i] = std::log(excess) / ln2;
            out.frac_rate[i] = yf.derivative[i] / excess;
            out.frac_rate_sd[i] = y_sds.derivative_sd[i] / excess;
        }
    }

    double sum = 0.0;
    for (double r : out.frac_rate) sum += r;
    out.mean_frac_rate = sum / static_cast<double>(q);
    if (out.mean_frac_rate <= 0.0) {
        throw ValidationError(fmt::format(
            "mean fractional rate is not positive ({}); no doubling period exists",
            out.mean_frac_rate));
    }
    out.doubling_years = ln2 / out.mean_frac_rate;
    return out;
}

} // namespace keeling
