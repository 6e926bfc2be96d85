#include "keeling/pipeline.hpp"

#include <algorithm>
#include <utility>

namespace keeling {

namespace {

template <class F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const PipelineError&) {
        throw;
    } catch (const savgol::Error& e) {
        throw PipelineError(name, e.what());
    }
}

} // namespace

PipelineBundle run_pipeline(const AnnualSeries& series, const PipelineOptions& options) {
    std::vector<std::string> warnings;
    const std::size_t q = series.size();
    if (q < 3) {
        throw PipelineError("ingest", fmt::format(
            "the analysis needs at least 3 annual values, got {}", q));
    }

    // the sweep needs 2m+1 <= q; shrink the ceiling instead of failing so
    // shorter series still get the full treatment
    int max_m = options.max_half_window;
    const int feasible_m = (static_cast<int>(q) - 1) / 2;
    if (max_m > feasible_m) {
        warnings.push_back(fmt::format(
            "series of {} samples supports half-windows only up to {}; "
            "sweep ceiling reduced from {}",
            q, feasible_m, max_m));
        max_m = feasible_m;
    }

    auto candidates = options.candidate_params;
    if (std::find(candidates.begin(), candidates.end(), options.report_params) ==
        candidates.end())
        candidates.push_back(options.report_params);

    std::vector<SelectionResult> selections;
    int selected_for_report = 0;
    for (int n : candidates) {
        auto table = stage("sweep", [&] {
            return savgol::sweep_residual_sd(n, max_m, series.values, options.weighting);
        });
        auto floor = stage("floor", [&] { return savgol::estimate_noise_floor(table); });
        const int m = stage("select", [&] { return savgol::select_half_window(table, floor); });
        if (n == options.report_params) selected_for_report = m;
        selections.push_back({std::move(table), floor, m});
    }

    const int report_m =
        options.report_half_window > 0 ? options.report_half_window : selected_for_report;
    const auto spec = stage("filter", [&] {
        return savgol::FilterSpec(options.report_params, report_m, options.weighting);
    });
    if (spec.even_params_advisory()) {
        warnings.push_back(fmt::format(
            "an even parameter count (n = {}) buys no extra interior smoothing "
            "accuracy and only inflates the confidence intervals; prefer odd n",
            spec.params));
    }

    const auto bank = stage("filter", [&] { return savgol::build_coefficient_bank(spec); });
    auto filtered = stage("filter", [&] { return savgol::apply_filter(bank, series.values); });
    std::vector<double> residuals(q);
    for (std::size_t i = 0; i < q; ++i) residuals[i] = series.values[i] - filtered.smoothed[i];

    const auto biased = stage("noise", [&] {
        return savgol::residual_sd(series.values, filtered.smoothed, spec);
    });
    const auto unbiased = stage("noise", [&] { return savgol::unbias(biased); });

    auto output_noise = stage("ci", [&] { return savgol::output_sd(bank, unbiased, q); });
    auto bands = stage("ci", [&] {
        return savgol::bands(filtered, output_noise, options.level);
    });

    auto variance_test =
        stage("diagnostics", [&] { return savgol::variance_ratio_test(residuals); });
    auto qq = stage("diagnostics", [&] { return savgol::normal_plot_data(residuals, unbiased); });

    int max_degree = std::min(20, static_cast<int>(q) - 2);
    if (max_degree < 20) {
        warnings.push_back(fmt::format(
            "polynomial check limited to degree {} on {} samples", max_degree, q));
    }
    auto poly = stage("diagnostics", [&] {
        return savgol::polynomial_noise_oracle(series.values, 2, max_degree);
    });

    auto mc = stage("montecarlo", [&] {
        return savgol::monte_carlo_validate(spec, series.values, unbiased.sd, options.trials,
                                            options.seed, options.level);
    });

    auto anthro = stage("anthro", [&] {
        return anthropogenic_analysis(series, spec, options.baseline, options.alternative_rate);
    });

    return PipelineBundle{series,
                          options,
                          std::move(selections),
                          spec,
                          std::move(filtered),
                          std::move(residuals),
                          biased,
                          unbiased,
                          std::move(output_noise),
                          std::move(bands),
                          variance_test,
                          std::move(qq),
                          std::move(poly),
                          std::move(mc),
                          std::move(anthro),
                          std::move(warnings)};
}

} // namespace keeling
