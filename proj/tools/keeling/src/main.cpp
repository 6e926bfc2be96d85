#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "keeling/emit.hpp"
#include "keeling/fetch.hpp"
#include "keeling/pipeline.hpp"
#include "keeling/series.hpp"
#include "savgol/diagnostics.hpp"
#include "savgol/filter.hpp"
#include "savgol/noise.hpp"
#include "savgol/uncertainty.hpp"

#ifndef KEELING_SNAPSHOT
#define KEELING_SNAPSHOT ""
#endif

namespace {

using keeling::AnnualSeries;
using keeling::Cell;
using keeling::cell;
using keeling::Metadata;
using keeling::PipelineError;
using keeling::Table;

Cell text(std::string s) {
    Cell c;
    c.kind = Cell::Kind::Text;
    c.text = std::move(s);
    return c;
}

struct Options {
    std::string input = KEELING_SNAPSHOT;
    bool fetch = false;
    std::string url = keeling::kDefaultDataUrl;
    int n = 5;
    int m = 0; // 0: select from the data
    int max_m = 25;
    double level = 0.95;
    std::uint64_t seed = 20240901;
    int trials = 1000;
    double baseline = 280.0;
    bool alt_rate = false;
    std::string format = "csv";
    std::string out;
};

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

void add_data_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input,
                    "annual-mean CSV file (defaults to the vendored snapshot)")
        ->capture_default_str();
    cmd->add_flag("--fetch", o.fetch, "download the series instead of reading --input");
    cmd->add_option("--url", o.url, "source URL used with --fetch")->capture_default_str();
}

void add_spec_flags(CLI::App* cmd, Options& o, bool with_max) {
    cmd->add_option("--n", o.n, "polynomial parameter count (degree + 1)")
        ->capture_default_str();
    cmd->add_option("--m", o.m, "half-window; 0 selects it from the data")
        ->capture_default_str();
    if (with_max)
        cmd->add_option("--max-m", o.max_m, "largest half-window for the sweep")
            ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Options& o, bool allow_both) {
    auto values = allow_both ? std::vector<std::string>{"csv", "json", "both"}
                             : std::vector<std::string>{"csv", "json"};
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember(values))
        ->capture_default_str();
    cmd->add_option("--out", o.out,
                    allow_both ? "output path prefix for the figure files"
                               : "output file (default: stdout)");
}

AnnualSeries load_input(const Options& o) {
    if (o.fetch) {
        const auto body = stage("fetch", [&] { return keeling::fetch_url(o.url); });
        return stage("ingest", [&] { return keeling::parse_noaa_csv(body); });
    }
    if (o.input.empty())
        throw PipelineError("ingest", "no input file: pass --input or --fetch");
    return stage("ingest", [&] { return keeling::load_series(o.input); });
}

savgol::FilterSpec resolve_spec(const Options& o, const AnnualSeries& series) {
    int m = o.m;
    if (m == 0) {
        const auto table = stage("sweep", [&] {
            return savgol::sweep_residual_sd(o.n, std::min(o.max_m,
                                                           (static_cast<int>(series.size()) - 1) /
                                                               2),
                                             series.values);
        });
        const auto floor = stage("floor", [&] { return savgol::estimate_noise_floor(table); });
        m = stage("select", [&] { return savgol::select_half_window(table, floor); });
    }
    auto spec = stage("filter", [&] { return savgol::FilterSpec(o.n, m); });
    if (spec.even_params_advisory()) {
        fmt::print(stderr,
                   "warning: an even parameter count (n = {}) buys no extra interior "
                   "smoothing accuracy and only inflates the confidence intervals\n",
                   spec.params);
    }
    return spec;
}

Metadata basic_metadata(const savgol::FilterSpec& spec, const Options& o,
                        const AnnualSeries& series) {
    Metadata md{spec};
    md.level = o.level;
    md.seed = o.seed;
    md.trials = o.trials;
    md.baseline = o.baseline;
    md.source = series.source_metadata;
    md.samples = series.size();
    md.first_year = series.years.front();
    md.last_year = series.years.back();
    return md;
}

void deliver(const Table& table, const Metadata& md, const Options& o) {
    const auto doc =
        o.format == "json" ? keeling::render_json(table, md) : keeling::render_csv(table);
    if (o.out.empty()) {
        std::fwrite(doc.data(), 1, doc.size(), stdout);
    } else {
        stage("emit", [&] {
            keeling::write_file(o.out, doc);
            return 0;
        });
    }
}

int run_filter(const Options& o) {
    const auto series = load_input(o);
    const auto spec = resolve_spec(o, series);
    const auto filtered = stage("filter", [&] { return savgol::apply_filter(spec, series.values); });
    Table t{"filter", "filtered series and per-year derivative", {"year", "y", "yf", "dyf"}, {}};
    for (std::size_t i = 0; i < series.size(); ++i)
        t.rows.push_back({cell(series.years[i]), cell(series.values[i]),
                          cell(filtered.smoothed[i]), cell(filtered.derivative[i])});
    deliver(t, basic_metadata(spec, o, series), o);
    return 0;
}

int run_sweep(const Options& o) {
    const auto series = load_input(o);
    const auto table = stage("sweep", [&] {
        return savgol::sweep_residual_sd(o.n, o.max_m, series.values);
    });
    Table t{"sweep", "residual SDs vs half-window", {"m", "sd_residual", "sd_differenced"}, {}};
    for (const auto& row : table.rows)
        t.rows.push_back({cell(row.half_window), cell(row.residual_sd),
                          cell(row.differenced_sd)});
    const savgol::FilterSpec spec(o.n, table.rows.back().half_window);
    deliver(t, basic_metadata(spec, o, series), o);
    return 0;
}

int run_select(const Options& o, bool n_given) {
    const auto series = load_input(o);
    const std::vector<int> candidates = n_given ? std::vector<int>{o.n}
                                                : std::vector<int>{3, 5, 7};
    Table t{"select", "noise floor and selected half-window per parameter count",
            {"n", "floor", "selected_m", "sd_at_selected"},
            {}};
    savgol::FilterSpec last_spec(5, 9);
    for (int n : candidates) {
        Options local = o;
        local.n = n;
        const auto table = stage("sweep", [&] {
            return savgol::sweep_residual_sd(n, local.max_m, series.values);
        });
        const auto floor = stage("floor", [&] { return savgol::estimate_noise_floor(table); });
        const int m = stage("select", [&] { return savgol::select_half_window(table, floor); });
        double sd_sel = 0.0;
        for (const auto& row : table.rows)
            if (row.half_window == m) sd_sel = row.residual_sd;
        t.rows.push_back({cell(n), cell(floor.sd), cell(m), cell(sd_sel)});
        last_spec = savgol::FilterSpec(n, m);
    }
    deliver(t, basic_metadata(last_spec, o, series), o);
    return 0;
}

int run_ci(const Options& o) {
    const auto series = load_input(o);
    const auto spec = resolve_spec(o, series);
    const auto bank = stage("filter", [&] { return savgol::build_coefficient_bank(spec); });
    const auto filtered = stage("filter", [&] {
        return savgol::apply_filter(bank, series.values);
    });
    const auto noise = stage("noise", [&] {
        return savgol::unbias(savgol::residual_sd(series.values, filtered.smoothed, spec));
    });
    const auto sds = stage("ci", [&] {
        return savgol::output_sd(bank, noise, series.size());
    });
    const auto bands = stage("ci", [&] { return savgol::bands(filtered, sds, o.level); });
    Table t{"ci", "filtered outputs with symmetric confidence bands",
            {"year", "y", "yf", "sd_yf", "lo", "hi", "dyf", "sd_dyf", "dlo", "dhi"},
            {}};
    for (std::size_t i = 0; i < series.size(); ++i)
        t.rows.push_back({cell(series.years[i]), cell(series.values[i]),
                          cell(filtered.smoothed[i]), cell(sds.smoothed_sd[i]),
                          cell(bands.smoothed_lo[i]), cell(bands.smoothed_hi[i]),
                          cell(filtered.derivative[i]), cell(sds.derivative_sd[i]),
                          cell(bands.derivative_lo[i]), cell(bands.derivative_hi[i])});
    deliver(t, basic_metadata(spec, o, series), o);
    return 0;
}

int run_montecarlo(const Options& o) {
    const auto series = load_input(o);
    const auto spec = resolve_spec(o, series);
    const auto filtered = stage("filter", [&] {
        return savgol::apply_filter(spec, series.values);
    });
    const auto noise = stage("noise", [&] {
        return savgol::unbias(savgol::residual_sd(series.values, filtered.smoothed, spec));
    });
    const auto mc = stage("montecarlo", [&] {
        return savgol::monte_carlo_validate(spec, series.values, noise.sd, o.trials, o.seed,
                                            o.level);
    });
    Table t{"montecarlo",
            "trial-based output-noise SDs against the analytic propagation",
            {"year", "sd_smooth_empirical", "sd_smooth_analytic", "sd_deriv_empirical",
             "sd_deriv_analytic", "coverage"},
            {}};
    double worst = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        t.rows.push_back({cell(series.years[i]), cell(mc.empirical_smoothed_sd[i]),
                          cell(mc.analytic_smoothed_sd[i]), cell(mc.empirical_derivative_sd[i]),
                          cell(mc.analytic_derivative_sd[i]), cell(mc.smoothed_coverage[i])});
        worst = std::max(worst, std::abs(mc.empirical_derivative_sd[i] /
                                             mc.analytic_derivative_sd[i] -
                                         1.0));
    }
    deliver(t, basic_metadata(spec, o, series), o);
    fmt::print(stderr, "montecarlo: {} trials, sigma {:.6g}, worst derivative-SD deviation {:.2f}%\n",
               o.trials, noise.sd, 100.0 * worst);
    return 0;
}

int run_diagnose(const Options& o) {
    const auto series = load_input(o);
    const auto spec = resolve_spec(o, series);
    const auto filtered = stage("filter", [&] {
        return savgol::apply_filter(spec, series.values);
    });
    std::vector<double> residuals(series.size());
    for (std::size_t i = 0; i < residuals.size(); ++i)
        residuals[i] = series.values[i] - filtered.smoothed[i];
    const auto noise = stage("noise", [&] {
        return savgol::unbias(savgol::residual_sd(series.values, filtered.smoothed, spec));
    });
    const auto ftest = stage("diagnostics", [&] {
        return savgol::variance_ratio_test(residuals);
    });
    const auto qq = stage("diagnostics", [&] {
        return savgol::normal_plot_data(residuals, noise);
    });
    const int max_degree = std::min(20, static_cast<int>(series.size()) - 2);
    const auto poly = stage("diagnostics", [&] {
        return savgol::polynomial_noise_oracle(series.values, 2, max_degree);
    });
    double qq_dev = 0.0;
    for (std::size_t i = 0; i < qq.quantiles.size(); ++i)
        qq_dev = std::max(qq_dev, std::abs(qq.sorted_residuals[i] - qq.quantiles[i]));

    Table t{"diagnose", "residual diagnostics summary", {"metric", "value"}, {}};
    t.rows.push_back({text("unbiased_noise_sd"), cell(noise.sd)});
    t.rows.push_back({text("variance_ratio"), cell(ftest.ratio)});
    t.rows.push_back({text("variance_p_value"), cell(ftest.p_value)});
    t.rows.push_back({text("variance_pass_95"), cell(ftest.pass_95 ? 1 : 0)});
    t.rows.push_back({text("first_half_variance"), cell(ftest.first_variance)});
    t.rows.push_back({text("second_half_variance"), cell(ftest.second_variance)});
    t.rows.push_back({text("qq_max_abs_deviation"), cell(qq_dev)});
    t.rows.push_back({text("poly_best_degree"), cell(poly.best_degree)});
    t.rows.push_back({text("poly_min_sd"), cell(poly.min_sd)});
    t.rows.push_back({text("poly_vs_filter_gap"), cell(std::abs(poly.min_sd - noise.sd))});
    deliver(t, basic_metadata(spec, o, series), o);
    return 0;
}

int run_keeling(const Options& o) {
    const auto series = load_input(o);
    keeling::PipelineOptions popts;
    popts.report_half_window = o.m;
    popts.report_params = o.n;
    popts.max_half_window = o.max_m;
    popts.level = o.level;
    popts.seed = o.seed;
    popts.trials = o.trials;
    popts.baseline = o.baseline;
    popts.alternative_rate = o.alt_rate;
    const auto bundle = keeling::run_pipeline(series, popts);
    for (const auto& w : bundle.warnings) fmt::print(stderr, "warning: {}\n", w);

    const auto fmt_mode = o.format == "csv"    ? keeling::EmitFormat::Csv
                          : o.format == "json" ? keeling::EmitFormat::Json
                                               : keeling::EmitFormat::Both;
    const auto files = stage("emit", [&] { return keeling::emit(bundle, o.out, fmt_mode); });
    for (const auto& f : files) fmt::print("{}\n", f);

    fmt::print(stderr,
               "keeling: spec ({}, {}), unbiased noise SD {:.3f} ppm, "
               "doubling period {:.1f} yr, mean fractional rate {:.4f}/yr\n",
               bundle.report_spec.params, bundle.report_spec.half_window,
               bundle.unbiased_noise.sd, bundle.anthro.doubling_years,
               bundle.anthro.mean_frac_rate);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Savitzky-Golay filtering with data-driven parameter selection"};
    app.require_subcommand(1);

    Options o;
    auto* filter = app.add_subcommand("filter", "smooth a series and take its derivative");
    add_data_flags(filter, o);
    add_spec_flags(filter, o, true);
    add_output_flags(filter, o, false);

    auto* sweep = app.add_subcommand("sweep", "residual SDs over a range of half-windows");
    add_data_flags(sweep, o);
    add_spec_flags(sweep, o, true);
    add_output_flags(sweep, o, false);

    auto* select = app.add_subcommand("select", "data-driven half-window selection");
    add_data_flags(select, o);
    add_spec_flags(select, o, true);
    add_output_flags(select, o, false);

    auto* ci = app.add_subcommand("ci", "filter outputs with confidence bands");
    add_data_flags(ci, o);
    add_spec_flags(ci, o, true);
    ci->add_option("--level", o.level, "band coverage probability")->capture_default_str();
    add_output_flags(ci, o, false);

    auto* mc = app.add_subcommand("montecarlo", "seeded check of the noise propagation");
    add_data_flags(mc, o);
    add_spec_flags(mc, o, true);
    mc->add_option("--level", o.level, "band coverage probability")->capture_default_str();
    mc->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    mc->add_option("--trials", o.trials, "number of trials")->capture_default_str();
    add_output_flags(mc, o, false);

    auto* diag = app.add_subcommand("diagnose", "residual diagnostics");
    add_data_flags(diag, o);
    add_spec_flags(diag, o, true);
    add_output_flags(diag, o, false);

    auto* keel = app.add_subcommand("keeling",
                                    "full pipeline: sweep, select, filter, bands, "
                                    "diagnostics, Monte Carlo, growth analysis");
    add_data_flags(keel, o);
    add_spec_flags(keel, o, true);
    keel->add_option("--level", o.level, "band coverage probability")->capture_default_str();
    keel->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    keel->add_option("--trials", o.trials, "number of trials")->capture_default_str();
    keel->add_option("--baseline", o.baseline, "preindustrial concentration, ppm")
        ->capture_default_str();
    keel->add_flag("--alt-rate", o.alt_rate,
                   "compute the fractional rate as dyf/(yf - baseline) instead of "
                   "filtering the log-transformed series");
    o.format = "both";
    add_output_flags(keel, o, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (filter->parsed()) return run_filter(o);
        if (sweep->parsed()) return run_sweep(o);
        if (select->parsed()) return run_select(o, select->count("--n") > 0);
        if (ci->parsed()) return run_ci(o);
        if (mc->parsed()) return run_montecarlo(o);
        if (diag->parsed()) return run_diagnose(o);
        if (keel->parsed()) return run_keeling(o);
    } catch (const PipelineError& e) {
        fmt::print(stderr, "error {}\n", e.what());
        return 1;
    } catch (const savgol::Error& e) {
        fmt::print(stderr, "error [internal] {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error [internal] {}\n", e.what());
        return 1;
    }
    return 0;
}
