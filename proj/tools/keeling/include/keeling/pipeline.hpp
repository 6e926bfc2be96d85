#pragma once

#include <fmt/format.h>

#include <cstdint>
#include <string>
#include <vector>

#include "keeling/anthro.hpp"
#include "keeling/series.hpp"
#include "savgol/diagnostics.hpp"
#include "savgol/errors.hpp"
#include "savgol/filter.hpp"
#include "savgol/noise.hpp"
#include "savgol/uncertainty.hpp"

namespace keeling {

/// A module error re-thrown with the pipeline stage that hit it, so the CLI
/// can report "error [stage]: ...".
class PipelineError : public savgol::Error {
public:
    PipelineError(std::string stage, const std::string& message)
        : Error(fmt::format("[{}] {}", stage, message)), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// Sweep, noise floor, and chosen half-window for one parameter count.
struct SelectionResult {
    savgol::SweepTable table;
    savgol::NoiseEstimate floor; ///< plateau of the differenced-residual SD
    int selected_half_window;
};

struct PipelineOptions {
    std::vector<int> candidate_params = {3, 5, 7};
    int report_params = 5;       ///< parameter count of the reported filter
    int report_half_window = 0;  ///< 0: use the data-driven selection
    int max_half_window = 25;    ///< sweep ceiling; reduced automatically on short series
    double level = 0.95;
    std::uint64_t seed = 20240901;
    int trials = 1000;
    double baseline = 280.0; ///< ppm, preindustrial concentration
    bool alternative_rate = false;
    savgol::Weighting weighting = savgol::Weighting::OptimalQuadratic;
};

/// Everything the report and the figure files draw on, produced in one
/// deterministic pass.
struct PipelineBundle {
    AnnualSeries series;
    PipelineOptions options;

    std::vector<SelectionResult> selections; ///< one per candidate parameter count
    savgol::FilterSpec report_spec;

    savgol::FilteredSeries filtered;
    std::vector<double> residuals; ///< y - yf
    savgol::NoiseEstimate biased_noise;
    savgol::NoiseEstimate unbiased_noise;
    savgol::OutputNoiseSd output_noise;
    savgol::ConfidenceBands bands;

    savgol::VarianceTest variance_test;
    savgol::ProbabilityPlotData qq;
    savgol::PolySweep poly;
    savgol::MonteCarloSummary mc;

    AnthropogenicSeries anthro;

    std::vector<std::string> warnings;
};

/// Run the full analysis: sweep each candidate parameter count, locate the
/// noise floor, select the half-window, filter with the report spec,
/// propagate confidence bands, run the diagnostics and the Monte Carlo
/// check, and add the anthropogenic analysis. Deterministic given the
/// options (including the seed). Module errors are re-thrown as
/// PipelineError with the stage name.
PipelineBundle run_pipeline(const AnnualSeries& series, const PipelineOptions& options = {});

} // namespace keeling
