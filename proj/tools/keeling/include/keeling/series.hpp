#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace keeling {

/// One annual-mean record: consecutive calendar years and the matching
/// concentrations, plus whatever provenance the file header carried.
struct AnnualSeries {
    std::vector<int> years;
    std::vector<double> values;        ///< ppm
    std::vector<double> uncertainties; ///< ppm; empty when the file has no third column
    std::string source_metadata;       ///< header comment lines, newline-joined

    std::size_t size() const { return values.size(); }
};

/// Parse a NOAA-style annual-mean file: lines whose first non-blank
/// character is '#' are comments, data lines are comma- or
/// whitespace-separated columns (year, mean[, unc]); extra columns are
/// ignored. Header comments become source_metadata. Throws ValidationError
/// on an empty file, an unparseable line (with its line number), a
/// non-positive or non-finite value, or a gap in the years (naming the
/// missing years).
AnnualSeries parse_noaa_csv(std::string_view text);

/// parse_noaa_csv applied to the contents of a file; errors mention the path.
AnnualSeries load_series(const std::string& path);

} // namespace keeling
