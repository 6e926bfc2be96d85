#include "keeling/series.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "savgol/errors.hpp"

namespace keeling {

using savgol::ValidationError;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool decorative(std::string_view s) {
    for (char c : s)
        if (c != '-' && c != '=' && c != '*') return false;
    return true;
}

} // namespace

AnnualSeries parse_noaa_csv(std::string_view text) {
    AnnualSeries series;
    std::vector<std::string> header;
    bool any_unc = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            // header comments carry provenance; keep them until data starts
            if (series.values.empty()) {
                std::string_view body = trim(line.substr(1));
                if (!body.empty() && !decorative(body)) header.emplace_back(body);
            }
            continue;
        }

        std::string fields{line};
        for (char& c : fields)
            if (c == ',') c = ' ';
        std::istringstream cols{fields};
        std::string ytok;
        double mean = 0.0;
        if (!(cols >> ytok >> mean)) {
            throw ValidationError(fmt::format(
                "line {}: expected columns year, mean[, unc] but got \"{}\"", lineno, line));
        }
        char* end = nullptr;
        const long year = std::strtol(ytok.c_str(), &end, 10);
        if (end == ytok.c_str() || *end != '\0') {
            throw ValidationError(
                fmt::format("line {}: year column \"{}\" is not an integer", lineno, ytok));
        }
        if (!std::isfinite(mean) || mean <= 0.0) {
            throw ValidationError(fmt::format(
                "line {}: concentration must be finite and positive (got {})", lineno, mean));
        }
        double unc;
        if (cols >> unc) {
            any_unc = true;
        } else {
            unc = 0.0;
        }
        series.years.push_back(static_cast<int>(year));
        series.values.push_back(mean);
        series.uncertainties.push_back(unc);
    }

    if (series.values.empty()) throw ValidationError("no data rows found");
    for (std::size_t i = 1; i < series.years.size(); ++i) {
        const int prev = series.years[i - 1];
        const int cur = series.years[i];
        if (cur == prev + 1) continue;
        if (cur <= prev) {
            throw ValidationError(fmt::format(
                "years must increase by one: {} follows {}", cur, prev));
        }
        std::string missing;
        for (int y = prev + 1; y < cur; ++y) {
            if (!missing.empty()) missing += ", ";
            missing += std::to_string(y);
        }
        throw ValidationError(fmt::format("gap in years: missing {}", missing));
    }
    if (!any_unc) series.uncertainties.clear();

    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) series.source_metadata += '\n';
        series.source_metadata += header[i];
    }
    return series;
}

AnnualSeries load_series(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot open input file \"{}\"", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_noaa_csv(buf.str());
    } catch (const savgol::Error& e) {
        throw ValidationError(fmt::format("{}: {}", path, e.what()));
    }
}

} // namespace keeling
