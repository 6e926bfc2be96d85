#include "keeling/emit.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <utility>

#ifndef SAVGOL_VERSION
#define SAVGOL_VERSION "0.0.0"
#endif

namespace keeling {

using ordered_json = nlohmann::ordered_json;

Cell cell(int v) { return Cell{Cell::Kind::Integer, v, 0.0}; }
Cell cell(long long v) { return Cell{Cell::Kind::Integer, v, 0.0}; }
Cell cell(double v) { return Cell{Cell::Kind::Real, 0, v}; }
Cell missing() { return Cell{}; }

Metadata metadata_for(const PipelineBundle& bundle) {
    Metadata md{bundle.report_spec};
    md.level = bundle.options.level;
    md.seed = bundle.options.seed;
    md.trials = bundle.options.trials;
    md.baseline = bundle.options.baseline;
    md.source = bundle.series.source_metadata;
    md.samples = bundle.series.size();
    md.first_year = bundle.series.years.front();
    md.last_year = bundle.series.years.back();
    return md;
}

std::string render_csv(const Table& table) {
    std::string out;
    out += fmt::format("# {}: {}\n", table.name, table.description);
    std::string header;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) header += ',';
        header += table.columns[c];
    }
    out += fmt::format("# columns: {}\n", header);
    out += header;
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            switch (row[c].kind) {
            case Cell::Kind::Integer: out += std::to_string(row[c].integer); break;
            case Cell::Kind::Real: out += fmt::format("{:.10g}", row[c].real); break;
            case Cell::Kind::Text: out += row[c].text; break;
            case Cell::Kind::Missing: break;
            }
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table, const Metadata& metadata) {
    ordered_json doc;
    doc["dataset"] = table.name;
    doc["description"] = table.description;

    ordered_json md;
    md["version"] = SAVGOL_VERSION;
    ordered_json spec;
    spec["params"] = metadata.spec.params;
    spec["half_window"] = metadata.spec.half_window;
    spec["weighting"] = savgol::to_string(metadata.spec.weighting);
    md["spec"] = std::move(spec);
    md["level"] = metadata.level;
    md["seed"] = metadata.seed;
    md["trials"] = metadata.trials;
    md["baseline"] = metadata.baseline;
    md["source"] = metadata.source;
    md["samples"] = metadata.samples;
    md["first_year"] = metadata.first_year;
    md["last_year"] = metadata.last_year;
    doc["metadata"] = std::move(md);

    doc["columns"] = table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r = ordered_json::array();
        for (const auto& c : row) {
            switch (c.kind) {
            case Cell::Kind::Integer: r.push_back(c.integer); break;
            case Cell::Kind::Real: r.push_back(c.real); break;
            case Cell::Kind::Text: r.push_back(c.text); break;
            case Cell::Kind::Missing: r.push_back(nullptr); break;
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::vector<Table> figure_tables(const PipelineBundle& b) {
    const auto& years = b.series.years;
    const auto& y = b.series.values;
    const std::size_t q = b.series.size();
    std::vector<Table> tables;

    {
        Table t{"fig1a_series", "annual mean concentration (ppm)", {"year", "y"}, {}};
        for (std::size_t i = 0; i < q; ++i) t.rows.push_back({cell(years[i]), cell(y[i])});
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig1b_diff", "annual change, y[i] - y[i-1], listed under the later year",
                {"year", "dy"},
                {}};
        for (std::size_t i = 1; i < q; ++i)
            t.rows.push_back({cell(years[i]), cell(y[i] - y[i - 1])});
        tables.push_back(std::move(t));
    }

    // union of the half-window ranges across the candidate parameter counts
    int m_lo = b.selections.front().table.rows.front().half_window;
    int m_hi = b.selections.front().table.rows.back().half_window;
    for (const auto& sel : b.selections) {
        m_lo = std::min(m_lo, sel.table.rows.front().half_window);
        m_hi = std::max(m_hi, sel.table.rows.back().half_window);
    }
    auto sweep_table = [&](const std::string& name, const std::string& description,
                           bool differenced, bool with_floor) {
        Table t{name, description, {"m"}, {}};
        for (const auto& sel : b.selections)
            t.columns.push_back(fmt::format("sd_n{}", sel.table.params));
        if (with_floor)
            for (const auto& sel : b.selections)
                t.columns.push_back(fmt::format("floor_n{}", sel.table.params));
        for (int m = m_lo; m <= m_hi; ++m) {
            std::vector<Cell> row{cell(m)};
            for (const auto& sel : b.selections) {
                const int first = sel.table.rows.front().half_window;
                const int last = sel.table.rows.back().half_window;
                if (m < first || m > last) {
                    row.push_back(missing());
                } else {
                    const auto& r = sel.table.rows[static_cast<std::size_t>(m - first)];
                    row.push_back(cell(differenced ? r.differenced_sd : r.residual_sd));
                }
            }
            if (with_floor)
                for (const auto& sel : b.selections) row.push_back(cell(sel.floor.sd));
            t.rows.push_back(std::move(row));
        }
        return t;
    };
    tables.push_back(sweep_table(
        "fig2a_sweep", "residual SD of the filter vs half-window, per parameter count", false,
        false));
    tables.push_back(sweep_table("fig2b_sweep",
                                 "differenced-residual SD vs half-window, per parameter "
                                 "count, with the plateau level",
                                 true, true));

    {
        Table t{"fig3a_filtered", "measured series and filtered output (ppm)",
                {"year", "y", "yf"},
                {}};
        for (std::size_t i = 0; i < q; ++i)
            t.rows.push_back({cell(years[i]), cell(y[i]), cell(b.filtered.smoothed[i])});
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig3b_residuals",
                "filter residuals y - yf (ppm) and the same normalized by the noise SD",
                {"year", "residual", "residual_norm"},
                {}};
        for (std::size_t i = 0; i < q; ++i)
            t.rows.push_back({cell(years[i]), cell(b.residuals[i]),
                              cell(b.residuals[i] / b.unbiased_noise.sd)});
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig4a_qq",
                "normal probability plot: sorted normalized residuals vs normal quantiles",
                {"quantile", "residual_norm"},
                {}};
        for (std::size_t i = 0; i < b.qq.quantiles.size(); ++i)
            t.rows.push_back({cell(b.qq.quantiles[i]), cell(b.qq.sorted_residuals[i])});
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig4b_polysweep",
                "unbiased residual SD of a global polynomial fit vs degree (ppm)",
                {"degree", "sd"},
                {}};
        for (const auto& p : b.poly.points)
            t.rows.push_back({cell(p.degree), cell(p.unbiased_sd)});
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig5_derivative_ci",
                "filtered derivative (ppm/yr) with confidence band and raw annual differences",
                {"year", "dyf", "lo", "hi", "dy_raw"},
                {}};
        for (std::size_t i = 0; i < q; ++i) {
            t.rows.push_back({cell(years[i]), cell(b.filtered.derivative[i]),
                              cell(b.bands.derivative_lo[i]), cell(b.bands.derivative_hi[i]),
                              i == 0 ? missing() : cell(y[i] - y[i - 1])});
        }
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig6_mc",
                "per-sample derivative-error SD: seeded trials vs propagation; coverage "
                "is the fraction of trials whose smoothed band contains the true value",
                {"year", "sd_empirical", "sd_analytic", "coverage"},
                {}};
        for (std::size_t i = 0; i < q; ++i)
            t.rows.push_back({cell(years[i]), cell(b.mc.empirical_derivative_sd[i]),
                              cell(b.mc.analytic_derivative_sd[i]),
                              cell(b.mc.smoothed_coverage[i])});
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig7_log2",
                "log2 of the concentration in excess of the baseline, raw and filtered",
                {"year", "log2_raw", "log2_filtered"},
                {}};
        for (std::size_t i = 0; i < q; ++i)
            t.rows.push_back({cell(years[i]), cell(b.anthro.log2_excess_raw[i]),
                              cell(b.anthro.log2_excess_filtered[i])});
        tables.push_back(std::move(t));
    }
    {
        Table t{"fig8_fracrate",
                "fractional rate of change of the excess (1/yr) with confidence band",
                {"year", "frac_rate", "lo", "hi"},
                {}};
        for (std::size_t i = 0; i < q; ++i) {
            const double half = b.bands.z * b.anthro.frac_rate_sd[i];
            t.rows.push_back({cell(years[i]), cell(b.anthro.frac_rate[i]),
                              cell(b.anthro.frac_rate[i] - half),
                              cell(b.anthro.frac_rate[i] + half)});
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

void write_file(const std::string& path, const std::string& contents) {
    const std::filesystem::path p{path};
    std::error_code ec;
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) {
            throw IoError(fmt::format("cannot create directory \"{}\": {}",
                                      p.parent_path().string(), ec.message()));
        }
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open \"{}\" for writing", path));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError(fmt::format("write to \"{}\" failed", path));
}

std::vector<std::string> emit(const PipelineBundle& bundle, const std::string& prefix,
                              EmitFormat format) {
    const auto metadata = metadata_for(bundle);
    std::vector<std::string> written;
    for (const auto& table : figure_tables(bundle)) {
        if (format != EmitFormat::Json) {
            auto path = prefix + table.name + ".csv";
            write_file(path, render_csv(table));
            written.push_back(std::move(path));
        }
        if (format != EmitFormat::Csv) {
            auto path = prefix + table.name + ".json";
            write_file(path, render_json(table, metadata));
            written.push_back(std::move(path));
        }
    }
    return written;
}

} // namespace keeling
