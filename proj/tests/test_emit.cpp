#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "keeling/emit.hpp"
#include "keeling/pipeline.hpp"
#include "keeling/series.hpp"
#include "schema_validator.hpp"
#include "support.hpp"

namespace frozen = testsupport::frozen;
using testsupport::near;

using keeling::Cell;
using keeling::EmitFormat;
using keeling::PipelineBundle;
using keeling::Table;

namespace {

const PipelineBundle& bundle() {
    static const PipelineBundle b =
        keeling::run_pipeline(keeling::load_series(SAVGOL_DATA_DIR "/co2_annmean_mlo.csv"));
    return b;
}

const std::vector<Table>& tables() {
    static const std::vector<Table> t = keeling::figure_tables(bundle());
    return t;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("savgol_emit_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

const Table& table_named(const std::string& name) {
    for (const auto& t : tables())
        if (t.name == name) return t;
    REQUIRE(false);
    return tables().front();
}

} // namespace

TEST_CASE("the twelve figure datasets come out in order with their columns") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
        {"fig1a_series", {"year", "y"}},
        {"fig1b_diff", {"year", "dy"}},
        {"fig2a_sweep", {"m", "sd_n3", "sd_n5", "sd_n7"}},
        {"fig2b_sweep",
         {"m", "sd_n3", "sd_n5", "sd_n7", "floor_n3", "floor_n5", "floor_n7"}},
        {"fig3a_filtered", {"year", "y", "yf"}},
        {"fig3b_residuals", {"year", "residual", "residual_norm"}},
        {"fig4a_qq", {"quantile", "residual_norm"}},
        {"fig4b_polysweep", {"degree", "sd"}},
        {"fig5_derivative_ci", {"year", "dyf", "lo", "hi", "dy_raw"}},
        {"fig6_mc", {"year", "sd_empirical", "sd_analytic", "coverage"}},
        {"fig7_log2", {"year", "log2_raw", "log2_filtered"}},
        {"fig8_fracrate", {"year", "frac_rate", "lo", "hi"}},
    };
    REQUIRE(tables().size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(tables()[i].name == expected[i].first);
        CHECK(tables()[i].columns == expected[i].second);
        CHECK(!tables()[i].rows.empty());
        CHECK(!tables()[i].description.empty());
        for (const auto& row : tables()[i].rows)
            CHECK(row.size() == tables()[i].columns.size());
    }
}

TEST_CASE("figure values are consistent with the bundle") {
    const auto& b = bundle();
    const std::size_t q = b.series.size();

    const auto& diff = table_named("fig1b_diff");
    REQUIRE(diff.rows.size() == q - 1);
    CHECK(diff.rows[0][0].integer == b.series.years[1]); // later year convention
    CHECK(diff.rows[0][1].real ==
          doctest::Approx(b.series.values[1] - b.series.values[0]));

    const auto& fig5 = table_named("fig5_derivative_ci");
    REQUIRE(fig5.rows.size() == q);
    CHECK(fig5.rows[0][4].kind == Cell::Kind::Missing);
    for (std::size_t i = 0; i < q; ++i) {
        CHECK(fig5.rows[i][1].real == b.filtered.derivative[i]);
        CHECK(fig5.rows[i][2].real == b.bands.derivative_lo[i]);
        CHECK(fig5.rows[i][3].real == b.bands.derivative_hi[i]);
        if (i > 0)
            CHECK(fig5.rows[i][4].real ==
                  doctest::Approx(b.series.values[i] - b.series.values[i - 1]));
    }

    const auto& sweep_a = table_named("fig2a_sweep");
    const auto& sweep_b = table_named("fig2b_sweep");
    REQUIRE(sweep_a.rows.front()[0].integer == 2); // smallest half-window of n=3
    bool checked_m9 = false;
    for (std::size_t r = 0; r < sweep_a.rows.size(); ++r) {
        if (sweep_a.rows[r][0].integer != 9) continue;
        checked_m9 = true;
        CHECK(near(sweep_a.rows[r][2].real, frozen::sd_a, frozen::tol));
        CHECK(near(sweep_b.rows[r][2].real, frozen::sd_b, frozen::tol));
        CHECK(near(sweep_b.rows[r][5].real, frozen::floor_n5, frozen::tol));
    }
    CHECK(checked_m9);
    // n=7 starts at half-window 4, so earlier rows are holes in its column
    CHECK(sweep_a.rows[0][3].kind == Cell::Kind::Missing);
    CHECK(sweep_a.rows[1][3].kind == Cell::Kind::Missing);
    CHECK(sweep_a.rows[2][3].kind == Cell::Kind::Real);

    const auto& mc = table_named("fig6_mc");
    CHECK(near(mc.rows[33][2].real, frozen::sd_unbiased * frozen::deriv_norm_center, 1e-8));

    const auto& frac = table_named("fig8_fracrate");
    for (std::size_t i = 0; i < q; ++i) {
        const double width = frac.rows[i][3].real - frac.rows[i][2].real;
        CHECK(width == doctest::Approx(2.0 * b.bands.z * b.anthro.frac_rate_sd[i]));
    }
}

TEST_CASE("CSV rendering is headed, documented, and hole-aware") {
    const auto csv = keeling::render_csv(table_named("fig5_derivative_ci"));
    std::istringstream lines(csv);
    std::string l1, l2, l3, l4;
    std::getline(lines, l1);
    std::getline(lines, l2);
    std::getline(lines, l3);
    std::getline(lines, l4);
    CHECK(l1.find("# fig5_derivative_ci:") == 0);
    CHECK(l2 == "# columns: year,dyf,lo,hi,dy_raw");
    CHECK(l3 == "year,dyf,lo,hi,dy_raw");
    CHECK(l4.back() == ','); // first row has no raw difference
    CHECK(csv.back() == '\n');
}

TEST_CASE("emitted JSON validates against the shipped schema") {
    const auto schema = nlohmann::json::parse(slurp(SAVGOL_DATA_DIR "/figure_schema.json"));
    const auto md = keeling::metadata_for(bundle());
    for (const auto& t : tables()) {
        const auto doc = nlohmann::json::parse(keeling::render_json(t, md));
        const auto err = schemacheck::violation(schema, doc);
        CAPTURE(t.name);
        CAPTURE(err);
        CHECK(err.empty());
        REQUIRE(doc["columns"].size() == t.columns.size());
        for (const auto& row : doc["rows"]) CHECK(row.size() == t.columns.size());
    }
}

TEST_CASE("the schema checker itself rejects broken documents") {
    const auto schema = nlohmann::json::parse(slurp(SAVGOL_DATA_DIR "/figure_schema.json"));
    const auto md = keeling::metadata_for(bundle());
    auto doc = nlohmann::json::parse(keeling::render_json(tables().front(), md));

    auto damaged = doc;
    damaged.erase("columns");
    CHECK(!schemacheck::violation(schema, damaged).empty());

    damaged = doc;
    damaged["metadata"]["spec"]["weighting"] = "triangular";
    CHECK(!schemacheck::violation(schema, damaged).empty());

    damaged = doc;
    damaged["metadata"]["level"] = 1.5;
    CHECK(!schemacheck::violation(schema, damaged).empty());

    damaged = doc;
    damaged["rows"][0][0] = nlohmann::json::object();
    CHECK(!schemacheck::violation(schema, damaged).empty());

    damaged = doc;
    damaged["extra"] = 1;
    CHECK(!schemacheck::violation(schema, damaged).empty());
}

TEST_CASE("JSON rows mirror the CSV rows") {
    const auto& t = table_named("fig3a_filtered");
    const auto md = keeling::metadata_for(bundle());
    const auto doc = nlohmann::json::parse(keeling::render_json(t, md));
    const auto csv = keeling::render_csv(t);

    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // description
    std::getline(lines, line); // column comment
    std::getline(lines, line); // header
    std::size_t r = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(cells, cell, ',')) {
            const double csv_value = std::strtod(cell.c_str(), nullptr);
            const double json_value = doc["rows"][r][c].get<double>();
            // CSV carries 10 significant digits; JSON carries full precision
            CHECK(csv_value == doctest::Approx(json_value).epsilon(1e-9));
            ++c;
        }
        CHECK(c == t.columns.size());
        ++r;
    }
    CHECK(r == t.rows.size());
}

TEST_CASE("emit writes both formats, creates directories, and is byte-stable") {
    const auto dir1 = fresh_dir("a");
    const auto dir2 = fresh_dir("b");
    const auto files1 = keeling::emit(bundle(), (dir1 / "nested" / "run_").string(),
                                      EmitFormat::Both);
    const auto files2 = keeling::emit(bundle(), (dir2 / "nested" / "run_").string(),
                                      EmitFormat::Both);
    REQUIRE(files1.size() == 24);
    REQUIRE(files2.size() == 24);
    for (std::size_t i = 0; i < files1.size(); ++i) {
        CHECK(slurp(files1[i]) == slurp(files2[i]));
        CHECK(std::filesystem::path(files1[i]).filename() ==
              std::filesystem::path(files2[i]).filename());
    }

    const auto csv_only = keeling::emit(bundle(), (dir1 / "csv_").string(), EmitFormat::Csv);
    CHECK(csv_only.size() == 12);
    for (const auto& f : csv_only) CHECK(f.ends_with(".csv"));
    const auto json_only = keeling::emit(bundle(), (dir1 / "json_").string(), EmitFormat::Json);
    CHECK(json_only.size() == 12);
    for (const auto& f : json_only) CHECK(f.ends_with(".json"));

    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("unwritable destinations raise an I/O error") {
    CHECK_THROWS_AS(keeling::write_file("/proc/definitely/not/writable.csv", "x"),
                    keeling::IoError);
}
