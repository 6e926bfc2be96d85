#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "keeling/pipeline.hpp"
#include "savgol/errors.hpp"

namespace keeling {

/// A file or directory could not be written.
class IoError : public savgol::Error {
public:
    using Error::Error;
};

/// One cell of an emitted table: an integer (years, half-windows, degrees),
/// a real value, a label, or a hole (e.g. the first row of a differenced
/// column).
struct Cell {
    enum class Kind { Integer, Real, Text, Missing };
    Kind kind = Kind::Missing;
    long long integer = 0;
    double real = 0.0;
    std::string text;
};

Cell cell(int v);
Cell cell(long long v);
Cell cell(double v);
Cell missing();

/// A named rectangular dataset, ready to serialize.
struct Table {
    std::string name;
    std::string description;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Run parameters recorded alongside every JSON dataset.
struct Metadata {
    savgol::FilterSpec spec;
    double level = 0.95;
    std::uint64_t seed = 0;
    int trials = 0;
    double baseline = 0.0;
    std::string source;
    std::size_t samples = 0;
    int first_year = 0;
    int last_year = 0;
};

Metadata metadata_for(const PipelineBundle& bundle);

/// CSV rendering: '#' description lines, a header row, then data rows.
/// Reals are printed with 10 significant digits; missing cells are empty.
std::string render_csv(const Table& table);

/// JSON envelope: {dataset, metadata, columns, rows}. Rows carry full
/// double precision; missing cells are null. Matches the shipped schema.
std::string render_json(const Table& table, const Metadata& metadata);

/// The twelve figure-ready datasets behind the report, in emission order.
std::vector<Table> figure_tables(const PipelineBundle& bundle);

enum class EmitFormat { Csv, Json, Both };

/// Write every figure table as "<prefix><name>.csv" / ".json". Parent
/// directories are created. Returns the paths written, in a fixed order.
/// Throws IoError when a path cannot be written.
std::vector<std::string> emit(const PipelineBundle& bundle, const std::string& prefix,
                              EmitFormat format);

/// Write one rendered document to a path, creating parent directories.
void write_file(const std::string& path, const std::string& contents);

} // namespace keeling
