#pragma once

#include "subrepair/csv.hpp"

#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace subrepair {

enum class Kind { Numeric, Categorical };

struct AttributeMeta {
    std::string name;
    int index = 0; // 0-based column ordinal within the dataset
    Kind kind = Kind::Categorical;
    std::string missing_token;
};

// Locale-independent numeric parse (decimal point, optional exponent).
// Returns nullopt unless the whole trimmed string is a finite real.
std::optional<double> parse_numeric(const std::string& raw);

// Immutable typed table. Row ids are 0-based file order; cells are kept as
// raw strings with a parsed shadow value for every non-missing cell of a
// Numeric column. A column is Numeric iff every non-missing value parses
// as a finite real number.
class Dataset {
public:
    Dataset() = default;

    // Builds a dataset from a header and data rows, inferring column kinds.
    // Throws SchemaError on duplicate header names and RowShapeError when a
    // row's cell count differs from the header's.
    static Dataset from_rows(std::vector<std::string> header,
                             std::vector<csv::Row> data_rows,
                             std::string missing_token = "");

    int row_count() const { return static_cast<int>(rows_.size()); }
    int attribute_count() const { return static_cast<int>(attributes_.size()); }

    const std::vector<AttributeMeta>& attributes() const { return attributes_; }
    const AttributeMeta& attribute(int index) const { return attributes_.at(index); }

    // Index of the named attribute, or -1 when absent.
    int attribute_index(const std::string& name) const;

    const std::string& cell(int row, int col) const { return rows_[row][col]; }
    bool is_missing(int row, int col) const { return rows_[row][col] == missing_token_; }

    // Shadow value for Numeric columns; NaN for missing cells and for
    // Categorical columns.
    double numeric_value(int row, int col) const { return shadows_[col].empty()
        ? std::numeric_limits<double>::quiet_NaN() : shadows_[col][row]; }

    const std::string& missing_token() const { return missing_token_; }
    const std::vector<csv::Row>& rows() const { return rows_; }

private:
    std::vector<AttributeMeta> attributes_;
    std::vector<csv::Row> rows_;
    // Column-major; empty vector for Categorical columns.
    std::vector<std::vector<double>> shadows_;
    std::string missing_token_;
};

enum class Label { Clean, Dirty };

struct GroundTruth {
    std::unordered_map<int, Label> labels; // row_id -> label

    bool covers_all(int row_count) const;
    int count(Label wanted) const;
};

// Loads a delimiter-separated table with a header row. `exclude_cols`
// names columns to drop entirely (they take no part in typing, constraints
// or similarity). Unknown names in `exclude_cols` raise SchemaError.
Dataset load_dataset(const std::string& path, const std::string& missing_token = "",
                     const std::vector<std::string>& exclude_cols = {});

// Writes the dataset back out as CSV (header + rows, RFC-4180 quoting).
void write_dataset(const Dataset& dataset, const std::string& path);

// Ground truth from a CSV file: either two columns `row_id,label` (keyed)
// or a single `label` column aligned by row order. Labels are matched
// case-insensitively against {clean, dirty}.
GroundTruth load_ground_truth(const std::string& path, const Dataset& dataset);

// Ground truth taken from one column of a raw table (used when the data
// file carries its own labeling column).
GroundTruth ground_truth_from_column(const std::vector<std::string>& column_cells);

// Reads a data file whose label column (if any) rides along with the data:
// the label column and any excluded columns are stripped from the dataset.
struct LoadedTable {
    Dataset dataset;
    std::optional<GroundTruth> truth;
};
LoadedTable load_table(const std::string& path, const std::string& missing_token,
                       const std::vector<std::string>& exclude_cols,
                       const std::optional<std::string>& label_col);

} // namespace subrepair
