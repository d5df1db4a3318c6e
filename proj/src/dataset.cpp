#include "subrepair/dataset.hpp"

#include "subrepair/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

namespace subrepair {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Label parse_label(const std::string& raw) {
    std::string norm = lower(trim(raw));
    if (norm == "clean") return Label::Clean;
    if (norm == "dirty") return Label::Dirty;
    throw LabelError("label must be 'clean' or 'dirty', got: '" + raw + "'");
}

} // namespace

std::optional<double> parse_numeric(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

Dataset Dataset::from_rows(std::vector<std::string> header,
                           std::vector<csv::Row> data_rows,
                           std::string missing_token) {
    Dataset d;
    d.missing_token_ = std::move(missing_token);

    std::unordered_set<std::string> seen;
    for (const std::string& name : header) {
        if (!seen.insert(name).second)
            throw SchemaError("duplicate header name: '" + name + "'");
    }

    const std::size_t width = header.size();
    for (std::size_t r = 0; r < data_rows.size(); ++r) {
        if (data_rows[r].size() != width)
            throw RowShapeError("row " + std::to_string(r) + " has " +
                                std::to_string(data_rows[r].size()) + " cells, expected " +
                                std::to_string(width));
    }
    d.rows_ = std::move(data_rows);

    d.attributes_.resize(width);
    d.shadows_.resize(width);
    for (std::size_t c = 0; c < width; ++c) {
        AttributeMeta& meta = d.attributes_[c];
        meta.name = header[c];
        meta.index = static_cast<int>(c);
        meta.missing_token = d.missing_token_;

        bool numeric = true;
        for (const csv::Row& row : d.rows_) {
            if (row[c] == d.missing_token_) continue;
            if (!parse_numeric(row[c])) {
                numeric = false;
                break;
            }
        }
        meta.kind = numeric ? Kind::Numeric : Kind::Categorical;
        if (numeric) {
            auto& shadow = d.shadows_[c];
            shadow.resize(d.rows_.size(), std::numeric_limits<double>::quiet_NaN());
            for (std::size_t r = 0; r < d.rows_.size(); ++r) {
                if (d.rows_[r][c] == d.missing_token_) continue;
                shadow[r] = *parse_numeric(d.rows_[r][c]);
            }
        }
    }
    return d;
}

int Dataset::attribute_index(const std::string& name) const {
    for (const AttributeMeta& meta : attributes_)
        if (meta.name == name) return meta.index;
    return -1;
}

bool GroundTruth::covers_all(int row_count) const {
    for (int r = 0; r < row_count; ++r)
        if (!labels.count(r)) return false;
    return true;
}

int GroundTruth::count(Label wanted) const {
    int n = 0;
    for (const auto& [row, label] : labels)
        if (label == wanted) ++n;
    return n;
}

namespace {

Dataset build_excluding(std::vector<csv::Row> raw, const std::string& missing_token,
                        const std::vector<std::string>& drop) {
    if (raw.empty()) throw SchemaError("file has no header row");
    std::vector<std::string> header(raw.front().begin(), raw.front().end());
    raw.erase(raw.begin());

    std::set<int> drop_idx;
    for (const std::string& name : drop) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw SchemaError("excluded column not in header: '" + name + "'");
        drop_idx.insert(static_cast<int>(it - header.begin()));
    }
    if (drop_idx.empty()) return Dataset::from_rows(std::move(header), std::move(raw), missing_token);

    std::vector<std::string> kept_header;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (!drop_idx.count(static_cast<int>(c))) kept_header.push_back(header[c]);
    std::vector<csv::Row> kept_rows;
    kept_rows.reserve(raw.size());
    for (csv::Row& row : raw) {
        if (row.size() != header.size())
            throw RowShapeError("row has " + std::to_string(row.size()) +
                                " cells, expected " + std::to_string(header.size()));
        csv::Row kept;
        kept.reserve(kept_header.size());
        for (std::size_t c = 0; c < row.size(); ++c)
            if (!drop_idx.count(static_cast<int>(c))) kept.push_back(std::move(row[c]));
        kept_rows.push_back(std::move(kept));
    }
    return Dataset::from_rows(std::move(kept_header), std::move(kept_rows), missing_token);
}

} // namespace

Dataset load_dataset(const std::string& path, const std::string& missing_token,
                     const std::vector<std::string>& exclude_cols) {
    return build_excluding(csv::read_file(path), missing_token, exclude_cols);
}

void write_dataset(const Dataset& dataset, const std::string& path) {
    std::vector<csv::Row> rows;
    rows.reserve(dataset.row_count() + 1);
    csv::Row header;
    for (const AttributeMeta& meta : dataset.attributes()) header.push_back(meta.name);
    rows.push_back(std::move(header));
    for (const csv::Row& row : dataset.rows()) rows.push_back(row);
    csv::write_file(path, rows);
}

GroundTruth load_ground_truth(const std::string& path, const Dataset& dataset) {
    std::vector<csv::Row> raw = csv::read_file(path);
    GroundTruth truth;
    if (raw.empty()) return truth; // empty file: empty truth, evaluation refuses later

    const std::size_t width = raw.front().size();
    if (width != 1 && width != 2)
        throw SchemaError("ground truth file must have 1 or 2 columns, got " +
                          std::to_string(width));
    for (std::size_t r = 1; r < raw.size(); ++r) {
        const csv::Row& row = raw[r];
        if (row.size() != width)
            throw RowShapeError("ground truth row " + std::to_string(r - 1) +
                                " has " + std::to_string(row.size()) + " cells");
        int row_id;
        if (width == 2) {
            int parsed = 0;
            const std::string id_cell = trim(row[0]);
            auto [ptr, ec] = std::from_chars(id_cell.data(), id_cell.data() + id_cell.size(), parsed);
            if (ec != std::errc{} || ptr != id_cell.data() + id_cell.size())
                throw KeyError("ground truth row id is not an integer: '" + row[0] + "'");
            row_id = parsed;
        } else {
            row_id = static_cast<int>(r - 1); // aligned by file order
        }
        if (row_id < 0 || row_id >= dataset.row_count())
            throw KeyError("ground truth references row " + std::to_string(row_id) +
                           " outside dataset of " + std::to_string(dataset.row_count()) + " rows");
        truth.labels[row_id] = parse_label(row.back());
    }
    return truth;
}

GroundTruth ground_truth_from_column(const std::vector<std::string>& column_cells) {
    GroundTruth truth;
    for (std::size_t r = 0; r < column_cells.size(); ++r)
        truth.labels[static_cast<int>(r)] = parse_label(column_cells[r]);
    return truth;
}

LoadedTable load_table(const std::string& path, const std::string& missing_token,
                       const std::vector<std::string>& exclude_cols,
                       const std::optional<std::string>& label_col) {
    std::vector<csv::Row> raw = csv::read_file(path);
    if (raw.empty()) throw SchemaError("file has no header row: " + path);

    LoadedTable out;
    std::vector<std::string> drop = exclude_cols;
    if (label_col) {
        const auto& header = raw.front();
        auto it = std::find(header.begin(), header.end(), *label_col);
        if (it == header.end())
            throw SchemaError("label column not in header: '" + *label_col + "'");
        const int col = static_cast<int>(it - header.begin());
        std::vector<std::string> cells;
        cells.reserve(raw.size() - 1);
        for (std::size_t r = 1; r < raw.size(); ++r) {
            if (static_cast<std::size_t>(col) >= raw[r].size())
                throw RowShapeError("row " + std::to_string(r - 1) + " too short for label column");
            cells.push_back(raw[r][col]);
        }
        out.truth = ground_truth_from_column(cells);
        if (std::find(drop.begin(), drop.end(), *label_col) == drop.end())
            drop.push_back(*label_col);
    }
    out.dataset = build_excluding(std::move(raw), missing_token, drop);
    return out;
}

} // namespace subrepair
