#include "subrepair/csv.hpp"

#include "subrepair/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace subrepair::csv {

std::vector<Row> read(std::istream& in) {
    std::vector<Row> rows;
    Row current;
    std::string field;
    bool in_quotes = false;
    bool row_has_data = false; // any char or separator seen on this row

    auto end_field = [&] {
        current.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(current));
        current.clear();
        row_has_data = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_has_data = true;
            break;
        case ',':
            end_field();
            row_has_data = true;
            break;
        case '\r':
            if (in.peek() == '\n') in.get(c);
            end_row();
            break;
        case '\n':
            end_row();
            break;
        default:
            field.push_back(c);
            row_has_data = true;
        }
    }
    if (in_quotes) throw RowShapeError("unterminated quoted field at end of input");
    if (row_has_data || !field.empty() || !current.empty()) end_row();
    return rows;
}

std::vector<Row> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    return read(in);
}

std::string escape_field(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write(std::ostream& out, const std::vector<Row>& rows) {
    for (const Row& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.put(',');
            out << escape_field(row[i]);
        }
        out.put('\n');
    }
}

void write_file(const std::string& path, const std::vector<Row>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    write(out, rows);
}

} // namespace subrepair::csv
