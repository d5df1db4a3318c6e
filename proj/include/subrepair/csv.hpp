#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subrepair::csv {

// RFC-4180 style CSV: comma separated, fields optionally wrapped in double
// quotes, embedded quotes doubled, quoted fields may contain commas and
// newlines. CRLF and LF row terminators are both accepted.

using Row = std::vector<std::string>;

// Parses an entire stream. Does not enforce rectangularity; callers decide.
std::vector<Row> read(std::istream& in);

// Reads a file, throwing IoError when it cannot be opened.
std::vector<Row> read_file(const std::string& path);

std::string escape_field(const std::string& field);
void write(std::ostream& out, const std::vector<Row>& rows);
void write_file(const std::string& path, const std::vector<Row>& rows);

} // namespace subrepair::csv
