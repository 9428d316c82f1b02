#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace tide::csv {

// RFC-4180 style reader: comma separated, optional double-quote quoting,
// "" escapes a quote inside a quoted field. Records may span lines when
// quoted. Calls `row(fields, line_number)` per record; line_number is the
// 1-based line the record started on.
void read(std::istream& in,
          const std::function<void(const std::vector<std::string>&,
                                   std::size_t)>& row);

// Splits a single line (no embedded newlines) into fields.
std::vector<std::string> split_line(const std::string& line);

std::string quote(const std::string& field);

}  // namespace tide::csv
