#include "tide/common/csv.hpp"

#include <istream>

#include "tide/common/error.hpp"

namespace tide::csv {

void read(std::istream& in,
          const std::function<void(const std::vector<std::string>&,
                                   std::size_t)>& row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  std::size_t record_line = 1;
  int c;
  while ((c = in.get()) != EOF) {
    char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          fields.push_back(std::move(field));
          row(fields, record_line);
        }
        fields.clear();
        field.clear();
        any = false;
        ++line;
        record_line = line;
        break;
      default:
        field.push_back(ch);
        any = true;
        break;
    }
  }
  if (quoted)
    throw FormatError("csv: unterminated quoted field starting near line " +
                      std::to_string(record_line));
  if (any || !field.empty()) {
    fields.push_back(std::move(field));
    row(fields, record_line);
  }
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string quote(const std::string& field) {
  bool needs = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs = true;
      break;
    }
  }
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace tide::csv
