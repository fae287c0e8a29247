#include "qdrive/table.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "qdrive/errors.hpp"

namespace qdrive {

namespace {

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\n\r") != std::string_view::npos || s.empty();
}

void append_csv_text(std::string& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out += s;
    return;
  }
  out += '"';
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_json_number(std::string& out, double v, bool exact) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  out += format_number(v, exact);
}

Cell parse_field(std::string_view field, bool quoted) {
  if (!quoted && !field.empty()) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec == std::errc() && res.ptr == last) return v;
  }
  return std::string(field);
}

struct RawField {
  std::string text;
  bool quoted = false;
};

// Splits one CSV record starting at pos; advances pos past the line ending.
std::vector<RawField> parse_record(std::string_view text, std::size_t& pos) {
  std::vector<RawField> fields;
  for (;;) {
    std::string field;
    bool quoted = false;
    if (pos < text.size() && text[pos] == '"') {
      quoted = true;
      ++pos;
      for (;;) {
        if (pos >= text.size()) throw UsageError("unterminated quoted field");
        if (text[pos] == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field += '"';
            pos += 2;
            continue;
          }
          ++pos;
          break;
        }
        field += text[pos++];
      }
    } else {
      while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
             text[pos] != '\r') {
        field += text[pos++];
      }
    }
    fields.push_back({std::move(field), quoted});
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == '\r') ++pos;
    if (pos < text.size() && text[pos] == '\n') ++pos;
    return fields;
  }
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw DomainError("row width does not match table header");
  }
  rows_.push_back(std::move(row));
}

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw DomainError("no column named '" + std::string(name) + "'");
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw UsageError("unknown output format '" + std::string(name) + "'");
}

const char* to_string(TableFormat f) noexcept {
  return f == TableFormat::Csv ? "csv" : "json";
}

std::string format_number(double v, bool exact) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  // Counts and indices print as plain integers rather than 1e+05.
  if (v == std::trunc(v) && std::abs(v) < 1e15 &&
      !(v == 0.0 && std::signbit(v))) {
    const auto res =
        std::to_chars(buf, buf + sizeof buf, static_cast<long long>(v));
    return std::string(buf, res.ptr);
  }
  const auto res = exact ? std::to_chars(buf, buf + sizeof buf, v,
                                         std::chars_format::general, 17)
                         : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table, bool exact_floats) {
  std::string out;
  const auto& cols = table.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    append_csv_text(out, cols[i]);
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out += format_number(*d, exact_floats);
      } else {
        append_csv_text(out, std::get<std::string>(row[i]));
      }
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table, bool exact_floats) {
  std::string out = "{\"columns\":[";
  const auto& cols = table.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    append_json_string(out, cols[i]);
  }
  out += "],\"rows\":[";
  bool first_row = true;
  for (const auto& row : table.rows()) {
    if (!first_row) out += ',';
    first_row = false;
    out += "\n[";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        append_json_number(out, *d, exact_floats);
      } else {
        append_json_string(out, std::get<std::string>(row[i]));
      }
    }
    out += ']';
  }
  out += "],\n\"summary\":{";
  bool first_entry = true;
  for (const auto& e : table.summary()) {
    if (!first_entry) out += ',';
    first_entry = false;
    append_json_string(out, e.key);
    out += ':';
    append_json_number(out, e.value, exact_floats);
  }
  out += "},\"failed_cells\":";
  out += std::to_string(table.failed_cells());
  out += "}\n";
  return out;
}

std::string format_table(const Table& table, TableFormat format,
                         bool exact_floats) {
  return format == TableFormat::Csv ? to_csv(table, exact_floats)
                                    : to_json(table, exact_floats);
}

Table parse_csv(std::string_view text) {
  if (text.empty()) throw UsageError("empty CSV input");
  std::size_t pos = 0;
  std::vector<std::string> header;
  for (auto& field : parse_record(text, pos)) {
    header.push_back(std::move(field.text));
  }
  Table table(std::move(header));
  while (pos < text.size()) {
    const auto fields = parse_record(text, pos);
    if (fields.size() != table.columns().size()) {
      throw UsageError("CSV row width does not match header");
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_field(f.text, f.quoted));
    table.add_row(std::move(row));
  }
  return table;
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace qdrive
