#include "csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace parking::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: to_chars failed");
  return std::string(buf.data(), ptr);
}

std::string format_number(std::int64_t value) { return std::to_string(value); }

namespace {

std::string quote_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c == '\n' || c == '\r' ? ' ' : c;
  }
  out += '"';
  return out;
}

}  // namespace

csv_table::csv_table(std::string schema, std::vector<std::string> header)
    : columns_(header.size()) {
  text_ = "# schema: " + schema + "\n";
  append_line(header);
}

void csv_table::add_row(std::vector<std::string> fields) {
  if (fields.size() != columns_) throw std::logic_error("csv_table: column count mismatch");
  append_line(fields);
  ++rows_;
}

void csv_table::append_line(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += quote_field(fields[i]);
  }
  text_ += '\n';
}

}  // namespace parking::cli
