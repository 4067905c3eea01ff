#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace parking::cli {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);
std::string format_number(std::int64_t value);

/// CSV text with a leading "# schema: ..." comment, a fixed header, LF line
/// endings. Fields containing a comma, quote or newline are quoted.
class csv_table {
 public:
  csv_table(std::string schema, std::vector<std::string> header);

  void add_row(std::vector<std::string> fields);
  std::size_t rows() const noexcept { return rows_; }
  const std::string& text() const noexcept { return text_; }

 private:
  void append_line(const std::vector<std::string>& fields);

  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

}  // namespace parking::cli
