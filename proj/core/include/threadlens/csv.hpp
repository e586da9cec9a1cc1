#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace threadlens {

/// Shortest round-trip decimal form of a double ("0.5", "1e-07").
std::string format_double(double value);

/// In-memory CSV document: header row first, RFC 4180 quoting, "\n" line ends.
class CsvWriter {
 public:
  CsvWriter() = default;
  explicit CsvWriter(std::initializer_list<std::string_view> header);

  /// Header-less writer for partial results that are appended to a full
  /// document later.
  static CsvWriter fragment(std::size_t columns);
  CsvWriter& append(const CsvWriter& other);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double value);
  CsvWriter& field(std::int64_t value);
  CsvWriter& field(std::uint64_t value);
  CsvWriter& field(int value) { return field(static_cast<std::int64_t>(value)); }
  CsvWriter& field(bool value) { return field(std::string_view(value ? "true" : "false")); }
  CsvWriter& field(const std::string& text) { return field(std::string_view(text)); }
  CsvWriter& field(const char* text) { return field(std::string_view(text)); }
  template <class T>
  CsvWriter& field(const std::optional<T>& value) {
    return value ? field(*value) : field(std::string_view());
  }
  CsvWriter& end_row();

  std::size_t columns() const noexcept { return columns_; }
  const std::string& str() const noexcept { return text_; }

 private:
  std::string text_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

/// Quotes a field if it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view text);

/// Splits CSV text into rows of fields, undoing csv_escape. Used by tests and
/// tools that read the toolkit's own outputs.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace threadlens
