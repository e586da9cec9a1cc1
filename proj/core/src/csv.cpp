#include "threadlens/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace threadlens {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";  // also folds -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char ch : text) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

CsvWriter::CsvWriter(std::initializer_list<std::string_view> header) : columns_(header.size()) {
  for (auto h : header) field(h);
  end_row();
}

CsvWriter CsvWriter::fragment(std::size_t columns) {
  CsvWriter w;
  w.columns_ = columns;
  return w;
}

CsvWriter& CsvWriter::append(const CsvWriter& other) {
  if (other.columns_ != columns_ || in_row_ != 0) throw std::logic_error("csv append mismatch");
  text_ += other.text_;
  return *this;
}

CsvWriter& CsvWriter::field(std::string_view text) {
  if (in_row_++ > 0) text_.push_back(',');
  text_ += csv_escape(text);
  return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(std::string_view(format_double(value))); }

CsvWriter& CsvWriter::field(std::int64_t value) { return field(std::string_view(std::to_string(value))); }

CsvWriter& CsvWriter::field(std::uint64_t value) { return field(std::string_view(std::to_string(value))); }

CsvWriter& CsvWriter::end_row() {
  if (in_row_ != columns_) {
    throw std::logic_error("csv row has " + std::to_string(in_row_) + " fields, header has " +
                           std::to_string(columns_));
  }
  text_.push_back('\n');
  in_row_ = 0;
  return *this;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool cell_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"': quoted = true; cell_started = true; break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        cell_started = true;
        break;
      case '\r': break;
      case '\n':
        row.push_back(std::move(cell));
        cell.clear();
        rows.push_back(std::move(row));
        row.clear();
        cell_started = false;
        break;
      default: cell.push_back(ch); cell_started = true; break;
    }
  }
  if (cell_started || !row.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace threadlens
