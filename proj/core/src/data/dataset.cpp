#include "rideflow/data/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rideflow::data {

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail(std::size_t line_number, const std::string& what) {
  throw CsvError("csv parse error at line " + std::to_string(line_number) + ": " + what);
}

std::uint64_t parse_id(std::string_view field, std::size_t line_number, const char* column) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(line_number, std::string("non-numeric ") + column + " '" + std::string(field) + "'");
  }
  return value;
}

double parse_double(std::string_view field, std::size_t line_number, const char* column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(line_number, std::string("non-numeric ") + column + " '" + std::string(field) + "'");
  }
  return value;
}

} // namespace

std::string to_csv(std::span<const DatasetRow> rows) {
  std::string out{kDatasetCsvHeader};
  out += '\n';
  for (const DatasetRow& row : rows) {
    out += std::to_string(row.ride_id);
    out += ',';
    out += std::to_string(row.driver_id);
    out += ',';
    out += format_double(row.driver_x);
    out += ',';
    out += format_double(row.driver_y);
    out += ',';
    out += format_double(row.user_x);
    out += ',';
    out += format_double(row.user_y);
    out += ',';
    out += format_double(row.distance);
    out += ',';
    out += std::to_string(row.actual_wait);
    out += '\n';
  }
  return out;
}

std::vector<DatasetRow> parse_csv(std::string_view text) {
  std::vector<DatasetRow> rows;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    ++line_number;

    if (line_number == 1) {
      if (line != kDatasetCsvHeader) fail(1, "unexpected header '" + std::string(line) + "'");
      continue;
    }
    if (line.empty()) continue;

    const auto fields = split(line);
    if (fields.size() != 8) {
      fail(line_number,
           "expected 8 columns, found " + std::to_string(fields.size()));
    }
    DatasetRow row;
    row.ride_id = parse_id(fields[0], line_number, "ride_id");
    row.driver_id = parse_id(fields[1], line_number, "driver_id");
    row.driver_x = parse_double(fields[2], line_number, "driver_x");
    row.driver_y = parse_double(fields[3], line_number, "driver_y");
    row.user_x = parse_double(fields[4], line_number, "user_x");
    row.user_y = parse_double(fields[5], line_number, "user_y");
    row.distance = parse_double(fields[6], line_number, "distance");
    row.actual_wait = parse_id(fields[7], line_number, "actual_wait");
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::span<const DatasetRow> rows, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CsvError("cannot open '" + path.string() + "' for writing");
  file << to_csv(rows);
  if (!file.flush()) throw CsvError("failed writing '" + path.string() + "'");
}

std::vector<DatasetRow> read_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw CsvError("cannot open '" + path.string() + "' for reading");
  std::ostringstream contents;
  contents << file.rdbuf();
  return parse_csv(contents.str());
}

} // namespace rideflow::data
