#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rideflow::data {

/// One training example: pickup geometry at allocation time plus the wait the
/// passenger actually experienced.
struct DatasetRow {
  std::uint64_t ride_id = 0;
  std::uint64_t driver_id = 0;
  double driver_x = 0.0;
  double driver_y = 0.0;
  double user_x = 0.0;
  double user_y = 0.0;
  double distance = 0.0;
  std::uint64_t actual_wait = 0;

  friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

inline constexpr std::string_view kDatasetCsvHeader =
    "ride_id,driver_id,driver_x,driver_y,user_x,user_y,distance,actual_wait";

class CsvError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// CSV text with the fixed header; floats printed with 9 significant digits.
std::string to_csv(std::span<const DatasetRow> rows);
std::vector<DatasetRow> parse_csv(std::string_view text);

void write_csv(std::span<const DatasetRow> rows, const std::filesystem::path& path);
std::vector<DatasetRow> read_csv(const std::filesystem::path& path);

} // namespace rideflow::data
