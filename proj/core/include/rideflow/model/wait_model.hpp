#pragma once

#include "rideflow/data/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string_view>

namespace rideflow::model {

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The single feature this estimator understands: pickup distance.
inline constexpr std::string_view kFeature = "distance";

/// Simple linear estimator of wait time from pickup distance, fitted offline
/// by ordinary least squares. Immutable after fit/load.
struct WaitModel {
  double intercept = 0.0; // ticks
  double slope = 0.0;     // ticks per distance unit
  std::uint64_t n_samples = 0;

  friend bool operator==(const WaitModel&, const WaitModel&) = default;
};

/// Closed-form least squares of actual_wait on distance.
/// Needs at least two rows with non-identical distances.
WaitModel fit(std::span<const data::DatasetRow> rows);

/// max(0, intercept + slope * distance); rejects non-finite or negative input.
double predict(const WaitModel& model, double distance);

/// Coefficient of determination of `model` on `rows` (1 - SS_res/SS_tot).
double r_squared(const WaitModel& model, std::span<const data::DatasetRow> rows);

void save(const WaitModel& model, const std::filesystem::path& path);
WaitModel load(const std::filesystem::path& path);

std::string to_json(const WaitModel& model);
WaitModel from_json(std::string_view text);

} // namespace rideflow::model
