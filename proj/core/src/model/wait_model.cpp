#include "rideflow/model/wait_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rideflow::model {

WaitModel fit(std::span<const data::DatasetRow> rows) {
  if (rows.size() < 2) {
    throw ModelError("insufficient data: need at least 2 rows, got " +
                     std::to_string(rows.size()));
  }
  const auto [min_it, max_it] = std::minmax_element(
      rows.begin(), rows.end(),
      [](const data::DatasetRow& a, const data::DatasetRow& b) { return a.distance < b.distance; });
  if (min_it->distance == max_it->distance) {
    throw ModelError("degenerate data: all distances are identical");
  }

  double mean_d = 0.0;
  double mean_w = 0.0;
  for (const auto& row : rows) {
    mean_d += row.distance;
    mean_w += static_cast<double>(row.actual_wait);
  }
  mean_d /= static_cast<double>(rows.size());
  mean_w /= static_cast<double>(rows.size());

  double cov = 0.0;
  double var = 0.0;
  for (const auto& row : rows) {
    const double dd = row.distance - mean_d;
    cov += dd * (static_cast<double>(row.actual_wait) - mean_w);
    var += dd * dd;
  }

  WaitModel model;
  model.slope = cov / var;
  model.intercept = mean_w - model.slope * mean_d;
  model.n_samples = rows.size();
  if (!std::isfinite(model.slope) || !std::isfinite(model.intercept)) {
    throw ModelError("fit produced non-finite coefficients");
  }
  return model;
}

double predict(const WaitModel& model, double distance) {
  if (!std::isfinite(distance) || distance < 0.0) {
    throw ModelError("distance must be finite and non-negative");
  }
  return std::max(0.0, model.intercept + model.slope * distance);
}

double r_squared(const WaitModel& model, std::span<const data::DatasetRow> rows) {
  if (rows.size() < 2) {
    throw ModelError("insufficient data: need at least 2 rows, got " +
                     std::to_string(rows.size()));
  }
  double mean_w = 0.0;
  for (const auto& row : rows) mean_w += static_cast<double>(row.actual_wait);
  mean_w /= static_cast<double>(rows.size());

  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& row : rows) {
    const double w = static_cast<double>(row.actual_wait);
    const double e = w - predict(model, row.distance);
    ss_res += e * e;
    ss_tot += (w - mean_w) * (w - mean_w);
  }
  if (ss_tot == 0.0) throw ModelError("zero label variance");
  return 1.0 - ss_res / ss_tot;
}

std::string to_json(const WaitModel& model) {
  nlohmann::json j;
  j["intercept"] = model.intercept;
  j["slope"] = model.slope;
  j["feature"] = kFeature;
  j["n_samples"] = model.n_samples;
  return j.dump();
}

WaitModel from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  for (const char* field : {"intercept", "slope", "feature", "n_samples"}) {
    if (!j.contains(field)) {
      throw ModelError(std::string("model file missing field '") + field + "'");
    }
  }
  if (!j["feature"].is_string() || j["feature"].get<std::string>() != kFeature) {
    throw ModelError("unknown feature tag '" + j["feature"].dump() + "', expected \"" +
                     std::string(kFeature) + "\"");
  }
  WaitModel model;
  try {
    model.intercept = j["intercept"].get<double>();
    model.slope = j["slope"].get<double>();
    model.n_samples = j["n_samples"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model field: ") + e.what());
  }
  if (!std::isfinite(model.intercept) || !std::isfinite(model.slope)) {
    throw ModelError("model coefficients must be finite");
  }
  if (model.n_samples < 2) {
    throw ModelError("n_samples must be at least 2");
  }
  return model;
}

void save(const WaitModel& model, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ModelError("cannot open '" + path.string() + "' for writing");
  file << to_json(model) << '\n';
  if (!file.flush()) throw ModelError("failed writing '" + path.string() + "'");
}

WaitModel load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ModelError("cannot open '" + path.string() + "' for reading");
  std::ostringstream contents;
  contents << file.rdbuf();
  return from_json(contents.str());
}

} // namespace rideflow::model
