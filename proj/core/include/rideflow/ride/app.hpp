#pragma once

#include "rideflow/model/wait_model.hpp"
#include "rideflow/ride/nodes.hpp"
#include "rideflow/ride/records.hpp"

#include <optional>
#include <string_view>

namespace rideflow::ride {

/// Deployment stages: basic functionality, plus dataset collection, plus
/// estimated wait time output.
enum class Stage { Min, Data, Ml };

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view name); // "min" | "data" | "ml"

/// Assembles the staged ride allocation graph. Stage Data builds a graph
/// identical to Stage Min; dataset collection attaches externally through
/// stream taps. Stage Ml additionally wires EstimateRideWaitTime and its
/// output stream, and is the only stage that takes a model.
RideGraph build_app(Stage stage, std::optional<model::WaitModel> wait_model = std::nullopt);

} // namespace rideflow::ride
