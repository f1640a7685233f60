#include "rideflow/ride/app.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rideflow::ride {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Min: return "min";
    case Stage::Data: return "data";
    case Stage::Ml: return "ml";
  }
  return "?";
}

Stage parse_stage(std::string_view name) {
  if (name == "min") return Stage::Min;
  if (name == "data") return Stage::Data;
  if (name == "ml") return Stage::Ml;
  throw std::invalid_argument("unknown stage '" + std::string(name) + "' (expected min, data or ml)");
}

RideGraph build_app(Stage stage, std::optional<model::WaitModel> wait_model) {
  if (stage == Stage::Ml && !wait_model) {
    throw std::invalid_argument("stage ml requires a wait model");
  }
  if (stage != Stage::Ml && wait_model) {
    throw std::invalid_argument("a wait model is only used by stage ml");
  }

  RideGraph graph;
  auto stream = [&](std::string_view name, fbp::StreamCategory category, std::string_view kind) {
    graph.add_stream(std::string(name), category, std::string(kind));
  };
  auto node = [&](std::string_view name, std::vector<std::string_view> inputs,
                  std::vector<std::string_view> outputs, fbp::Transform<Record> transform) {
    graph.add_node(std::string(name), {inputs.begin(), inputs.end()},
                   {outputs.begin(), outputs.end()}, std::move(transform));
  };

  using fbp::StreamCategory;
  stream(names::ride_requests, StreamCategory::Input, record_kind_v<RideRequest>);
  stream(names::driver_statuses, StreamCategory::Input, record_kind_v<DriverStatus>);
  stream(names::driver_locations, StreamCategory::Input, record_kind_v<DriverLocation>);
  stream(names::ride_events, StreamCategory::Input, record_kind_v<RideEvent>);

  stream(names::driver_information, StreamCategory::Internal, record_kind_v<DriverInformation>);
  stream(names::ride_allocations, StreamCategory::Internal, record_kind_v<RideAllocation>);

  stream(names::ride_allocation_output, StreamCategory::Output, record_kind_v<RideAllocation>);
  stream(names::ride_information, StreamCategory::Output, record_kind_v<RideInformation>);
  stream(names::ride_wait_info, StreamCategory::Output, record_kind_v<RideWaitInfo>);

  node(names::collate_driver_information, {names::driver_statuses, names::driver_locations},
       {names::driver_information}, collate_driver_information);
  node(names::allocate_ride, {names::ride_requests, names::driver_information},
       {names::ride_allocations, names::ride_allocation_output}, allocate_rides);
  node(names::update_ride_information,
       {names::ride_requests, names::ride_allocations, names::ride_events},
       {names::ride_information}, update_ride_information);
  node(names::compute_wait_time, {names::ride_allocations, names::ride_events},
       {names::ride_wait_info}, compute_wait_time);

  if (stage == Stage::Ml) {
    stream(names::estimated_wait_time, StreamCategory::Output, record_kind_v<EstimatedWaitTime>);
    node(names::estimate_ride_wait_time, {names::ride_allocations, names::driver_information},
         {names::estimated_wait_time},
         [model = *wait_model](const NodeInput& input) { return estimate_wait_time(input, model); });
  }

  auto violations = graph.validate();
  if (!violations.empty()) throw fbp::ValidationError(std::move(violations));
  return graph;
}

} // namespace rideflow::ride
