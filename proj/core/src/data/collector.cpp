#include "rideflow/data/collector.hpp"

#include "rideflow/ride/nodes.hpp"

#include <string>

namespace rideflow::data {

std::vector<DatasetRow> Collector::rows() const {
  std::vector<DatasetRow> rows;
  for (const auto& allocation : state_->allocations) {
    const auto wait = state_->waits.find(allocation.ride_id);
    if (wait == state_->waits.end()) continue;
    DatasetRow row;
    row.ride_id = allocation.ride_id;
    row.driver_id = allocation.driver_id;
    row.driver_x = allocation.driver_location_at_allocation.x;
    row.driver_y = allocation.driver_location_at_allocation.y;
    row.user_x = allocation.pickup_location.x;
    row.user_y = allocation.pickup_location.y;
    row.distance =
        ride::distance(allocation.driver_location_at_allocation, allocation.pickup_location);
    row.actual_wait = wait->second;
    rows.push_back(row);
  }
  return rows;
}

Collector install_collection(ride::RideGraph& graph) {
  std::string missing;
  for (const auto name : {ride::names::ride_allocations, ride::names::ride_wait_info}) {
    if (graph.find_stream(name) == nullptr) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty()) {
    throw InstallError("cannot install collection, missing stream(s): " + missing);
  }

  Collector collector;
  auto state = collector.state_;
  graph.attach_tap(ride::names::ride_allocations, [state](const ride::Stamped& record) {
    state->allocations.push_back(std::get<ride::RideAllocation>(record.value));
  });
  graph.attach_tap(ride::names::ride_wait_info, [state](const ride::Stamped& record) {
    const auto& wait = std::get<ride::RideWaitInfo>(record.value);
    state->waits.emplace(wait.ride_id, wait.actual_wait);
  });
  return collector;
}

} // namespace rideflow::data
