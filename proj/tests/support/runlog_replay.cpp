#include "support/runlog_replay.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace testsupport {

using namespace rideflow::ride;

std::vector<rideflow::data::DatasetRow> replay_dataset(std::span<const Stamped> records) {
  std::vector<RideAllocation> allocations;
  std::map<Id, Tick> started;
  for (const auto& record : records) {
    if (const auto* allocation = std::get_if<RideAllocation>(&record.value)) {
      allocations.push_back(*allocation);
    } else if (const auto* event = std::get_if<RideEvent>(&record.value)) {
      if (event->kind == RideEventKind::Started) started.emplace(event->ride_id, event->tick);
    }
  }

  std::vector<rideflow::data::DatasetRow> rows;
  for (const auto& allocation : allocations) {
    const auto it = started.find(allocation.ride_id);
    if (it == started.end()) continue;
    rideflow::data::DatasetRow row;
    row.ride_id = allocation.ride_id;
    row.driver_id = allocation.driver_id;
    row.driver_x = allocation.driver_location_at_allocation.x;
    row.driver_y = allocation.driver_location_at_allocation.y;
    row.user_x = allocation.pickup_location.x;
    row.user_y = allocation.pickup_location.y;
    row.distance = std::hypot(row.driver_x - row.user_x, row.driver_y - row.user_y);
    row.actual_wait = it->second - allocation.allocation_tick;
    rows.push_back(row);
  }
  return rows;
}

ScanReport scan_runlog(std::span<const Stamped> records) {
  struct RideScan {
    RideState state = RideState::Requested;
    std::optional<Id> driver;
    bool allocated_once = false;
  };
  std::map<Id, RideScan> rides;
  std::map<Id, Id> active_driver_ride; // driver id -> ride it is currently serving

  ScanReport report;
  for (const auto& record : records) {
    if (std::get_if<RideRequest>(&record.value)) {
      const auto& request = std::get<RideRequest>(record.value);
      rides.try_emplace(request.ride_id);
      ++report.rides;
    } else if (const auto* allocation = std::get_if<RideAllocation>(&record.value)) {
      ++report.allocations;
      auto it = rides.find(allocation->ride_id);
      if (it == rides.end()) {
        ++report.illegal_transitions; // allocation for a ride never requested
        continue;
      }
      if (it->second.allocated_once) ++report.duplicate_allocations;
      it->second.allocated_once = true;
      if (it->second.state != RideState::Requested) continue; // ignored by the app
      it->second.state = RideState::Allocated;
      it->second.driver = allocation->driver_id;
      const auto [slot, inserted] =
          active_driver_ride.emplace(allocation->driver_id, allocation->ride_id);
      if (!inserted) ++report.double_booked_ticks;
    } else if (const auto* event = std::get_if<RideEvent>(&record.value)) {
      auto it = rides.find(event->ride_id);
      if (it == rides.end()) continue; // unknown ride: ignored by the app
      RideScan& scan = it->second;
      switch (event->kind) {
        case RideEventKind::Started:
          if (scan.allocated_once) ++report.started_with_allocation; // mirrors the wait rule
          if (scan.state != RideState::Allocated) {
            ++report.illegal_transitions;
          } else {
            scan.state = RideState::InProgress;
          }
          break;
        case RideEventKind::Finished:
          if (scan.state != RideState::InProgress) {
            ++report.illegal_transitions;
          } else {
            scan.state = RideState::Completed;
            if (scan.driver) active_driver_ride.erase(*scan.driver);
          }
          break;
        case RideEventKind::Cancelled:
          if (scan.state != RideState::Requested && scan.state != RideState::Allocated) {
            ++report.illegal_transitions;
          } else {
            if (scan.state == RideState::Allocated && scan.driver) {
              active_driver_ride.erase(*scan.driver);
            }
            scan.state = RideState::Cancelled;
          }
          break;
        case RideEventKind::LocationUpdate:
          break; // no state change
      }
    } else if (std::get_if<RideWaitInfo>(&record.value)) {
      ++report.wait_records;
    }
  }
  return report;
}

} // namespace testsupport
