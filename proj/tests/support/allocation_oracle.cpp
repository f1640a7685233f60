#include "support/allocation_oracle.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace testsupport {

using namespace rideflow::ride;

std::vector<RideAllocation> AllocationOracle::on_tick(Tick now,
                                                      std::span<const RideRequest> requests,
                                                      std::span<const DriverStatus> statuses,
                                                      std::span<const DriverLocation> locations) {
  // Mirror the driver-information join: a driver becomes (re)visible whenever
  // a status or location record arrives and both halves are known.
  std::set<Id> touched;
  for (const auto& status : statuses) {
    drivers_[status.driver_id].status = status.available;
    touched.insert(status.driver_id);
  }
  for (const auto& location : locations) {
    drivers_[location.driver_id].location = location.location;
    touched.insert(location.driver_id);
  }
  for (Id id : touched) {
    Driver& driver = drivers_[id];
    if (driver.status && driver.location) driver.info_tick = now;
  }

  for (const auto& request : requests) {
    if (seen_rides_.emplace(request.ride_id, true).second) {
      pending_.emplace(std::make_pair(request.request_tick, request.ride_id), request);
    }
  }

  std::vector<RideAllocation> allocations;
  for (auto it = pending_.begin(); it != pending_.end();) {
    const RideRequest& request = it->second;
    Id best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    bool found = false;
    for (const auto& [id, driver] : drivers_) {
      if (!driver.status || !driver.location) continue;
      if (!*driver.status) continue;
      if (driver.allocated_tick && *driver.allocated_tick >= driver.info_tick) continue;
      const double dx = driver.location->x - request.from_location.x;
      const double dy = driver.location->y - request.from_location.y;
      const double d = dx * dx + dy * dy;
      if (!found || d < best_distance || (d == best_distance && id < best)) {
        best = id;
        best_distance = d;
        found = true;
      }
    }
    if (!found) break;

    Driver& winner = drivers_[best];
    allocations.push_back(RideAllocation{request.ride_id, best, request.user_id,
                                         request.from_location, *winner.location, now});
    winner.allocated_tick = now;
    it = pending_.erase(it);
  }
  return allocations;
}

} // namespace testsupport
