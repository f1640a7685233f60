#pragma once

#include "rideflow/ride/records.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace testsupport {

// Standalone brute-force implementation of the dispatch rule, kept
// deliberately independent of the engine path it checks: stateful bookkeeping
// instead of history replay. Feed it the same per-tick inputs the graph gets
// and compare allocations.
//
// Rule: pending requests FIFO by (request_tick, ride_id); each is matched to
// the nearest available driver by Euclidean distance, smaller driver id on
// ties; an allocated driver stays busy until driver information newer than
// the allocation marks it available again.
class AllocationOracle {
public:
  std::vector<rideflow::ride::RideAllocation> on_tick(
      rideflow::ride::Tick now, std::span<const rideflow::ride::RideRequest> requests,
      std::span<const rideflow::ride::DriverStatus> statuses,
      std::span<const rideflow::ride::DriverLocation> locations);

private:
  struct Driver {
    std::optional<bool> status;
    std::optional<rideflow::ride::Location> location;
    rideflow::ride::Tick info_tick = 0;
    std::optional<rideflow::ride::Tick> allocated_tick;
  };

  std::map<rideflow::ride::Id, Driver> drivers_;
  std::map<std::pair<rideflow::ride::Tick, rideflow::ride::Id>, rideflow::ride::RideRequest>
      pending_;
  std::map<rideflow::ride::Id, bool> seen_rides_;
};

} // namespace testsupport
