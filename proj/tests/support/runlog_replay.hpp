#pragma once

#include "rideflow/data/dataset.hpp"
#include "rideflow/ride/records.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace testsupport {

// Offline oracle over a serialized run log: joins allocations with Started
// events and recomputes distance and wait from scratch. Rows come out in
// allocation order, rides without a pickup are dropped.
std::vector<rideflow::data::DatasetRow> replay_dataset(
    std::span<const rideflow::ride::Stamped> records);

// Post-scan of a run log against the ride state machine and the conservation
// rules. Transitions are re-derived independently of the app's fold.
struct ScanReport {
  std::size_t rides = 0;
  std::size_t illegal_transitions = 0;  // log lines that would take an undeclared edge
  std::size_t double_booked_ticks = 0;  // ticks where a driver sat on two active rides
  std::size_t started_with_allocation = 0;
  std::size_t wait_records = 0;
  std::size_t allocations = 0;
  std::size_t duplicate_allocations = 0; // same ride allocated twice
};

ScanReport scan_runlog(std::span<const rideflow::ride::Stamped> records);

} // namespace testsupport
