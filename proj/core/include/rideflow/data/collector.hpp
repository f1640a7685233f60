#pragma once

#include "rideflow/data/dataset.hpp"
#include "rideflow/ride/records.hpp"

#include <map>
#include <memory>
#include <vector>

namespace rideflow::data {

class InstallError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Joins tapped allocation and wait records on ride id into training rows.
/// Rows are complete once both halves were observed; callbacks fire on the
/// graph's executing thread, reads belong after the run.
class Collector {
public:
  /// Completed rows in allocation order. Rides without an observed wait
  /// (e.g. cancelled before pickup) are excluded.
  std::vector<DatasetRow> rows() const;

  std::size_t allocation_count() const { return state_->allocations.size(); }
  std::size_t wait_count() const { return state_->waits.size(); }

private:
  friend Collector install_collection(ride::RideGraph& graph);

  struct State {
    std::vector<ride::RideAllocation> allocations; // in observation order
    std::map<ride::Id, ride::Tick> waits;          // ride id -> actual wait
  };

  Collector() : state_(std::make_shared<State>()) {}

  std::shared_ptr<State> state_;
};

/// Attaches taps to the allocation and wait streams found by graph
/// introspection; no node code is touched and the graph program is unchanged.
/// Throws InstallError naming every missing stream.
Collector install_collection(ride::RideGraph& graph);

} // namespace rideflow::data
