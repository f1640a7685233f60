#pragma once

#include "rideflow/ride/records.hpp"
#include "rideflow/sim/config.hpp"

#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace rideflow::sim {

using ride::Id;
using ride::Tick;

/// Everything the world emitted during one tick.
struct SimOutput {
  Tick tick = 0;
  std::vector<ride::RideRequest> new_requests;
  std::vector<ride::DriverStatus> status_changes;
  std::vector<ride::DriverLocation> location_updates;
  std::vector<ride::RideEvent> events;
  std::vector<std::string> rejected; // diagnostics for refused allocations
};

/// Discrete-event world: drivers on a plane, Poisson ride demand, straight
/// line kinematics with per-tick snapping, pre-drawn cancellation fates with
/// a 5-tick fuse. Deterministic in the config seed.
class World {
public:
  explicit World(const SimConfig& config);

  /// One DriverStatus and one DriverLocation per driver, stamped tick 0.
  SimOutput initial_output() const;

  /// Advances one tick: ingests allocations, moves assigned drivers, emits
  /// pickup/dropoff/cancellation events and freshly drawn requests.
  SimOutput step(std::span<const ride::RideAllocation> allocations);

  Tick tick() const { return tick_; }
  const SimConfig& config() const { return config_; }
  std::size_t driver_count() const { return drivers_.size(); }
  std::size_t available_driver_count() const;
  std::size_t assigned_driver_count() const;

  static constexpr Tick kCancelFuseTicks = 5;

private:
  enum class Phase { ToPickup, OnTrip };

  struct Assignment {
    Id ride_id = 0;
    Phase phase = Phase::ToPickup;
  };

  struct Driver {
    Id id = 0;
    ride::Location position;
    bool available = true;
    std::optional<Assignment> assignment;
  };

  enum class RideStatus { Pending, Assigned, InProgress, Done, Cancelled };

  struct RideEntry {
    Id user_id = 0;
    ride::Location from;
    ride::Location to;
    Tick request_tick = 0;
    RideStatus status = RideStatus::Pending;
    bool cancel_marked = false;
    Tick cancel_at = 0;
  };

  ride::Location random_point();
  void ingest_allocations(std::span<const ride::RideAllocation> allocations, Tick now,
                          SimOutput& out);
  void move_drivers(Tick now, SimOutput& out);
  void fire_cancellations(Tick now, SimOutput& out);
  void draw_requests(Tick now, SimOutput& out);

  SimConfig config_;
  std::mt19937_64 rng_;
  std::vector<Driver> drivers_;
  std::map<Id, RideEntry> rides_;
  Tick tick_ = 0;
  Id next_ride_id_ = 1;
  Id next_user_id_ = 1;
};

} // namespace rideflow::sim
