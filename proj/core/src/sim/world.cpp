#include "rideflow/sim/world.hpp"

#include <algorithm>
#include <cmath>

namespace rideflow::sim {

void validate(const SimConfig& config) {
  if (config.n_drivers < 1) throw SimError("invalid config: n_drivers must be at least 1");
  if (!(config.world_size > 0.0)) throw SimError("invalid config: world_size must be positive");
  if (!(config.driver_speed > 0.0)) throw SimError("invalid config: driver_speed must be positive");
  if (!(config.request_rate >= 0.0)) {
    throw SimError("invalid config: request_rate must be non-negative");
  }
  if (!(config.cancel_probability >= 0.0) || !(config.cancel_probability < 1.0)) {
    throw SimError("invalid config: cancel_probability must be in [0, 1)");
  }
}

World::World(const SimConfig& config) : config_(config), rng_(config.seed) {
  validate(config);
  drivers_.reserve(config.n_drivers);
  for (Id id = 1; id <= config.n_drivers; ++id) {
    drivers_.push_back(Driver{id, random_point(), true, std::nullopt});
  }
}

ride::Location World::random_point() {
  std::uniform_real_distribution<double> coordinate(0.0, config_.world_size);
  const double x = coordinate(rng_);
  const double y = coordinate(rng_);
  return ride::Location{x, y};
}

SimOutput World::initial_output() const {
  SimOutput out;
  out.tick = 0;
  for (const Driver& driver : drivers_) {
    out.status_changes.push_back(ride::DriverStatus{driver.id, driver.available, 0});
    out.location_updates.push_back(ride::DriverLocation{driver.id, driver.position, 0});
  }
  return out;
}

std::size_t World::available_driver_count() const {
  return static_cast<std::size_t>(
      std::count_if(drivers_.begin(), drivers_.end(), [](const Driver& d) { return d.available; }));
}

std::size_t World::assigned_driver_count() const {
  return static_cast<std::size_t>(std::count_if(
      drivers_.begin(), drivers_.end(), [](const Driver& d) { return d.assignment.has_value(); }));
}

void World::ingest_allocations(std::span<const ride::RideAllocation> allocations, Tick now,
                               SimOutput& out) {
  // On rejection the named driver's true status is re-asserted so the app,
  // which marked it busy the moment it allocated, sees it free again.
  auto reject = [&](const std::string& reason, Id driver_id) {
    out.rejected.push_back(reason);
    if (driver_id >= 1 && driver_id <= drivers_.size()) {
      const Driver& driver = drivers_[driver_id - 1];
      out.status_changes.push_back(ride::DriverStatus{driver.id, driver.available, now});
    }
  };

  for (const auto& allocation : allocations) {
    const auto ride_it = rides_.find(allocation.ride_id);
    if (ride_it == rides_.end()) {
      reject("allocation for unknown ride " + std::to_string(allocation.ride_id),
             allocation.driver_id);
      continue;
    }
    if (ride_it->second.status != RideStatus::Pending) {
      reject("allocation for ride " + std::to_string(allocation.ride_id) +
                 " which is no longer pending",
             allocation.driver_id);
      continue;
    }
    if (allocation.driver_id < 1 || allocation.driver_id > drivers_.size()) {
      reject("allocation for unknown driver " + std::to_string(allocation.driver_id), 0);
      continue;
    }
    Driver& driver = drivers_[allocation.driver_id - 1];
    if (!driver.available || driver.assignment) {
      reject("allocation for unavailable driver " + std::to_string(allocation.driver_id),
             allocation.driver_id);
      continue;
    }
    driver.assignment = Assignment{allocation.ride_id, Phase::ToPickup};
    driver.available = false;
    ride_it->second.status = RideStatus::Assigned;
    out.status_changes.push_back(ride::DriverStatus{driver.id, false, now});
  }
}

void World::move_drivers(Tick now, SimOutput& out) {
  for (Driver& driver : drivers_) {
    if (!driver.assignment) continue;
    RideEntry& entry = rides_.at(driver.assignment->ride_id);
    const ride::Location target =
        driver.assignment->phase == Phase::ToPickup ? entry.from : entry.to;
    const double remaining = ride::distance(driver.position, target);

    if (remaining <= config_.driver_speed) {
      driver.position = target;
      out.location_updates.push_back(ride::DriverLocation{driver.id, driver.position, now});
      if (driver.assignment->phase == Phase::ToPickup) {
        entry.status = RideStatus::InProgress;
        driver.assignment->phase = Phase::OnTrip;
        out.events.push_back(
            ride::RideEvent{driver.assignment->ride_id, ride::RideEventKind::Started, now, {}});
      } else {
        entry.status = RideStatus::Done;
        out.events.push_back(
            ride::RideEvent{driver.assignment->ride_id, ride::RideEventKind::Finished, now, {}});
        driver.assignment.reset();
        driver.available = true;
        out.status_changes.push_back(ride::DriverStatus{driver.id, true, now});
      }
    } else {
      const double scale = config_.driver_speed / remaining;
      driver.position.x += (target.x - driver.position.x) * scale;
      driver.position.y += (target.y - driver.position.y) * scale;
      out.location_updates.push_back(ride::DriverLocation{driver.id, driver.position, now});
      if (driver.assignment->phase == Phase::OnTrip) {
        out.events.push_back(ride::RideEvent{driver.assignment->ride_id,
                                             ride::RideEventKind::LocationUpdate, now,
                                             driver.position});
      }
    }
  }
}

void World::fire_cancellations(Tick now, SimOutput& out) {
  for (auto& [ride_id, entry] : rides_) {
    if (!entry.cancel_marked || now != entry.cancel_at) continue;
    if (entry.status != RideStatus::Pending && entry.status != RideStatus::Assigned) continue;

    if (entry.status == RideStatus::Assigned) {
      for (Driver& driver : drivers_) {
        if (driver.assignment && driver.assignment->ride_id == ride_id) {
          driver.assignment.reset();
          driver.available = true;
          out.status_changes.push_back(ride::DriverStatus{driver.id, true, now});
          break;
        }
      }
    }
    entry.status = RideStatus::Cancelled;
    out.events.push_back(ride::RideEvent{ride_id, ride::RideEventKind::Cancelled, now, {}});
  }
}

void World::draw_requests(Tick now, SimOutput& out) {
  std::poisson_distribution<int> arrivals(config_.request_rate);
  std::bernoulli_distribution cancel_fate(config_.cancel_probability);
  const int count = config_.request_rate > 0.0 ? arrivals(rng_) : 0;
  for (int i = 0; i < count; ++i) {
    const Id ride_id = next_ride_id_++;
    const Id user_id = next_user_id_++;
    RideEntry entry;
    entry.user_id = user_id;
    entry.from = random_point();
    entry.to = random_point();
    while (entry.to == entry.from) entry.to = random_point();
    entry.request_tick = now;
    entry.cancel_marked = cancel_fate(rng_);
    entry.cancel_at = now + kCancelFuseTicks;
    out.new_requests.push_back(
        ride::RideRequest{ride_id, user_id, entry.from, entry.to, now});
    rides_.emplace(ride_id, entry);
  }
}

SimOutput World::step(std::span<const ride::RideAllocation> allocations) {
  const Tick now = tick_ + 1;
  SimOutput out;
  out.tick = now;

  ingest_allocations(allocations, now, out);
  move_drivers(now, out);
  fire_cancellations(now, out);
  draw_requests(now, out);

  tick_ = now;
  return out;
}

} // namespace rideflow::sim
