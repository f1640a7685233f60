#include "rideflow/ride/nodes.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace rideflow::ride {

Emissions collate_driver_information(const NodeInput& input) {
  Emissions out(1);

  std::set<Id> touched;
  for (const auto& record : input.new_records(names::driver_statuses)) {
    touched.insert(std::get<DriverStatus>(record.value).driver_id);
  }
  for (const auto& record : input.new_records(names::driver_locations)) {
    touched.insert(std::get<DriverLocation>(record.value).driver_id);
  }
  if (touched.empty()) return out;

  const auto statuses = fbp::latest_by_key(
      input.history(names::driver_statuses),
      [](const Record& r) { return std::get<DriverStatus>(r).driver_id; });
  const auto locations = fbp::latest_by_key(
      input.history(names::driver_locations),
      [](const Record& r) { return std::get<DriverLocation>(r).driver_id; });

  for (Id driver : touched) {
    const auto status = statuses.find(driver);
    const auto location = locations.find(driver);
    if (status == statuses.end() || location == locations.end()) continue; // missing join half
    out[0].push_back(DriverInformation{driver,
                                       std::get<DriverLocation>(location->second).location,
                                       std::get<DriverStatus>(status->second).available,
                                       input.tick()});
  }
  return out;
}

namespace {

// Everything the allocation rule knows about one driver while replaying.
struct DriverView {
  Location location;
  bool available = false;
  Tick info_tick = 0;
  std::optional<Tick> allocated_tick;

  // A driver is matchable when its latest information says available and no
  // allocation has happened since that information arrived.
  bool matchable() const {
    return available && (!allocated_tick || *allocated_tick < info_tick);
  }
};

} // namespace

Emissions allocate_rides(const NodeInput& input) {
  const auto requests = input.history(names::ride_requests).records();
  const auto infos = input.history(names::driver_information).records();
  const Tick now = input.tick();

  std::map<Id, DriverView> drivers;
  std::map<std::pair<Tick, Id>, const RideRequest*> pending; // FIFO: (request_tick, ride_id)
  std::set<Id> seen_rides;
  Emissions out(2); // internal allocations + allocation output copy

  auto match_at = [&](Tick t) {
    for (auto it = pending.begin(); it != pending.end();) {
      const RideRequest& request = *it->second;
      std::optional<Id> best_id;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (const auto& [driver_id, view] : drivers) {
        if (!view.matchable()) continue;
        const double d2 = distance_squared(view.location, request.from_location);
        if (!best_id || d2 < best_d2) {
          best_id = driver_id;
          best_d2 = d2;
        } // equal distance keeps the smaller driver id already held
      }
      if (!best_id) break; // nobody free: the rest stays pending

      DriverView& winner = drivers[*best_id];
      const RideAllocation allocation{request.ride_id,       *best_id, request.user_id,
                                      request.from_location, winner.location, t};
      winner.allocated_tick = t;
      if (t == now) {
        out[0].push_back(allocation);
        out[1].push_back(allocation);
      }
      it = pending.erase(it);
    }
  };

  // Replay the rule over history: ingest records in stamp order, re-running
  // the matching pass at every tick where anything changed, and finally at the
  // current tick. Only current-tick decisions are emitted; earlier passes
  // reproduce decisions already emitted on earlier ticks.
  std::size_t request_index = 0;
  std::size_t info_index = 0;
  for (;;) {
    Tick t = now;
    if (request_index < requests.size()) t = std::min(t, requests[request_index].tick);
    if (info_index < infos.size()) t = std::min(t, infos[info_index].tick);

    while (info_index < infos.size() && infos[info_index].tick <= t) {
      const auto& info = std::get<DriverInformation>(infos[info_index].value);
      DriverView& view = drivers[info.driver_id];
      view.location = info.location;
      view.available = info.available;
      view.info_tick = infos[info_index].tick;
      ++info_index;
    }
    while (request_index < requests.size() && requests[request_index].tick <= t) {
      const auto& request = std::get<RideRequest>(requests[request_index].value);
      if (seen_rides.insert(request.ride_id).second) {
        pending.emplace(std::make_pair(request.request_tick, request.ride_id), &request);
      }
      ++request_index;
    }

    match_at(t);

    if (t >= now) break; // final pass ran at the current tick
  }
  return out;
}

namespace {

struct RideFold {
  RideInformation info;
  Tick change_tick = 0;
};

void apply_request(std::map<Id, RideFold>& rides, const RideRequest& request, Tick stamp) {
  auto [it, inserted] = rides.try_emplace(request.ride_id);
  if (!inserted) return; // duplicate request for a known ride
  it->second.info = RideInformation{request.ride_id, request.user_id, std::nullopt,
                                    RideState::Requested, std::nullopt, stamp};
  it->second.change_tick = stamp;
}

void apply_allocation(std::map<Id, RideFold>& rides, const RideAllocation& allocation, Tick stamp) {
  auto it = rides.find(allocation.ride_id);
  if (it == rides.end()) return;
  RideFold& fold = it->second;
  if (fold.info.state != RideState::Requested) return; // terminal or already allocated
  fold.info.state = RideState::Allocated;
  fold.info.driver_id = allocation.driver_id;
  fold.info.last_update_tick = stamp;
  fold.change_tick = stamp;
}

void apply_event(std::map<Id, RideFold>& rides, const RideEvent& event, Tick stamp) {
  auto it = rides.find(event.ride_id);
  if (it == rides.end()) return; // unknown ride
  RideFold& fold = it->second;
  bool changed = false;
  switch (event.kind) {
    case RideEventKind::Started:
      if (fold.info.state == RideState::Allocated) {
        fold.info.state = RideState::InProgress;
        changed = true;
      }
      break;
    case RideEventKind::Finished:
      if (fold.info.state == RideState::InProgress) {
        fold.info.state = RideState::Completed;
        changed = true;
      }
      break;
    case RideEventKind::Cancelled:
      if (fold.info.state == RideState::Requested || fold.info.state == RideState::Allocated) {
        fold.info.state = RideState::Cancelled;
        changed = true;
      }
      break;
    case RideEventKind::LocationUpdate:
      if (event.location &&
          (fold.info.state == RideState::Requested || fold.info.state == RideState::Allocated ||
           fold.info.state == RideState::InProgress)) {
        fold.info.last_known_location = event.location;
        changed = true;
      }
      break;
  }
  if (changed) {
    fold.info.last_update_tick = stamp;
    fold.change_tick = stamp;
  }
}

} // namespace

Emissions update_ride_information(const NodeInput& input) {
  Emissions out(1);

  Tick first_new = std::numeric_limits<Tick>::max();
  bool any_new = false;
  for (const auto stream :
       {names::ride_requests, names::ride_allocations, names::ride_events}) {
    const auto fresh = input.new_records(stream);
    if (!fresh.empty()) {
      any_new = true;
      first_new = std::min(first_new, fresh.front().tick);
    }
  }
  if (!any_new) return out;

  const auto requests = input.history(names::ride_requests).records();
  const auto allocations = input.history(names::ride_allocations).records();
  const auto events = input.history(names::ride_events).records();

  // Fold the three histories in (stamp, requests < allocations < events) order
  // so an allocation and its Started event on the same tick land in sequence.
  std::map<Id, RideFold> rides;
  std::size_t request_index = 0;
  std::size_t allocation_index = 0;
  std::size_t event_index = 0;
  while (request_index < requests.size() || allocation_index < allocations.size() ||
         event_index < events.size()) {
    Tick t = std::numeric_limits<Tick>::max();
    if (request_index < requests.size()) t = std::min(t, requests[request_index].tick);
    if (allocation_index < allocations.size()) t = std::min(t, allocations[allocation_index].tick);
    if (event_index < events.size()) t = std::min(t, events[event_index].tick);

    while (request_index < requests.size() && requests[request_index].tick == t) {
      apply_request(rides, std::get<RideRequest>(requests[request_index].value), t);
      ++request_index;
    }
    while (allocation_index < allocations.size() && allocations[allocation_index].tick == t) {
      apply_allocation(rides, std::get<RideAllocation>(allocations[allocation_index].value), t);
      ++allocation_index;
    }
    while (event_index < events.size() && events[event_index].tick == t) {
      apply_event(rides, std::get<RideEvent>(events[event_index].value), t);
      ++event_index;
    }
  }

  for (const auto& [ride_id, fold] : rides) {
    if (fold.change_tick >= first_new) out[0].push_back(fold.info);
  }
  return out;
}

Emissions compute_wait_time(const NodeInput& input) {
  Emissions out(1);
  const auto fresh_events = input.new_records(names::ride_events);
  if (fresh_events.empty()) return out;

  std::map<Id, Tick> allocation_ticks;
  for (const auto& record : input.history(names::ride_allocations).records()) {
    const auto& allocation = std::get<RideAllocation>(record.value);
    allocation_ticks.emplace(allocation.ride_id, allocation.allocation_tick);
  }

  for (const auto& record : fresh_events) {
    const auto& event = std::get<RideEvent>(record.value);
    if (event.kind != RideEventKind::Started) continue;
    const auto it = allocation_ticks.find(event.ride_id);
    if (it == allocation_ticks.end()) continue; // pickup without a known allocation
    if (event.tick < it->second) continue;
    out[0].push_back(RideWaitInfo{event.ride_id, event.tick - it->second});
  }
  return out;
}

Emissions estimate_wait_time(const NodeInput& input, const model::WaitModel& model) {
  Emissions out(1);
  for (const auto& record : input.new_records(names::ride_allocations)) {
    const auto& allocation = std::get<RideAllocation>(record.value);
    const double d = distance(allocation.driver_location_at_allocation, allocation.pickup_location);
    out[0].push_back(EstimatedWaitTime{allocation.ride_id, model::predict(model, d),
                                       allocation.allocation_tick});
  }
  return out;
}

} // namespace rideflow::ride
