#pragma once

#include "rideflow/fbp/graph.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

namespace rideflow::ride {

using Tick = fbp::Tick;
using Id = std::uint64_t;

struct Location {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Location&, const Location&) = default;
};

inline double distance_squared(const Location& a, const Location& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Location& a, const Location& b) {
  return std::sqrt(distance_squared(a, b));
}

struct RideRequest {
  Id ride_id = 0;
  Id user_id = 0;
  Location from_location;
  Location to_location;
  Tick request_tick = 0;

  friend bool operator==(const RideRequest&, const RideRequest&) = default;
};

struct DriverStatus {
  Id driver_id = 0;
  bool available = false;
  Tick tick = 0;

  friend bool operator==(const DriverStatus&, const DriverStatus&) = default;
};

struct DriverLocation {
  Id driver_id = 0;
  Location location;
  Tick tick = 0;

  friend bool operator==(const DriverLocation&, const DriverLocation&) = default;
};

/// Join of the latest status and latest location known for one driver.
struct DriverInformation {
  Id driver_id = 0;
  Location location;
  bool available = false;
  Tick tick = 0;

  friend bool operator==(const DriverInformation&, const DriverInformation&) = default;
};

struct RideAllocation {
  Id ride_id = 0;
  Id driver_id = 0;
  Id user_id = 0;
  Location pickup_location;
  Location driver_location_at_allocation;
  Tick allocation_tick = 0;

  friend bool operator==(const RideAllocation&, const RideAllocation&) = default;
};

enum class RideEventKind { Started, Finished, LocationUpdate, Cancelled };

inline std::string_view to_string(RideEventKind kind) {
  switch (kind) {
    case RideEventKind::Started: return "started";
    case RideEventKind::Finished: return "finished";
    case RideEventKind::LocationUpdate: return "location_update";
    case RideEventKind::Cancelled: return "cancelled";
  }
  return "?";
}

struct RideEvent {
  Id ride_id = 0;
  RideEventKind kind = RideEventKind::Started;
  Tick tick = 0;
  std::optional<Location> location; // present iff kind == LocationUpdate

  friend bool operator==(const RideEvent&, const RideEvent&) = default;
};

enum class RideState { Requested, Allocated, InProgress, Completed, Cancelled };

inline std::string_view to_string(RideState state) {
  switch (state) {
    case RideState::Requested: return "requested";
    case RideState::Allocated: return "allocated";
    case RideState::InProgress: return "in_progress";
    case RideState::Completed: return "completed";
    case RideState::Cancelled: return "cancelled";
  }
  return "?";
}

struct RideInformation {
  Id ride_id = 0;
  Id user_id = 0;
  std::optional<Id> driver_id;
  RideState state = RideState::Requested;
  std::optional<Location> last_known_location;
  Tick last_update_tick = 0;

  friend bool operator==(const RideInformation&, const RideInformation&) = default;
};

struct RideWaitInfo {
  Id ride_id = 0;
  Tick actual_wait = 0; // ticks between allocation and pickup

  friend bool operator==(const RideWaitInfo&, const RideWaitInfo&) = default;
};

struct EstimatedWaitTime {
  Id ride_id = 0;
  double estimate = 0.0; // ticks, clamped at zero
  Tick allocation_tick = 0;

  friend bool operator==(const EstimatedWaitTime&, const EstimatedWaitTime&) = default;
};

/// Every record kind that can flow through the ride allocation graphs.
using Record = std::variant<RideRequest, DriverStatus, DriverLocation, DriverInformation,
                            RideAllocation, RideEvent, RideInformation, RideWaitInfo,
                            EstimatedWaitTime>;

using RideGraph = fbp::Graph<Record>;
using NodeInput = fbp::NodeInput<Record>;
using Emissions = fbp::Emissions<Record>;
using Stamped = fbp::Stamped<Record>;

template <typename T>
inline constexpr std::string_view record_kind_v = "?";
template <> inline constexpr std::string_view record_kind_v<RideRequest> = "RideRequest";
template <> inline constexpr std::string_view record_kind_v<DriverStatus> = "DriverStatus";
template <> inline constexpr std::string_view record_kind_v<DriverLocation> = "DriverLocation";
template <> inline constexpr std::string_view record_kind_v<DriverInformation> = "DriverInformation";
template <> inline constexpr std::string_view record_kind_v<RideAllocation> = "RideAllocation";
template <> inline constexpr std::string_view record_kind_v<RideEvent> = "RideEvent";
template <> inline constexpr std::string_view record_kind_v<RideInformation> = "RideInformation";
template <> inline constexpr std::string_view record_kind_v<RideWaitInfo> = "RideWaitInfo";
template <> inline constexpr std::string_view record_kind_v<EstimatedWaitTime> = "EstimatedWaitTime";

} // namespace rideflow::ride
