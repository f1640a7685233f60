#pragma once

#include "rideflow/model/wait_model.hpp"
#include "rideflow/ride/records.hpp"

namespace rideflow::ride {

/// Stream and node names of the ride allocation graphs.
namespace names {
inline constexpr std::string_view ride_requests = "RideRequestStream";
inline constexpr std::string_view driver_statuses = "DriverStatusStream";
inline constexpr std::string_view driver_locations = "DriverLocationStream";
inline constexpr std::string_view ride_events = "RideEventStream";
inline constexpr std::string_view driver_information = "DriverInformationStream";
inline constexpr std::string_view ride_allocations = "RideAllocationStream";
inline constexpr std::string_view ride_allocation_output = "RideAllocationOutputStream";
inline constexpr std::string_view ride_information = "RideInformationStream";
inline constexpr std::string_view ride_wait_info = "RideWaitInfoStream";
inline constexpr std::string_view estimated_wait_time = "EstimatedWaitTimeStream";

inline constexpr std::string_view collate_driver_information = "CollateDriverInformation";
inline constexpr std::string_view allocate_ride = "AllocateRide";
inline constexpr std::string_view update_ride_information = "UpdateRideInformation";
inline constexpr std::string_view compute_wait_time = "ComputeWaitTime";
inline constexpr std::string_view estimate_ride_wait_time = "EstimateRideWaitTime";
} // namespace names

/// Joins the latest status and latest location per driver; emits one
/// DriverInformation for every driver with a new status or location this
/// tick. Drivers missing either half are skipped.
Emissions collate_driver_information(const NodeInput& input);

/// Matches pending ride requests (FIFO by request tick, then ride id) to the
/// nearest available driver by Euclidean distance, smaller driver id on ties.
/// Pending and busy state is re-derived from the input histories on every
/// invocation, so the node itself stays stateless. Emits to both the internal
/// allocation stream and the allocation output stream.
Emissions allocate_rides(const NodeInput& input);

/// Folds requests, allocations and ride events into per-ride state following
/// Requested -> Allocated -> InProgress -> Completed, with Cancelled terminal
/// from Requested/Allocated. Emits one RideInformation per ride whose state
/// or location changed this tick; events for unknown rides are ignored.
Emissions update_ride_information(const NodeInput& input);

/// On every Started event with a known allocation, emits the factual wait:
/// started tick minus allocation tick.
Emissions compute_wait_time(const NodeInput& input);

/// Per new allocation, predicts the wait from the driver-to-pickup distance
/// using `model` and emits an EstimatedWaitTime clamped at zero.
Emissions estimate_wait_time(const NodeInput& input, const model::WaitModel& model);

} // namespace rideflow::ride
