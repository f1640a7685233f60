#pragma once

#include "rideflow/ride/app.hpp"
#include "rideflow/sim/runlog.hpp"
#include "rideflow/sim/world.hpp"

#include <functional>

namespace rideflow::sim {

/// Invoked after every tick with the world, what it emitted, and what the app
/// answered. Handy for per-tick invariant checks and progress reporting.
using TickCallback =
    std::function<void(const World& world, const SimOutput& sim, const AppOutputs& app)>;

/// Drives the simulation/app loop for config.ticks ticks: the world generates
/// data, the graph handles it, emitted allocations feed the next step. The
/// graph must be freshly built and validated. Fully deterministic in
/// (config, graph program).
RunLog run(const SimConfig& config, ride::RideGraph& graph, const TickCallback& on_tick = {});

} // namespace rideflow::sim
