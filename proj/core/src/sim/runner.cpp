#include "rideflow/sim/runner.hpp"

#include "rideflow/ride/nodes.hpp"

namespace rideflow::sim {

namespace {

ride::RideGraph::ExternalInputs to_inputs(const SimOutput& out) {
  ride::RideGraph::ExternalInputs inputs;
  auto& requests = inputs[std::string(ride::names::ride_requests)];
  for (const auto& r : out.new_requests) requests.emplace_back(r);
  auto& statuses = inputs[std::string(ride::names::driver_statuses)];
  for (const auto& s : out.status_changes) statuses.emplace_back(s);
  auto& locations = inputs[std::string(ride::names::driver_locations)];
  for (const auto& l : out.location_updates) locations.emplace_back(l);
  auto& events = inputs[std::string(ride::names::ride_events)];
  for (const auto& e : out.events) events.emplace_back(e);
  return inputs;
}

std::vector<ride::RideAllocation> extract_allocations(const AppOutputs& app) {
  std::vector<ride::RideAllocation> allocations;
  const auto it = app.find(std::string(ride::names::ride_allocation_output));
  if (it == app.end()) return allocations;
  allocations.reserve(it->second.size());
  for (const auto& record : it->second) {
    allocations.push_back(std::get<ride::RideAllocation>(record));
  }
  return allocations;
}

} // namespace

RunLog run(const SimConfig& config, ride::RideGraph& graph, const TickCallback& on_tick) {
  validate(config);
  if (auto violations = graph.validate(); !violations.empty()) {
    throw fbp::ValidationError(std::move(violations));
  }
  if (graph.tick() != 0) {
    throw SimError("run requires a freshly built graph (ticks already executed)");
  }

  RunLog log;
  if (config.ticks == 0) return log;

  World world(config);
  SimOutput sim = world.initial_output();
  std::vector<ride::RideAllocation> allocations;
  for (Tick k = 0; k < config.ticks; ++k) {
    if (k > 0) sim = world.step(allocations);
    AppOutputs app = graph.execute_tick(to_inputs(sim));
    allocations = extract_allocations(app);
    if (on_tick) on_tick(world, sim, app);
    log.ticks.push_back(TickRecord{std::move(sim), std::move(app)});
  }
  return log;
}

} // namespace rideflow::sim
