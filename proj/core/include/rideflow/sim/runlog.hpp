#pragma once

#include "rideflow/ride/records.hpp"
#include "rideflow/sim/world.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace rideflow::sim {

/// Per-stream app records emitted during one tick, keyed by output stream.
using AppOutputs = std::map<std::string, std::vector<ride::Record>>;

struct TickRecord {
  SimOutput sim;
  AppOutputs app;
};

/// Everything a simulation run produced, in tick order.
struct RunLog {
  std::vector<TickRecord> ticks;

  bool empty() const { return ticks.empty(); }
  Tick final_tick() const { return ticks.empty() ? 0 : ticks.back().sim.tick; }
};

/// Line-delimited serialization: one flat key/value object per record with a
/// `type` field (request|status|location|event|allocation|wait|estimate),
/// UTF-8, deterministic for identical runs.
std::string serialize_runlog(const RunLog& log);
void write_runlog(const RunLog& log, const std::filesystem::path& path);

/// Parses serialized runlog text back into stamped records. Throws SimError
/// with the offending line number on malformed input.
std::vector<ride::Stamped> parse_runlog(std::string_view text);
std::vector<ride::Stamped> read_runlog(const std::filesystem::path& path);

} // namespace rideflow::sim
