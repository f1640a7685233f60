#include "rideflow/sim/runlog.hpp"

#include "rideflow/ride/nodes.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace rideflow::sim {

namespace {

using nlohmann::json;

json line_request(const ride::RideRequest& r) {
  json j;
  j["type"] = "request";
  j["tick"] = r.request_tick;
  j["ride_id"] = r.ride_id;
  j["user_id"] = r.user_id;
  j["from_x"] = r.from_location.x;
  j["from_y"] = r.from_location.y;
  j["to_x"] = r.to_location.x;
  j["to_y"] = r.to_location.y;
  return j;
}

json line_status(const ride::DriverStatus& s) {
  json j;
  j["type"] = "status";
  j["tick"] = s.tick;
  j["driver_id"] = s.driver_id;
  j["available"] = s.available;
  return j;
}

json line_location(const ride::DriverLocation& l) {
  json j;
  j["type"] = "location";
  j["tick"] = l.tick;
  j["driver_id"] = l.driver_id;
  j["x"] = l.location.x;
  j["y"] = l.location.y;
  return j;
}

json line_event(const ride::RideEvent& e) {
  json j;
  j["type"] = "event";
  j["tick"] = e.tick;
  j["ride_id"] = e.ride_id;
  j["kind"] = std::string(ride::to_string(e.kind));
  if (e.location) {
    j["x"] = e.location->x;
    j["y"] = e.location->y;
  }
  return j;
}

json line_allocation(const ride::RideAllocation& a) {
  json j;
  j["type"] = "allocation";
  j["tick"] = a.allocation_tick;
  j["ride_id"] = a.ride_id;
  j["driver_id"] = a.driver_id;
  j["user_id"] = a.user_id;
  j["pickup_x"] = a.pickup_location.x;
  j["pickup_y"] = a.pickup_location.y;
  j["driver_x"] = a.driver_location_at_allocation.x;
  j["driver_y"] = a.driver_location_at_allocation.y;
  return j;
}

json line_wait(const ride::RideWaitInfo& w, Tick tick) {
  json j;
  j["type"] = "wait";
  j["tick"] = tick;
  j["ride_id"] = w.ride_id;
  j["actual_wait"] = w.actual_wait;
  return j;
}

json line_estimate(const ride::EstimatedWaitTime& e) {
  json j;
  j["type"] = "estimate";
  j["tick"] = e.allocation_tick;
  j["ride_id"] = e.ride_id;
  j["estimate"] = e.estimate;
  return j;
}

ride::RideEventKind parse_kind(const std::string& kind, std::size_t line_number) {
  if (kind == "started") return ride::RideEventKind::Started;
  if (kind == "finished") return ride::RideEventKind::Finished;
  if (kind == "location_update") return ride::RideEventKind::LocationUpdate;
  if (kind == "cancelled") return ride::RideEventKind::Cancelled;
  throw SimError("runlog line " + std::to_string(line_number) + ": unknown event kind '" + kind +
                 "'");
}

} // namespace

std::string serialize_runlog(const RunLog& log) {
  std::string out;
  auto emit = [&out](const json& j) {
    out += j.dump();
    out += '\n';
  };
  for (const TickRecord& record : log.ticks) {
    for (const auto& r : record.sim.new_requests) emit(line_request(r));
    for (const auto& s : record.sim.status_changes) emit(line_status(s));
    for (const auto& l : record.sim.location_updates) emit(line_location(l));
    for (const auto& e : record.sim.events) emit(line_event(e));

    auto stream_records = [&](std::string_view name) -> const std::vector<ride::Record>* {
      auto it = record.app.find(std::string(name));
      return it == record.app.end() ? nullptr : &it->second;
    };
    if (const auto* allocations = stream_records(ride::names::ride_allocation_output)) {
      for (const auto& r : *allocations) emit(line_allocation(std::get<ride::RideAllocation>(r)));
    }
    if (const auto* waits = stream_records(ride::names::ride_wait_info)) {
      for (const auto& r : *waits) emit(line_wait(std::get<ride::RideWaitInfo>(r), record.sim.tick));
    }
    if (const auto* estimates = stream_records(ride::names::estimated_wait_time)) {
      for (const auto& r : *estimates) emit(line_estimate(std::get<ride::EstimatedWaitTime>(r)));
    }
  }
  return out;
}

void write_runlog(const RunLog& log, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw SimError("cannot open '" + path.string() + "' for writing");
  file << serialize_runlog(log);
  if (!file.flush()) throw SimError("failed writing '" + path.string() + "'");
}

std::vector<ride::Stamped> parse_runlog(std::string_view text) {
  std::vector<ride::Stamped> records;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw SimError("runlog line " + std::to_string(line_number) + ": " + e.what());
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      const Tick tick = j.at("tick").get<Tick>();
      ride::Record record;
      if (type == "request") {
        record = ride::RideRequest{j.at("ride_id").get<Id>(), j.at("user_id").get<Id>(),
                                   {j.at("from_x").get<double>(), j.at("from_y").get<double>()},
                                   {j.at("to_x").get<double>(), j.at("to_y").get<double>()},
                                   tick};
      } else if (type == "status") {
        record = ride::DriverStatus{j.at("driver_id").get<Id>(), j.at("available").get<bool>(),
                                    tick};
      } else if (type == "location") {
        record = ride::DriverLocation{j.at("driver_id").get<Id>(),
                                      {j.at("x").get<double>(), j.at("y").get<double>()},
                                      tick};
      } else if (type == "event") {
        ride::RideEvent event{j.at("ride_id").get<Id>(),
                              parse_kind(j.at("kind").get<std::string>(), line_number), tick, {}};
        if (j.contains("x")) {
          event.location = ride::Location{j.at("x").get<double>(), j.at("y").get<double>()};
        }
        record = event;
      } else if (type == "allocation") {
        record = ride::RideAllocation{
            j.at("ride_id").get<Id>(),
            j.at("driver_id").get<Id>(),
            j.at("user_id").get<Id>(),
            {j.at("pickup_x").get<double>(), j.at("pickup_y").get<double>()},
            {j.at("driver_x").get<double>(), j.at("driver_y").get<double>()},
            tick};
      } else if (type == "wait") {
        record = ride::RideWaitInfo{j.at("ride_id").get<Id>(), j.at("actual_wait").get<Tick>()};
      } else if (type == "estimate") {
        record = ride::EstimatedWaitTime{j.at("ride_id").get<Id>(), j.at("estimate").get<double>(),
                                         tick};
      } else {
        throw SimError("runlog line " + std::to_string(line_number) + ": unknown type '" + type +
                       "'");
      }
      records.push_back(ride::Stamped{tick, std::move(record)});
    } catch (const json::exception& e) {
      throw SimError("runlog line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return records;
}

std::vector<ride::Stamped> read_runlog(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw SimError("cannot open '" + path.string() + "' for reading");
  std::ostringstream contents;
  contents << file.rdbuf();
  return parse_runlog(contents.str());
}

} // namespace rideflow::sim
