#pragma once

#include "rideflow/fbp/errors.hpp"
#include "rideflow/fbp/stream.hpp"

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rideflow::fbp {

/// What a transform returns: one record list per declared output stream,
/// index-aligned with the node's output list.
template <typename R>
using Emissions = std::vector<std::vector<R>>;

/// Read-only view handed to a transform. Statelessness is enforced by the
/// interface: this view is the transform's only input.
template <typename R>
class NodeInput {
public:
  Tick tick() const { return tick_; }

  /// Records appended to `stream_name` since this node's previous successful
  /// invocation.
  std::span<const Stamped<R>> new_records(std::string_view stream_name) const {
    const Port& port = find(stream_name);
    return port.log->records().subspan(port.cursor);
  }

  /// The whole log, including records delivered on earlier ticks.
  const StreamLog<R>& history(std::string_view stream_name) const {
    return *find(stream_name).log;
  }

private:
  template <typename>
  friend class Graph;

  struct Port {
    const std::string* name;
    const StreamLog<R>* log;
    std::size_t cursor; // index of the first undelivered record
  };

  NodeInput(Tick tick, std::vector<Port> ports) : tick_(tick), ports_(std::move(ports)) {}

  const Port& find(std::string_view stream_name) const {
    for (const Port& port : ports_) {
      if (*port.name == stream_name) return port;
    }
    throw GraphError("stream '" + std::string(stream_name) + "' is not an input of this node");
  }

  Tick tick_;
  std::vector<Port> ports_;
};

template <typename R>
using Transform = std::function<Emissions<R>(const NodeInput<R>&)>;

template <typename R>
struct NodeDescriptor {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Transform<R> transform;
};

} // namespace rideflow::fbp
