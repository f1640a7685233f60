#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rideflow::fbp {

/// Base class for all graph construction and execution failures.
class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DuplicateNameError : public GraphError {
public:
  explicit DuplicateNameError(const std::string& name)
      : GraphError("duplicate name '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

private:
  std::string name_;
};

class UnknownStreamError : public GraphError {
public:
  explicit UnknownStreamError(const std::string& name)
      : GraphError("unknown stream '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

private:
  std::string name_;
};

/// Raised when a node transform throws or misbehaves during execute_tick.
/// The failing node's outputs are not appended; earlier nodes' appends stand.
class TickError : public GraphError {
public:
  TickError(const std::string& node, std::uint64_t tick, const std::string& cause)
      : GraphError("node '" + node + "' failed at tick " + std::to_string(tick) + ": " + cause),
        node_(node),
        tick_(tick) {}

  const std::string& node() const { return node_; }
  std::uint64_t tick() const { return tick_; }

private:
  std::string node_;
  std::uint64_t tick_;
};

} // namespace rideflow::fbp
