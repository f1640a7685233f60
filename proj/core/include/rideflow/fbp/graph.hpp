// Dataflow graph runtime: streams coupled to stateless nodes, executed in
// deterministic synchronous ticks. Nodes run once per tick in a fixed
// topological order (ties broken by insertion order); records appended to a
// stream before a downstream node runs are visible to it the same tick.
#pragma once

#include "rideflow/fbp/errors.hpp"
#include "rideflow/fbp/node.hpp"
#include "rideflow/fbp/stream.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rideflow::fbp {

enum class ViolationKind {
  Cycle,
  InputStreamHasProducer,
  OutputStreamHasConsumer,
  InternalStreamWithoutProducer,
  InternalStreamWithoutConsumer,
};

struct Violation {
  ViolationKind kind;
  /// Offending stream/node names; for cycles, the members in walk order.
  std::vector<std::string> members;
  std::string message;
};

class ValidationError : public GraphError {
public:
  explicit ValidationError(std::vector<Violation> violations)
      : GraphError(join(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

private:
  static std::string join(const std::vector<Violation>& violations) {
    std::string message = "graph validation failed:";
    for (const auto& violation : violations) {
      message += "\n  " + violation.message;
    }
    return message;
  }

  std::vector<Violation> violations_;
};

struct TapId {
  std::size_t stream;
  std::size_t slot;
};

template <typename R>
class Graph {
public:
  using ExternalInputs = std::map<std::string, std::vector<R>>;
  using TickOutputs = std::map<std::string, std::vector<R>>;
  using TapSink = std::function<void(const Stamped<R>&)>;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  Graph(Graph&&) noexcept = default;
  Graph& operator=(Graph&&) noexcept = default;

  /// Registers an empty stream. Throws DuplicateNameError if the name is taken
  /// by another stream or node.
  const StreamLog<R>& add_stream(std::string name, StreamCategory category,
                                 std::string record_kind) {
    require_fresh_name(name);
    stream_index_.emplace(name, streams_.size());
    streams_.push_back(std::make_unique<StreamEntry>(
        StreamDescriptor{std::move(name), category, std::move(record_kind)}));
    invalidate_schedule();
    return streams_.back()->log;
  }

  /// Registers a node consuming `inputs` and producing `outputs`, all of which
  /// must already exist. A node has at least one input and one output.
  const NodeDescriptor<R>& add_node(std::string name, std::vector<std::string> inputs,
                                    std::vector<std::string> outputs, Transform<R> transform) {
    require_fresh_name(name);
    if (inputs.empty() || outputs.empty()) {
      throw GraphError("node '" + name + "' must have at least one input and one output stream");
    }
    std::vector<std::size_t> input_ids;
    std::vector<std::size_t> output_ids;
    for (const auto& stream : inputs) input_ids.push_back(stream_id(stream));
    for (const auto& stream : outputs) output_ids.push_back(stream_id(stream));

    const std::size_t node_id = nodes_.size();
    node_index_.emplace(name, node_id);
    auto entry = std::make_unique<NodeEntry>();
    entry->descriptor =
        NodeDescriptor<R>{std::move(name), std::move(inputs), std::move(outputs), std::move(transform)};
    entry->input_ids = std::move(input_ids);
    entry->output_ids = std::move(output_ids);
    entry->cursors.assign(entry->input_ids.size(), 0);
    for (std::size_t stream : entry->input_ids) streams_[stream]->consumers.push_back(node_id);
    for (std::size_t stream : entry->output_ids) streams_[stream]->producers.push_back(node_id);
    nodes_.push_back(std::move(entry));
    invalidate_schedule();
    return nodes_.back()->descriptor;
  }

  /// Every violation of the graph invariants; empty means the graph is valid.
  std::vector<Violation> validate() const {
    std::vector<Violation> violations;
    for (const auto& entry : streams_) {
      const std::string& name = entry->log.name();
      switch (entry->log.category()) {
        case StreamCategory::Input:
          if (!entry->producers.empty()) {
            violations.push_back(make_category_violation(ViolationKind::InputStreamHasProducer,
                                                         name, entry->producers,
                                                         "input stream '" + name +
                                                             "' has producing node(s)"));
          }
          break;
        case StreamCategory::Output:
          if (!entry->consumers.empty()) {
            violations.push_back(make_category_violation(ViolationKind::OutputStreamHasConsumer,
                                                         name, entry->consumers,
                                                         "output stream '" + name +
                                                             "' has consuming node(s)"));
          }
          break;
        case StreamCategory::Internal:
          if (entry->producers.empty()) {
            violations.push_back(Violation{ViolationKind::InternalStreamWithoutProducer,
                                           {name},
                                           "internal stream '" + name + "' has no producer"});
          }
          if (entry->consumers.empty()) {
            violations.push_back(Violation{ViolationKind::InternalStreamWithoutConsumer,
                                           {name},
                                           "internal stream '" + name + "' has no consumer"});
          }
          break;
      }
    }
    find_cycles(violations);
    return violations;
  }

  /// Runs one tick: appends `inputs` to their Input streams, executes every
  /// node once in topological order, and returns the records emitted to
  /// Output streams this tick. Taps fire synchronously per append.
  TickOutputs execute_tick(const ExternalInputs& inputs) {
    prepare_schedule();
    for (const auto& [name, records] : inputs) {
      const std::size_t id = stream_id(name);
      if (streams_[id]->log.category() != StreamCategory::Input) {
        throw GraphError("cannot inject into non-input stream '" + name + "'");
      }
      (void)records;
    }

    const Tick now = tick_;
    for (const auto& [name, records] : inputs) {
      const std::size_t id = stream_id(name);
      for (const R& record : records) append(id, now, record);
    }

    TickOutputs outputs;
    for (std::size_t node_id : *schedule_) {
      NodeEntry& node = *nodes_[node_id];
      std::vector<typename NodeInput<R>::Port> ports;
      std::vector<std::size_t> read_sizes;
      ports.reserve(node.input_ids.size());
      read_sizes.reserve(node.input_ids.size());
      for (std::size_t i = 0; i < node.input_ids.size(); ++i) {
        const StreamLog<R>& log = streams_[node.input_ids[i]]->log;
        ports.push_back({&node.descriptor.inputs[i], &log, node.cursors[i]});
        read_sizes.push_back(log.size());
      }

      Emissions<R> emissions;
      try {
        emissions = node.descriptor.transform(NodeInput<R>(now, std::move(ports)));
      } catch (const std::exception& e) {
        throw TickError(node.descriptor.name, now, e.what());
      }
      if (emissions.size() != node.output_ids.size()) {
        throw TickError(node.descriptor.name, now,
                        "emitted " + std::to_string(emissions.size()) + " output lists, expected " +
                            std::to_string(node.output_ids.size()));
      }

      for (std::size_t i = 0; i < node.output_ids.size(); ++i) {
        const std::size_t stream = node.output_ids[i];
        const bool is_output = streams_[stream]->log.category() == StreamCategory::Output;
        for (R& record : emissions[i]) {
          if (is_output) outputs[streams_[stream]->log.name()].push_back(record);
          append(stream, now, std::move(record));
        }
      }
      node.cursors = std::move(read_sizes);
    }

    ++tick_;
    return outputs;
  }

  /// Read handle for a stream, or nullptr when absent.
  const StreamLog<R>* find_stream(std::string_view name) const {
    auto it = stream_index_.find(name);
    return it == stream_index_.end() ? nullptr : &streams_[it->second]->log;
  }

  /// Attaches a passive observer; the sink sees every record appended to the
  /// stream after attachment, in append order. Taps cannot alter the stream.
  TapId attach_tap(std::string_view stream_name, TapSink sink) {
    const std::size_t id = stream_id(stream_name);
    streams_[id]->taps.push_back(std::move(sink));
    return TapId{id, streams_[id]->taps.size() - 1};
  }

  /// Number of ticks executed so far (also the index the next tick will use).
  Tick tick() const { return tick_; }

  std::size_t stream_count() const { return streams_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  const StreamLog<R>& stream_at(std::size_t index) const { return streams_.at(index)->log; }
  const NodeDescriptor<R>& node_at(std::size_t index) const { return nodes_.at(index)->descriptor; }

private:
  struct StreamEntry {
    explicit StreamEntry(StreamDescriptor descriptor) : log(std::move(descriptor)) {}
    StreamLog<R> log;
    std::vector<std::size_t> producers;
    std::vector<std::size_t> consumers;
    std::vector<TapSink> taps;
  };

  struct NodeEntry {
    NodeDescriptor<R> descriptor;
    std::vector<std::size_t> input_ids;
    std::vector<std::size_t> output_ids;
    std::vector<std::size_t> cursors; // first undelivered record per input
  };

  void require_fresh_name(const std::string& name) const {
    if (stream_index_.contains(name) || node_index_.contains(name)) {
      throw DuplicateNameError(name);
    }
  }

  std::size_t stream_id(std::string_view name) const {
    auto it = stream_index_.find(name);
    if (it == stream_index_.end()) throw UnknownStreamError(std::string(name));
    return it->second;
  }

  void append(std::size_t stream, Tick tick, R record) {
    StreamEntry& entry = *streams_[stream];
    entry.log.append(tick, std::move(record));
    const Stamped<R>& appended = entry.log.records().back();
    for (const TapSink& sink : entry.taps) sink(appended);
  }

  void invalidate_schedule() { schedule_.reset(); }

  void prepare_schedule() {
    if (schedule_) return;
    std::vector<Violation> violations = validate();
    if (!violations.empty()) throw ValidationError(std::move(violations));
    schedule_ = topological_order();
  }

  /// Kahn's algorithm over nodes; edges are producer→consumer pairs sharing a
  /// stream. Ready set keyed by insertion index for deterministic ties.
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> indegree(nodes_.size(), 0);
    for (const auto& entry : streams_) {
      for (std::size_t consumer : entry->consumers) {
        indegree[consumer] += entry->producers.size();
      }
    }
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (indegree[i] == 0) ready.insert(i);
    }
    std::vector<std::size_t> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
      const std::size_t node = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(node);
      for (std::size_t stream : nodes_[node]->output_ids) {
        for (std::size_t consumer : streams_[stream]->consumers) {
          if (--indegree[consumer] == 0) ready.insert(consumer);
        }
      }
    }
    return order; // validate() already rejected cycles
  }

  Violation make_category_violation(ViolationKind kind, const std::string& stream,
                                    const std::vector<std::size_t>& node_ids,
                                    std::string message) const {
    Violation violation{kind, {stream}, std::move(message)};
    for (std::size_t id : node_ids) violation.members.push_back(nodes_[id]->descriptor.name);
    return violation;
  }

  // Bipartite DFS over node↔stream edges; each back edge yields one cycle
  // violation naming the members in walk order.
  void find_cycles(std::vector<Violation>& violations) const {
    enum class Color { White, Gray, Black };
    // vertex encoding: [0, nodes) are nodes, [nodes, nodes+streams) are streams
    const std::size_t n_nodes = nodes_.size();
    std::vector<Color> color(n_nodes + streams_.size(), Color::White);
    std::vector<std::size_t> stack;

    auto vertex_name = [&](std::size_t v) {
      return v < n_nodes ? nodes_[v]->descriptor.name : streams_[v - n_nodes]->log.name();
    };
    auto out_edges = [&](std::size_t v) {
      std::vector<std::size_t> targets;
      if (v < n_nodes) {
        for (std::size_t stream : nodes_[v]->output_ids) targets.push_back(n_nodes + stream);
      } else {
        for (std::size_t consumer : streams_[v - n_nodes]->consumers) targets.push_back(consumer);
      }
      return targets;
    };

    auto dfs = [&](auto&& self, std::size_t v) -> void {
      color[v] = Color::Gray;
      stack.push_back(v);
      for (std::size_t target : out_edges(v)) {
        if (color[target] == Color::Gray) {
          Violation violation{ViolationKind::Cycle, {}, ""};
          auto it = std::find(stack.begin(), stack.end(), target);
          for (; it != stack.end(); ++it) violation.members.push_back(vertex_name(*it));
          violation.message = "cycle:";
          for (const auto& member : violation.members) violation.message += " " + member;
          violations.push_back(std::move(violation));
        } else if (color[target] == Color::White) {
          self(self, target);
        }
      }
      stack.pop_back();
      color[v] = Color::Black;
    };
    for (std::size_t v = 0; v < color.size(); ++v) {
      if (color[v] == Color::White) dfs(dfs, v);
    }
  }

  std::vector<std::unique_ptr<StreamEntry>> streams_;
  std::vector<std::unique_ptr<NodeEntry>> nodes_;
  std::map<std::string, std::size_t, std::less<>> stream_index_;
  std::map<std::string, std::size_t, std::less<>> node_index_;
  Tick tick_ = 0;
  std::optional<std::vector<std::size_t>> schedule_;
};

} // namespace rideflow::fbp
