#pragma once

#include "rideflow/fbp/graph.hpp"

#include <string>

namespace rideflow::fbp {

inline std::string dot_quote(const std::string& name) {
  std::string quoted = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string_view dot_fill_color(StreamCategory category) {
  switch (category) {
    case StreamCategory::Input: return "red";
    case StreamCategory::Output: return "green";
    case StreamCategory::Internal: return "yellow";
  }
  return "gray";
}

/// DOT digraph of the dataflow: streams as filled boxes (red input, green
/// output, yellow internal), nodes as ellipses, one edge per consume/produce
/// relation. Vertex ids are the unique stream/node names.
template <typename R>
std::string export_dot(const Graph<R>& graph) {
  std::string dot = "digraph {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < graph.stream_count(); ++i) {
    const auto& descriptor = graph.stream_at(i).descriptor();
    dot += "  " + dot_quote(descriptor.name) + " [shape=box, style=filled, fillcolor=" +
           std::string(dot_fill_color(descriptor.category)) + "];\n";
  }
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    dot += "  " + dot_quote(graph.node_at(i).name) + " [shape=ellipse];\n";
  }
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    const auto& node = graph.node_at(i);
    for (const auto& input : node.inputs) {
      dot += "  " + dot_quote(input) + " -> " + dot_quote(node.name) + ";\n";
    }
    for (const auto& output : node.outputs) {
      dot += "  " + dot_quote(node.name) + " -> " + dot_quote(output) + ";\n";
    }
  }
  dot += "}\n";
  return dot;
}

} // namespace rideflow::fbp
