#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace rideflow::fbp {

using Tick = std::uint64_t;

/// Where a stream sits relative to the application boundary.
enum class StreamCategory { Input, Internal, Output };

inline std::string_view to_string(StreamCategory category) {
  switch (category) {
    case StreamCategory::Input: return "input";
    case StreamCategory::Internal: return "internal";
    case StreamCategory::Output: return "output";
  }
  return "?";
}

struct StreamDescriptor {
  std::string name;
  StreamCategory category;
  /// Opaque tag naming the record type carried by the stream. Checked by
  /// humans and builders, never per record at runtime.
  std::string record_kind;
};

template <typename R>
struct Stamped {
  Tick tick;
  R value;

  friend bool operator==(const Stamped&, const Stamped&) = default;
};

/// Append-only log of records of one kind. Only the owning Graph appends;
/// everyone else gets read access.
template <typename R>
class StreamLog {
public:
  explicit StreamLog(StreamDescriptor descriptor) : descriptor_(std::move(descriptor)) {}

  const StreamDescriptor& descriptor() const { return descriptor_; }
  const std::string& name() const { return descriptor_.name; }
  StreamCategory category() const { return descriptor_.category; }

  std::span<const Stamped<R>> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

private:
  template <typename>
  friend class Graph;

  void append(Tick tick, R value) { records_.push_back(Stamped<R>{tick, std::move(value)}); }

  StreamDescriptor descriptor_;
  std::vector<Stamped<R>> records_;
};

/// Most recent record per key over a record sequence. Gives stateless nodes a
/// "current state" read over accumulated stream history.
template <typename R, typename KeyFn>
auto latest_by_key(std::span<const Stamped<R>> records, KeyFn&& key)
    -> std::map<std::remove_cvref_t<std::invoke_result_t<KeyFn&, const R&>>, R> {
  std::map<std::remove_cvref_t<std::invoke_result_t<KeyFn&, const R&>>, R> latest;
  for (const auto& record : records) {
    latest.insert_or_assign(key(record.value), record.value);
  }
  return latest;
}

template <typename R, typename KeyFn>
auto latest_by_key(const StreamLog<R>& log, KeyFn&& key) {
  return latest_by_key(log.records(), std::forward<KeyFn>(key));
}

} // namespace rideflow::fbp
