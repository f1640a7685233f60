#include "rideflow/fbp/graph.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace rideflow;

namespace {

// Minimal record for engine-only tests.
using Rec = int;
using Graph = fbp::Graph<Rec>;

fbp::Emissions<Rec> identity(const fbp::NodeInput<Rec>& in, const std::string& input_stream) {
  fbp::Emissions<Rec> out(1);
  for (const auto& r : in.new_records(input_stream)) out[0].push_back(r.value);
  return out;
}

bool has_violation(const std::vector<fbp::Violation>& violations, fbp::ViolationKind kind) {
  for (const auto& v : violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

} // namespace

TEST_SUITE_BEGIN("fbp");

TEST_CASE("add_stream registers an empty stream") {
  Graph g;
  const auto& stream = g.add_stream("RideRequestStream", fbp::StreamCategory::Input, "RideRequest");
  CHECK(g.stream_count() == 1);
  CHECK(stream.empty());
  CHECK(stream.category() == fbp::StreamCategory::Input);
  CHECK(stream.descriptor().record_kind == "RideRequest");
}

TEST_CASE("add_stream rejects duplicate names") {
  Graph g;
  g.add_stream("RideRequestStream", fbp::StreamCategory::Input, "RideRequest");
  CHECK_THROWS_AS(g.add_stream("RideRequestStream", fbp::StreamCategory::Input, "RideRequest"),
                  fbp::DuplicateNameError);
}

TEST_CASE("internal stream without producer fails validation naming the stream") {
  Graph g;
  g.add_stream("DriverInformationStream", fbp::StreamCategory::Internal, "DriverInformation");
  g.add_stream("Out", fbp::StreamCategory::Output, "X");
  g.add_node("n", {"DriverInformationStream"}, {"Out"},
             [](const fbp::NodeInput<Rec>&) { return fbp::Emissions<Rec>(1); });
  const auto violations = g.validate();
  REQUIRE(!violations.empty());
  CHECK(has_violation(violations, fbp::ViolationKind::InternalStreamWithoutProducer));
  bool names_stream = false;
  for (const auto& v : violations) {
    for (const auto& member : v.members) {
      names_stream |= member == "DriverInformationStream";
    }
  }
  CHECK(names_stream);
}

TEST_CASE("add_node records consume/produce edges") {
  Graph g;
  g.add_stream("A", fbp::StreamCategory::Input, "X");
  g.add_stream("B", fbp::StreamCategory::Output, "X");
  const auto& node = g.add_node("n", {"A"}, {"B"},
                                [](const fbp::NodeInput<Rec>& in) { return identity(in, "A"); });
  CHECK(node.inputs == std::vector<std::string>{"A"});
  CHECK(node.outputs == std::vector<std::string>{"B"});
  CHECK(g.node_count() == 1);
  CHECK(g.validate().empty());
}

TEST_CASE("add_node rejects unknown streams and duplicate names") {
  Graph g;
  g.add_stream("A", fbp::StreamCategory::Input, "X");
  g.add_stream("B", fbp::StreamCategory::Output, "X");
  CHECK_THROWS_AS(g.add_node("n", {"X"}, {"B"}, {}), fbp::UnknownStreamError);
  g.add_node("n", {"A"}, {"B"}, [](const fbp::NodeInput<Rec>& in) { return identity(in, "A"); });
  CHECK_THROWS_AS(g.add_node("n", {"A"}, {"B"}, {}), fbp::DuplicateNameError);
}

TEST_CASE("node writing to an input-category stream is a validation error") {
  Graph g;
  g.add_stream("A", fbp::StreamCategory::Input, "X");
  g.add_stream("B", fbp::StreamCategory::Input, "X");
  g.add_node("n", {"A"}, {"B"}, [](const fbp::NodeInput<Rec>&) { return fbp::Emissions<Rec>(1); });
  CHECK(has_violation(g.validate(), fbp::ViolationKind::InputStreamHasProducer));
}

TEST_CASE("output stream with a consumer is a validation error") {
  Graph g;
  g.add_stream("A", fbp::StreamCategory::Input, "X");
  g.add_stream("B", fbp::StreamCategory::Output, "X");
  g.add_stream("C", fbp::StreamCategory::Output, "X");
  g.add_node("n", {"B"}, {"C"}, [](const fbp::NodeInput<Rec>&) { return fbp::Emissions<Rec>(1); });
  CHECK(has_violation(g.validate(), fbp::ViolationKind::OutputStreamHasConsumer));
}

TEST_CASE("two nodes forming a cycle are reported with the cycle members") {
  Graph g;
  g.add_stream("I1", fbp::StreamCategory::Internal, "X");
  g.add_stream("I2", fbp::StreamCategory::Internal, "X");
  g.add_node("n1", {"I1"}, {"I2"}, [](const fbp::NodeInput<Rec>&) { return fbp::Emissions<Rec>(1); });
  g.add_node("n2", {"I2"}, {"I1"}, [](const fbp::NodeInput<Rec>&) { return fbp::Emissions<Rec>(1); });
  const auto violations = g.validate();
  REQUIRE(has_violation(violations, fbp::ViolationKind::Cycle));
  for (const auto& v : violations) {
    if (v.kind != fbp::ViolationKind::Cycle) continue;
    CHECK(v.members.size() == 4); // n1 -> I2 -> n2 -> I1 -> back
    bool n1 = false;
    bool n2 = false;
    for (const auto& member : v.members) {
      n1 |= member == "n1";
      n2 |= member == "n2";
    }
    CHECK(n1);
    CHECK(n2);
  }
}

TEST_CASE("find_stream returns a handle or null") {
  Graph g;
  CHECK(g.find_stream("nope") == nullptr);
  g.add_stream("A", fbp::StreamCategory::Input, "X");
  const auto* handle = g.find_stream("A");
  REQUIRE(handle != nullptr);
  CHECK(handle->name() == "A");
  CHECK(g.find_stream("nope") == nullptr);
}

TEST_CASE("taps observe appends in order, from attachment time on") {
  Graph g;
  g.add_stream("A", fbp::StreamCategory::Input, "X");
  g.add_stream("B", fbp::StreamCategory::Output, "X");
  g.add_node("n", {"A"}, {"B"}, [](const fbp::NodeInput<Rec>& in) { return identity(in, "A"); });

  CHECK_THROWS_AS(g.attach_tap("nope", [](const fbp::Stamped<Rec>&) {}), fbp::UnknownStreamError);

  // five records before attachment are not replayed
  g.execute_tick({{"A", {1, 2, 3, 4, 5}}});

  std::vector<Rec> seen_a;
  std::vector<Rec> seen_a2;
  g.attach_tap("A", [&](const fbp::Stamped<Rec>& r) { seen_a.push_back(r.value); });
  g.attach_tap("A", [&](const fbp::Stamped<Rec>& r) { seen_a2.push_back(r.value); });
  g.execute_tick({{"A", {6, 7, 8}}});

  CHECK(seen_a == std::vector<Rec>{6, 7, 8});
  CHECK(seen_a2 == seen_a); // both taps fire
}

TEST_CASE("latest_by_key keeps the most recent record per key") {
  Graph g;
  const auto& log = g.add_stream("L", fbp::StreamCategory::Input, "X");

  SUBCASE("empty log") { CHECK(fbp::latest_by_key(log, [](const Rec& r) { return r; }).empty()); }

  SUBCASE("last write wins") {
    // key = value % 10, so 21 supersedes 11
    g.execute_tick({{"L", {11, 32, 21}}});
    const auto latest = fbp::latest_by_key(log, [](const Rec& r) { return r % 10; });
    REQUIRE(latest.size() == 2);
    CHECK(latest.at(1) == 21);
    CHECK(latest.at(2) == 32);
  }

  SUBCASE("1000 random updates match a brute-force last-write scan") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> key(0, 9);
    std::uniform_int_distribution<int> payload(0, 999);
    std::vector<Rec> records;
    for (int i = 0; i < 1000; ++i) records.push_back(key(rng) * 1000 + payload(rng));
    g.execute_tick({{"L", records}});

    auto key_of = [](const Rec& r) { return r / 1000; };
    const auto latest = fbp::latest_by_key(log, key_of);

    // oracle: scan the raw sequence backwards per key
    for (int k = 0; k <= 9; ++k) {
      Rec expected = -1;
      for (auto it = records.rbegin(); it != records.rend(); ++it) {
        if (key_of(*it) == k) {
          expected = *it;
          break;
        }
      }
      if (expected == -1) {
        CHECK(!latest.contains(k));
      } else {
        CHECK(latest.at(k) == expected);
      }
    }
  }
}

TEST_SUITE_END();
