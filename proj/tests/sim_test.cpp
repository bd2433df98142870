// Copyright 2026 The meshtrust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>
#include <vector>

#include <doctest.h>

#include "meshtrust/core/errors.h"
#include "meshtrust/core/rng.h"
#include "meshtrust/sim/contacts.h"
#include "meshtrust/sim/mobility.h"
#include "meshtrust/sim/node.h"
#include "meshtrust/sim/triggers.h"

using namespace meshtrust;
using namespace meshtrust::sim;

namespace {

ActiveContact pair_at(std::uint64_t a, std::uint64_t b, double distance) {
  return {DeviceId{a}, DeviceId{b}, distance};
}

}  // namespace

TEST_CASE("contact episodes open, extend and close with averages") {
  ContactTracker tracker;

  SUBCASE("a ten-tick contact yields one record") {
    for (Tick t = 0; t < 10; ++t) {
      const std::vector<ActiveContact> active{pair_at(1, 2, 3.0)};
      const auto result = tracker.observe(active, t);
      if (t == 0) {
        REQUIRE(result.opened.size() == 1);
        CHECK(result.opened[0] ==
              std::pair<DeviceId, DeviceId>{DeviceId{1}, DeviceId{2}});
      } else {
        CHECK(result.opened.empty());
      }
      CHECK(result.closed.empty());
    }
    const auto result = tracker.observe({}, 10);
    REQUIRE(result.closed.size() == 1);
    const auto& record = result.closed[0];
    CHECK(record.a == DeviceId{1});
    CHECK(record.b == DeviceId{2});
    CHECK(record.start == 0);
    CHECK(record.duration == 10);
    CHECK(record.end() == 9);
    CHECK(record.mean_distance == doctest::Approx(3.0));
    CHECK(record.kind == trust::InteractionKind::kCoPresence);
    CHECK(tracker.open_count() == 0);
  }
  SUBCASE("mean distance averages the per-tick samples") {
    tracker.observe(std::vector<ActiveContact>{pair_at(1, 2, 2.0)}, 0);
    tracker.observe(std::vector<ActiveContact>{pair_at(1, 2, 4.0)}, 1);
    const auto closed = tracker.close_all(2);
    REQUIRE(closed.size() == 1);
    CHECK(closed[0].duration == 2);
    CHECK(closed[0].mean_distance == doctest::Approx(3.0));
  }
  SUBCASE("a single-tick contact has duration one") {
    tracker.observe(std::vector<ActiveContact>{pair_at(1, 2, 5.0)}, 7);
    const auto result = tracker.observe({}, 8);
    REQUIRE(result.closed.size() == 1);
    CHECK(result.closed[0].start == 7);
    CHECK(result.closed[0].duration == 1);
    CHECK(result.closed[0].end() == 7);
  }
  SUBCASE("pairs never in radius produce nothing") {
    for (Tick t = 0; t < 5; ++t) tracker.observe({}, t);
    CHECK(tracker.close_all(5).empty());
    CHECK(tracker.open_count() == 0);
  }
  SUBCASE("a gap splits the episode in two") {
    tracker.observe(std::vector<ActiveContact>{pair_at(1, 2, 1.0)}, 0);
    const auto first = tracker.observe({}, 1);
    REQUIRE(first.closed.size() == 1);
    const auto reopened =
        tracker.observe(std::vector<ActiveContact>{pair_at(1, 2, 1.0)}, 5);
    REQUIRE(reopened.opened.size() == 1);
    const auto closed = tracker.close_all(6);
    REQUIRE(closed.size() == 1);
    CHECK(closed[0].start == 5);
    CHECK(closed[0].duration == 1);
  }
  SUBCASE("close_all flushes several open pairs") {
    tracker.observe(
        std::vector<ActiveContact>{pair_at(1, 2, 1.0), pair_at(3, 4, 2.0)}, 0);
    CHECK(tracker.open_count() == 2);
    const auto closed = tracker.close_all(1);
    CHECK(closed.size() == 2);
    CHECK(tracker.open_count() == 0);
  }
}

TEST_CASE("waypoint movement steps toward the target") {
  Arena arena{100.0, 100.0};

  SUBCASE("unit speed advances one meter along the segment") {
    DeviceNode node;
    node.position = {0.0, 0.0};
    node.mobility.target = {10.0, 0.0};
    node.mobility.speed = 1.0;
    Rng rng(1);
    step_mobility(node, arena, rng);
    CHECK(node.position.x == doctest::Approx(1.0));
    CHECK(node.position.y == doctest::Approx(0.0));
  }
  SUBCASE("stationary nodes stay put and draw nothing") {
    DeviceNode node;
    node.position = {5.0, 5.0};
    node.mobility.target = {50.0, 50.0};
    node.mobility.speed = 0.0;
    Rng rng(2);
    Rng untouched(2);
    step_mobility(node, arena, rng);
    CHECK(node.position.x == 5.0);
    CHECK(node.position.y == 5.0);
    // The generator state is unchanged: next draws match a fresh twin.
    CHECK(rng.next_u64() == untouched.next_u64());
  }
  SUBCASE("arrival snaps to the waypoint and redraws inside the arena") {
    DeviceNode node;
    node.position = {9.5, 0.0};
    node.mobility.target = {10.0, 0.0};
    node.mobility.speed = 2.0;
    Rng rng(3);
    step_mobility(node, arena, rng);
    CHECK(node.position.x == 10.0);
    CHECK(node.position.y == 0.0);
    const bool moved_target = node.mobility.target.x != 10.0 ||
                              node.mobility.target.y != 0.0;
    CHECK(moved_target);
    CHECK(node.mobility.target.x >= 0.0);
    CHECK(node.mobility.target.x <= arena.width);
    CHECK(node.mobility.target.y >= 0.0);
    CHECK(node.mobility.target.y <= arena.height);
  }
  SUBCASE("identical seeds give identical trajectories") {
    DeviceNode a;
    a.position = {0.0, 0.0};
    a.mobility.target = {3.0, 0.0};
    a.mobility.speed = 1.5;
    DeviceNode b = a;
    Rng rng_a(99);
    Rng rng_b(99);
    for (int i = 0; i < 200; ++i) {
      step_mobility(a, arena, rng_a);
      step_mobility(b, arena, rng_b);
      CHECK(a.position.x == b.position.x);
      CHECK(a.position.y == b.position.y);
      CHECK(a.position.x >= 0.0);
      CHECK(a.position.x <= arena.width);
    }
  }
}

TEST_CASE("mobility traces parse and index by tick") {
  SUBCASE("rows group under their tick in input order") {
    std::istringstream in(
        "tick,device_id,x,y\n"
        "# comment rows are skipped\n"
        "0,1,10.0,20.0\n"
        "0,2,30.0,40.0\n"
        "5,1,11.0,21.0\n");
    const auto trace = MobilityTrace::load_csv(in);
    CHECK_FALSE(trace.empty());
    const auto& at0 = trace.at(0);
    REQUIRE(at0.size() == 2);
    CHECK(at0[0].device == DeviceId{1});
    CHECK(at0[0].position.x == 10.0);
    CHECK(at0[1].device == DeviceId{2});
    REQUIRE(trace.at(5).size() == 1);
    CHECK(trace.at(5)[0].position.y == 21.0);
    CHECK(trace.at(3).empty());
  }
  SUBCASE("malformed rows are rejected") {
    std::istringstream in("0,1,10.0\n");
    CHECK_THROWS_AS((void)MobilityTrace::load_csv(in), Error);
  }
  SUBCASE("non-numeric fields are rejected") {
    std::istringstream in("0,one,10.0,20.0\n");
    CHECK_THROWS_AS((void)MobilityTrace::load_csv(in), Error);
  }
}

TEST_CASE("triggers fire on condition edges") {
  std::vector<DeviceNode> nodes(3);
  for (std::uint64_t i = 0; i < 3; ++i) nodes[i].id = DeviceId{i};

  SUBCASE("losing infrastructure fires once per device") {
    TriggerRules rules;
    rules.no_infrastructure = true;
    TriggerEngine engine(rules);
    TriggerObservation obs;
    obs.peers_in_range = {0, 0, 0};
    obs.infrastructure_reachable = {false, false, false};
    const auto firings = engine.evaluate(nodes, obs, 0);
    REQUIRE(firings.size() == 3);
    for (std::uint64_t i = 0; i < 3; ++i) {
      CHECK(firings[i].device == DeviceId{i});
      CHECK(firings[i].kind == TriggerKind::kNoInfrastructure);
    }
    // Still offline next tick: the edge already fired.
    CHECK(engine.evaluate(nodes, obs, 1).empty());
    // Back online, then offline again: a new edge.
    obs.infrastructure_reachable = {true, true, true};
    CHECK(engine.evaluate(nodes, obs, 2).empty());
    obs.infrastructure_reachable = {false, true, true};
    const auto again = engine.evaluate(nodes, obs, 3);
    REQUIRE(again.size() == 1);
    CHECK(again[0].device == DeviceId{0});
  }
  SUBCASE("peer threshold needs at least N peers") {
    TriggerRules rules;
    rules.peers_in_proximity_threshold = 3;
    TriggerEngine engine(rules);
    TriggerObservation obs;
    obs.peers_in_range = {2, 3, 4};
    obs.infrastructure_reachable = {true, true, true};
    const auto firings = engine.evaluate(nodes, obs, 0);
    REQUIRE(firings.size() == 2);
    CHECK(firings[0].device == DeviceId{1});
    CHECK(firings[1].device == DeviceId{2});
    CHECK(firings[0].kind == TriggerKind::kPeersInProximity);
  }
  SUBCASE("scripted instructions fire exactly at their tick") {
    TriggerRules rules;
    rules.user_instructions = {{100, DeviceId{2}}, {100, DeviceId{0}}};
    TriggerEngine engine(rules);
    TriggerObservation obs;
    obs.peers_in_range = {0, 0, 0};
    obs.infrastructure_reachable = {true, true, true};
    CHECK(engine.evaluate(nodes, obs, 99).empty());
    const auto firings = engine.evaluate(nodes, obs, 100);
    REQUIRE(firings.size() == 2);
    CHECK(firings[0].device == DeviceId{0});
    CHECK(firings[1].device == DeviceId{2});
    CHECK(firings[0].kind == TriggerKind::kUserInstruction);
    CHECK(engine.evaluate(nodes, obs, 101).empty());
  }
  SUBCASE("firings order by device then kind") {
    TriggerRules rules;
    rules.no_infrastructure = true;
    rules.peers_in_proximity_threshold = 1;
    TriggerEngine engine(rules);
    TriggerObservation obs;
    obs.peers_in_range = {1, 0, 1};
    obs.infrastructure_reachable = {false, true, false};
    const auto firings = engine.evaluate(nodes, obs, 0);
    REQUIRE(firings.size() == 4);
    CHECK(firings[0].device == DeviceId{0});
    CHECK(firings[1].device == DeviceId{0});
    CHECK(firings[0].kind < firings[1].kind);
    CHECK(firings[2].device == DeviceId{2});
    CHECK(firings[3].device == DeviceId{2});
  }
}

TEST_CASE("trigger names are stable") {
  CHECK(std::string(trigger_name(TriggerKind::kUserInstruction)) ==
        "user_instruction");
  CHECK(std::string(trigger_name(TriggerKind::kNoInfrastructure)) ==
        "no_infrastructure");
  CHECK(std::string(trigger_name(TriggerKind::kPeersInProximity)) ==
        "peers_in_proximity");
}
