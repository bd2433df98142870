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

#include <string>
#include <vector>

#include <doctest.h>

#include "meshtrust/core/errors.h"
#include "meshtrust/core/rng.h"
#include "meshtrust/discovery/discovery.h"
#include "meshtrust/sim/node.h"

using namespace meshtrust;
using namespace meshtrust::discovery;
using meshtrust::sim::DeviceNode;

namespace {

DeviceNode node_at(std::uint64_t id, double x, double y,
                   double range = 10.0) {
  DeviceNode node;
  node.id = DeviceId{id};
  node.position = {x, y};
  node.radio_range = range;
  return node;
}

}  // namespace

TEST_CASE("scan keeps peers inside radio range, ordered by id") {
  trust::TrustStore store;
  DeviceNode scanner = node_at(1, 0, 0, 10.0);
  std::vector<DeviceNode> world;
  world.push_back(scanner);
  world.push_back(node_at(9, 5, 0));
  world.push_back(node_at(2, 0, 3));
  world.push_back(node_at(7, 8, 0));
  world.push_back(node_at(4, 15, 0));  // beyond range

  const auto results = scan(scanner, world, store);
  REQUIRE(results.size() == 3);
  CHECK(results[0].peer == DeviceId{2});
  CHECK(results[1].peer == DeviceId{7});
  CHECK(results[2].peer == DeviceId{9});
  CHECK(results[0].distance == doctest::Approx(3.0));
  CHECK(results[2].distance == doctest::Approx(5.0));
  for (const auto& r : results) {
    CHECK(r.via == DiscoveryVia::kOffline);
    CHECK(r.directly_reachable);
    CHECK_FALSE(r.previously_known);
  }
}

TEST_CASE("scan of an empty world finds nothing") {
  trust::TrustStore store;
  DeviceNode scanner = node_at(1, 0, 0);
  CHECK(scan(scanner, {}, store).empty());
}

TEST_CASE("scan marks peers the store already knows") {
  trust::TrustStore store;
  store.set_score(DeviceId{1}, DeviceId{2}, "health-data", 0.4, 0);
  DeviceNode scanner = node_at(1, 0, 0);
  std::vector<DeviceNode> world{scanner, node_at(2, 1, 0), node_at(3, 2, 0)};
  const auto results = scan(scanner, world, store);
  REQUIRE(results.size() == 2);
  CHECK(results[0].previously_known);       // any profile counts
  CHECK_FALSE(results[1].previously_known);
}

TEST_CASE("scan never returns self or out-of-range peers") {
  trust::TrustStore store;
  Rng rng(55);
  for (int round = 0; round < 200; ++round) {
    std::vector<DeviceNode> world;
    const std::uint64_t n = 1 + rng.uniform_int(12);
    for (std::uint64_t i = 0; i < n; ++i) {
      DeviceNode node = node_at(i, rng.uniform(0.0, 40.0),
                                rng.uniform(0.0, 40.0),
                                rng.uniform(1.0, 20.0));
      world.push_back(node);
    }
    const auto& scanner = world[rng.uniform_int(n)];
    for (const auto& r : scan(scanner, world, store)) {
      CHECK(r.peer != scanner.id);
      CHECK(r.distance <= scanner.radio_range);
    }
  }
}

TEST_CASE("topic filter narrows results to one token") {
  std::vector<DiscoveryResult> results(2);
  results[0].peer = DeviceId{2};
  results[0].matched_topics = {"jazz", "running"};
  results[1].peer = DeviceId{3};
  results[1].matched_topics = {"chess"};

  const auto filtered = topic_filter(results, "jazz");
  REQUIRE(filtered.size() == 1);
  CHECK(filtered[0].peer == DeviceId{2});
  CHECK(filtered[0].matched_topics == std::set<std::string>{"jazz"});

  CHECK(topic_filter(results, "surfing").empty());
}

TEST_CASE("topic filter composes with scan") {
  trust::TrustStore store;
  DeviceNode scanner = node_at(1, 0, 0);
  DeviceNode fan = node_at(2, 1, 0);
  fan.interests = {"jazz"};
  DeviceNode other = node_at(3, 2, 0);
  other.interests = {"chess"};
  std::vector<DeviceNode> world{scanner, fan, other};
  const auto hits = topic_filter(scan(scanner, world, store), "jazz");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].peer == DeviceId{2});
}

TEST_CASE("advertising packets cap topics at sixteen") {
  DeviceNode node = node_at(4, 0, 0);
  for (int i = 0; i < 30; ++i) {
    node.interests.insert("topic_" + std::to_string(100 + i));
  }
  node.has_internet = true;
  const auto packet = make_packet(node);
  CHECK(packet.device == DeviceId{4});
  CHECK(packet.topics.size() == kMaxAdvertisedTopics);
  // Lexicographically first tokens survive.
  CHECK(packet.topics.count("topic_100") == 1);
  CHECK(packet.topics.count("topic_115") == 1);
  CHECK(packet.topics.count("topic_116") == 0);
  CHECK(packet.has_internet);
}

TEST_CASE("registry lookups by zone and topic") {
  Registry registry;
  registry.add_member("downtown", {DeviceId{5}, {"jazz", "food"}});
  registry.add_member("downtown", {DeviceId{3}, {"jazz"}});
  registry.add_member("downtown", {DeviceId{8}, {"chess"}});

  SUBCASE("matches ascend by id") {
    const auto hits = registry.lookup("downtown", "jazz");
    REQUIRE(hits.size() == 2);
    CHECK(hits[0] == DeviceId{3});
    CHECK(hits[1] == DeviceId{5});
  }
  SUBCASE("no interested member yields empty") {
    CHECK(registry.lookup("downtown", "surfing").empty());
  }
  SUBCASE("unknown zone throws") {
    CHECK_THROWS_AS((void)registry.lookup("uptown", "jazz"),
                    UnknownZoneError);
  }
}

TEST_CASE("registry hits render as unmeasured online results") {
  Registry registry;
  registry.add_member("downtown", {DeviceId{5}, {"jazz"}});
  registry.add_member("downtown", {DeviceId{2}, {"jazz"}});
  trust::TrustStore store;
  store.set_score(DeviceId{9}, DeviceId{5}, kDefaultProfile, 0.5, 0);

  const auto results =
      registry_results(registry, "downtown", "jazz", DeviceId{9}, store);
  REQUIRE(results.size() == 2);
  CHECK(results[0].peer == DeviceId{2});
  CHECK(results[1].peer == DeviceId{5});
  for (const auto& r : results) {
    CHECK(r.via == DiscoveryVia::kOnlineRegistry);
    CHECK(r.distance == -1.0);
    CHECK_FALSE(r.directly_reachable);
    CHECK(r.matched_topics == std::set<std::string>{"jazz"});
  }
  CHECK_FALSE(results[0].previously_known);
  CHECK(results[1].previously_known);
}

TEST_CASE("registry results exclude the requester") {
  Registry registry;
  registry.add_member("downtown", {DeviceId{9}, {"jazz"}});
  registry.add_member("downtown", {DeviceId{5}, {"jazz"}});
  trust::TrustStore store;
  const auto results =
      registry_results(registry, "downtown", "jazz", DeviceId{9}, store);
  REQUIRE(results.size() == 1);
  CHECK(results[0].peer == DeviceId{5});
}
