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

#include "meshtrust/discovery/discovery.h"

#include <algorithm>

#include "meshtrust/core/errors.h"

namespace meshtrust::discovery {

AdvertisingPacket make_packet(const sim::DeviceNode& node) {
  AdvertisingPacket packet;
  packet.device = node.id;
  packet.has_internet = node.internet_reachable();
  for (const auto& topic : node.interests) {
    if (packet.topics.size() >= kMaxAdvertisedTopics) {
      break;
    }
    packet.topics.insert(topic);
  }
  return packet;
}

std::vector<DiscoveryResult> scan(const sim::DeviceNode& scanner,
                                  std::span<const sim::DeviceNode> world,
                                  const trust::TrustStore& store) {
  std::vector<DiscoveryResult> results;
  for (const auto& node : world) {
    if (node.id == scanner.id) {
      continue;
    }
    const double d = sim::distance_m(scanner.position, node.position);
    if (d > scanner.radio_range) {
      continue;
    }
    DiscoveryResult result;
    result.peer = node.id;
    result.distance = d;
    result.via = DiscoveryVia::kOffline;
    result.matched_topics = make_packet(node).topics;
    result.previously_known = store.knows(scanner.id, node.id);
    result.directly_reachable = true;
    results.push_back(std::move(result));
  }
  std::sort(results.begin(), results.end(),
            [](const DiscoveryResult& a, const DiscoveryResult& b) {
              return a.peer < b.peer;
            });
  return results;
}

std::vector<DiscoveryResult> topic_filter(
    const std::vector<DiscoveryResult>& results, const std::string& topic) {
  std::vector<DiscoveryResult> kept;
  for (const auto& result : results) {
    if (result.matched_topics.contains(topic)) {
      DiscoveryResult narrowed = result;
      narrowed.matched_topics = {topic};
      kept.push_back(std::move(narrowed));
    }
  }
  return kept;
}

void Registry::add_member(const std::string& zone, Member member) {
  zones_[zone].push_back(std::move(member));
}

bool Registry::has_zone(const std::string& zone) const {
  return zones_.contains(zone);
}

std::vector<DeviceId> Registry::lookup(const std::string& zone,
                                       const std::string& topic) const {
  auto it = zones_.find(zone);
  if (it == zones_.end()) {
    throw UnknownZoneError("unknown registry zone: " + zone);
  }
  std::vector<DeviceId> members;
  for (const auto& member : it->second) {
    if (member.interests.contains(topic)) {
      members.push_back(member.id);
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

std::vector<DiscoveryResult> registry_results(const Registry& registry,
                                              const std::string& zone,
                                              const std::string& topic,
                                              DeviceId self,
                                              const trust::TrustStore& store) {
  std::vector<DiscoveryResult> results;
  for (const DeviceId peer : registry.lookup(zone, topic)) {
    if (peer == self) {
      continue;
    }
    DiscoveryResult result;
    result.peer = peer;
    result.distance = -1.0;
    result.via = DiscoveryVia::kOnlineRegistry;
    result.matched_topics = {topic};
    result.previously_known = store.knows(self, peer);
    result.directly_reachable = false;
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace meshtrust::discovery

