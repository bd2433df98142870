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

#ifndef MESHTRUST_DISCOVERY_DISCOVERY_H_
#define MESHTRUST_DISCOVERY_DISCOVERY_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "meshtrust/core/ids.h"
#include "meshtrust/sim/node.h"
#include "meshtrust/trust/store.h"

namespace meshtrust::discovery {

// Payload a device broadcasts while discoverable. Topics are capped at 16
// tokens (packet budget); the builder keeps the lexicographically first.
struct AdvertisingPacket {
  DeviceId device;
  std::set<std::string> topics;
  bool accepts_relay = true;
  bool has_internet = false;
};

inline constexpr std::size_t kMaxAdvertisedTopics = 16;

AdvertisingPacket make_packet(const sim::DeviceNode& node);

enum class DiscoveryVia { kOffline, kOnlineRegistry };

struct DiscoveryResult {
  DeviceId peer;
  double distance = 0.0;  // meters; -1 for registry hits (not measured)
  DiscoveryVia via = DiscoveryVia::kOffline;
  std::set<std::string> matched_topics;
  bool previously_known = false;
  bool directly_reachable = false;
};

// Range-limited scan: one result per world node within the scanner's radio
// range (Euclidean), excluding the scanner itself, ordered by peer id.
// previously_known reflects whether the scanner's trust store holds any
// entry for the peer; matched_topics carries the peer's full advertised
// topic set (no filter applied).
std::vector<DiscoveryResult> scan(const sim::DeviceNode& scanner,
                                  std::span<const sim::DeviceNode> world,
                                  const trust::TrustStore& store);

// Keeps results whose matched_topics contain the token and narrows
// matched_topics to it.
std::vector<DiscoveryResult> topic_filter(
    const std::vector<DiscoveryResult>& results, const std::string& topic);

// In-memory stand-in for the online social-network lookup: zones map to
// members with registered interests.
class Registry {
 public:
  struct Member {
    DeviceId id;
    std::set<std::string> interests;
  };

  void add_member(const std::string& zone, Member member);
  bool has_zone(const std::string& zone) const;

  // Members of the zone interested in the topic, ascending id.
  // Throws UnknownZoneError when the zone is absent.
  std::vector<DeviceId> lookup(const std::string& zone,
                               const std::string& topic) const;

  const std::map<std::string, std::vector<Member>>& zones() const {
    return zones_;
  }

 private:
  std::map<std::string, std::vector<Member>> zones_;
};

// Registry hits rendered as discovery results (via=OnlineRegistry,
// distance unmeasured, not directly reachable).
std::vector<DiscoveryResult> registry_results(const Registry& registry,
                                              const std::string& zone,
                                              const std::string& topic,
                                              DeviceId self,
                                              const trust::TrustStore& store);

}  // namespace meshtrust::discovery

#endif  // MESHTRUST_DISCOVERY_DISCOVERY_H_
