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

#ifndef MESHTRUST_ROUTING_ROUTE_H_
#define MESHTRUST_ROUTING_ROUTE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "meshtrust/core/ids.h"
#include "meshtrust/messaging/envelope.h"
#include "meshtrust/routing/mesh.h"

namespace meshtrust::routing {

enum class SessionKind { kOffline, kOnlineProximity, kHybrid };

enum class RoutePolicy { kPreferInternet, kPreferOffline };

// A delivery path. hops[0] is the sender, hops.back() the receiver, and
// every hop id is distinct. bridge_index, when present, names the hop
// index i such that the (hops[i], hops[i+1]) leg traverses the internet
// instead of an offline edge; it is present iff kind is not kOffline.
struct Route {
  std::vector<DeviceId> hops;
  SessionKind kind = SessionKind::kOffline;
  std::optional<std::size_t> bridge_index;

  std::size_t intermediate_count() const {
    return hops.size() >= 2 ? hops.size() - 2 : 0;
  }
};

// Finds the best path from sender to receiver, or nullopt when none
// exists. Offline paths win over hybrid ones. Among offline candidates
// the shortest hop count wins, ties broken by the lexicographically
// smallest id sequence. A hybrid route runs sender -> nearest offline
// gateway -> internet -> gateway nearest receiver -> receiver, with
// gateway ties broken by smallest gateway id; it exists only when both
// sides can reach some internet-capable node (possibly themselves).
std::optional<Route> find_route(const MeshGraph& graph, DeviceId sender,
                                DeviceId receiver);

// Route used when a session is classified kOnlineProximity: the two
// endpoints exchange directly over the internet while co-located.
Route make_online_proximity_route(DeviceId sender, DeviceId receiver);

// Picks the session kind for a pair with at least one route between
// them. kOnlineProximity requires both endpoints internet-capable,
// physical proximity, and a policy that prefers internet transport.
// Returns nullopt when no route exists.
std::optional<SessionKind> classify_session(const MeshGraph& graph,
                                            DeviceId sender, DeviceId receiver,
                                            bool both_in_proximity,
                                            RoutePolicy policy);

enum class DeliveryStatus { kDelivered, kLinkDown };

// One forwarding step taken during relay. Relay nodes observe envelope
// metadata only; payload bytes pass through untouched.
struct RelayHop {
  DeviceId node;
  std::size_t hop_index = 0;
};

struct DeliveryRecord {
  DeliveryStatus status = DeliveryStatus::kDelivered;
  std::vector<RelayHop> relay_hops;          // intermediate nodes, in order
  std::optional<DeviceId> failed_at;         // first hop whose link was down
  messaging::SlowRevealEnvelope delivered;   // byte-identical to the input
};

// Walks the route over the current graph, revalidating each leg: offline
// legs need a live offline edge, the bridge leg needs both ends
// internet-capable now. Stops at the first dead leg with kLinkDown.
DeliveryRecord relay(const MeshGraph& graph, const Route& route,
                     const messaging::SlowRevealEnvelope& envelope);

}  // namespace meshtrust::routing

#endif  // MESHTRUST_ROUTING_ROUTE_H_
