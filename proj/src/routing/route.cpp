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

#include "meshtrust/routing/route.h"

#include <deque>
#include <limits>
#include <map>

namespace meshtrust::routing {

namespace {

// Hop distance from every reachable node to `target` over offline edges.
std::map<DeviceId, int> distances_to(const MeshGraph& graph, DeviceId target) {
  std::map<DeviceId, int> dist;
  dist[target] = 0;
  std::deque<DeviceId> frontier{target};
  while (!frontier.empty()) {
    const DeviceId cur = frontier.front();
    frontier.pop_front();
    const int next = dist[cur] + 1;
    for (DeviceId nbr : graph.neighbors(cur)) {
      if (dist.try_emplace(nbr, next).second) frontier.push_back(nbr);
    }
  }
  return dist;
}

// Lexicographically smallest id sequence among the shortest offline
// paths from `from` to `to`. Greedy descent over distances-to-target:
// taking the smallest admissible id at each step minimizes the sequence.
std::optional<std::vector<DeviceId>> shortest_path(const MeshGraph& graph,
                                                   DeviceId from, DeviceId to) {
  if (from == to) return std::vector<DeviceId>{from};
  const auto dist = distances_to(graph, to);
  auto start = dist.find(from);
  if (start == dist.end()) return std::nullopt;
  std::vector<DeviceId> path{from};
  DeviceId cur = from;
  int remaining = start->second;
  while (cur != to) {
    for (DeviceId nbr : graph.neighbors(cur)) {
      auto it = dist.find(nbr);
      if (it != dist.end() && it->second == remaining - 1) {
        cur = nbr;
        break;
      }
    }
    path.push_back(cur);
    --remaining;
  }
  return path;
}

// Nearest internet-capable node reachable from `from` over offline
// edges, by hop count then smallest id. Includes `from` itself.
std::optional<DeviceId> nearest_gateway(const MeshGraph& graph, DeviceId from) {
  if (graph.is_internet_node(from)) return from;
  const auto dist = distances_to(graph, from);
  int best_dist = std::numeric_limits<int>::max();
  std::optional<DeviceId> best;
  for (DeviceId candidate : graph.internet_nodes()) {
    auto it = dist.find(candidate);
    if (it == dist.end()) continue;
    if (it->second < best_dist ||
        (it->second == best_dist && (!best || candidate < *best))) {
      best_dist = it->second;
      best = candidate;
    }
  }
  return best;
}

}  // namespace

std::optional<Route> find_route(const MeshGraph& graph, DeviceId sender,
                                DeviceId receiver) {
  if (!graph.has_node(sender) || !graph.has_node(receiver)) return std::nullopt;
  if (auto offline = shortest_path(graph, sender, receiver)) {
    return Route{std::move(*offline), SessionKind::kOffline, std::nullopt};
  }
  const auto gw_s = nearest_gateway(graph, sender);
  const auto gw_r = nearest_gateway(graph, receiver);
  if (!gw_s || !gw_r) return std::nullopt;
  auto head = shortest_path(graph, sender, *gw_s);
  auto tail = shortest_path(graph, *gw_r, receiver);
  Route route;
  route.kind = SessionKind::kHybrid;
  route.bridge_index = head->size() - 1;
  route.hops = std::move(*head);
  route.hops.insert(route.hops.end(), tail->begin(), tail->end());
  return route;
}

Route make_online_proximity_route(DeviceId sender, DeviceId receiver) {
  return Route{{sender, receiver}, SessionKind::kOnlineProximity, 0};
}

std::optional<SessionKind> classify_session(const MeshGraph& graph,
                                            DeviceId sender, DeviceId receiver,
                                            bool both_in_proximity,
                                            RoutePolicy policy) {
  const bool both_online = graph.is_internet_node(sender) &&
                           graph.is_internet_node(receiver);
  if (both_online && both_in_proximity && policy == RoutePolicy::kPreferInternet) {
    return SessionKind::kOnlineProximity;
  }
  const auto route = find_route(graph, sender, receiver);
  if (!route) return std::nullopt;
  return route->kind;
}

DeliveryRecord relay(const MeshGraph& graph, const Route& route,
                     const messaging::SlowRevealEnvelope& envelope) {
  DeliveryRecord record;
  record.delivered = envelope;
  for (std::size_t i = 0; i + 1 < route.hops.size(); ++i) {
    const DeviceId from = route.hops[i];
    const DeviceId to = route.hops[i + 1];
    const bool bridge = route.bridge_index && *route.bridge_index == i;
    const bool alive = bridge ? graph.is_internet_node(from) &&
                                    graph.is_internet_node(to)
                              : graph.has_edge(from, to);
    if (!alive) {
      record.status = DeliveryStatus::kLinkDown;
      record.failed_at = from;
      return record;
    }
    if (i + 2 < route.hops.size()) {
      record.relay_hops.push_back(RelayHop{to, i + 1});
    }
  }
  record.status = DeliveryStatus::kDelivered;
  return record;
}

}  // namespace meshtrust::routing
