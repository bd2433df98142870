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

#include "meshtrust/routing/mesh.h"

#include <algorithm>

#include "meshtrust/core/errors.h"

namespace meshtrust::routing {

namespace {

void insert_sorted(std::vector<DeviceId>& list, DeviceId id) {
  auto it = std::lower_bound(list.begin(), list.end(), id);
  if (it == list.end() || *it != id) list.insert(it, id);
}

void erase_sorted(std::vector<DeviceId>& list, DeviceId id) {
  auto it = std::lower_bound(list.begin(), list.end(), id);
  if (it != list.end() && *it == id) list.erase(it);
}

}  // namespace

void MeshGraph::add_node(DeviceId id, bool internet) {
  adjacency_.try_emplace(id);
  if (internet) internet_.insert(id);
}

void MeshGraph::add_edge(DeviceId a, DeviceId b) {
  if (a == b) return;
  insert_sorted(adjacency_[a], b);
  insert_sorted(adjacency_[b], a);
}

void MeshGraph::remove_edge(DeviceId a, DeviceId b) {
  auto ia = adjacency_.find(a);
  auto ib = adjacency_.find(b);
  if (ia != adjacency_.end()) erase_sorted(ia->second, b);
  if (ib != adjacency_.end()) erase_sorted(ib->second, a);
}

bool MeshGraph::has_edge(DeviceId a, DeviceId b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), b);
}

const std::vector<DeviceId>& MeshGraph::neighbors(DeviceId id) const {
  static const std::vector<DeviceId> kEmpty;
  auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kEmpty : it->second;
}

std::vector<DeviceId> MeshGraph::node_ids() const {
  std::vector<DeviceId> ids;
  ids.reserve(adjacency_.size());
  for (const auto& [id, unused] : adjacency_) ids.push_back(id);
  return ids;
}

std::size_t MeshGraph::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& [id, nbrs] : adjacency_) degree_sum += nbrs.size();
  return degree_sum / 2;
}

MeshGraph build_mesh(std::span<const sim::DeviceNode> nodes) {
  MeshGraph graph;
  for (const auto& node : nodes) {
    if (graph.has_node(node.id)) {
      throw DuplicateDeviceIdError("duplicate device id " +
                                   std::to_string(node.id.value));
    }
    graph.add_node(node.id, node.internet_reachable());
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double d = sim::distance_m(nodes[i].position, nodes[j].position);
      const double reach = std::min(nodes[i].radio_range, nodes[j].radio_range);
      if (d <= reach) graph.add_edge(nodes[i].id, nodes[j].id);
    }
  }
  return graph;
}

}  // namespace meshtrust::routing
