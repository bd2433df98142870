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

#ifndef MESHTRUST_ROUTING_MESH_H_
#define MESHTRUST_ROUTING_MESH_H_

#include <map>
#include <set>
#include <span>
#include <vector>

#include "meshtrust/core/ids.h"
#include "meshtrust/sim/node.h"

namespace meshtrust::routing {

// Snapshot of mesh connectivity. An offline edge (a,b) exists iff the
// Euclidean distance is within min(range_a, range_b), so edges are
// undirected even with asymmetric radios. internet_nodes are the nodes
// whose internet access is effective (airplane mode masks it).
class MeshGraph {
 public:
  void add_node(DeviceId id, bool internet);
  void add_edge(DeviceId a, DeviceId b);
  void remove_edge(DeviceId a, DeviceId b);

  bool has_node(DeviceId id) const { return adjacency_.contains(id); }
  bool has_edge(DeviceId a, DeviceId b) const;
  bool is_internet_node(DeviceId id) const { return internet_.contains(id); }

  // Neighbors in ascending id order.
  const std::vector<DeviceId>& neighbors(DeviceId id) const;

  const std::set<DeviceId>& internet_nodes() const { return internet_; }
  std::vector<DeviceId> node_ids() const;  // ascending
  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;

 private:
  std::map<DeviceId, std::vector<DeviceId>> adjacency_;
  std::set<DeviceId> internet_;
};

// Builds the connectivity graph from node positions and radio ranges.
// Throws DuplicateDeviceIdError on repeated ids.
MeshGraph build_mesh(std::span<const sim::DeviceNode> nodes);

}  // namespace meshtrust::routing

#endif  // MESHTRUST_ROUTING_MESH_H_
