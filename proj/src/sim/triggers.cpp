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

#include "meshtrust/sim/triggers.h"

#include <algorithm>

namespace meshtrust::sim {

const char* trigger_name(TriggerKind kind) {
  switch (kind) {
    case TriggerKind::kUserInstruction:
      return "user_instruction";
    case TriggerKind::kNoInfrastructure:
      return "no_infrastructure";
    case TriggerKind::kPeersInProximity:
      return "peers_in_proximity";
  }
  return "unknown";
}

std::vector<TriggerFiring> TriggerEngine::evaluate(
    std::span<const DeviceNode> nodes, const TriggerObservation& observation,
    Tick now) {
  std::vector<TriggerFiring> firings;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const DeviceId id = nodes[i].id;

    const bool instructed = std::any_of(
        rules_.user_instructions.begin(), rules_.user_instructions.end(),
        [&](const auto& rule) { return rule.first == now && rule.second == id; });
    if (instructed) firings.push_back({id, TriggerKind::kUserInstruction});

    if (rules_.no_infrastructure) {
      const bool condition = !observation.infrastructure_reachable[i];
      const bool held = no_infrastructure_held_.contains(id);
      if (condition && !held) {
        firings.push_back({id, TriggerKind::kNoInfrastructure});
        no_infrastructure_held_.insert(id);
      } else if (!condition && held) {
        no_infrastructure_held_.erase(id);
      }
    }

    if (rules_.peers_in_proximity_threshold) {
      const bool condition =
          observation.peers_in_range[i] >= *rules_.peers_in_proximity_threshold;
      const bool held = peers_held_.contains(id);
      if (condition && !held) {
        firings.push_back({id, TriggerKind::kPeersInProximity});
        peers_held_.insert(id);
      } else if (!condition && held) {
        peers_held_.erase(id);
      }
    }
  }
  return firings;
}

}  // namespace meshtrust::sim
