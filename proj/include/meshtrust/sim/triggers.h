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

#ifndef MESHTRUST_SIM_TRIGGERS_H_
#define MESHTRUST_SIM_TRIGGERS_H_

#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "meshtrust/core/ids.h"
#include "meshtrust/sim/node.h"

namespace meshtrust::sim {

enum class TriggerKind { kUserInstruction, kNoInfrastructure, kPeersInProximity };

const char* trigger_name(TriggerKind kind);

struct TriggerFiring {
  DeviceId device;
  TriggerKind kind;
};

struct TriggerRules {
  // N for PeersInProximity; absent disables the rule.
  std::optional<int> peers_in_proximity_threshold;
  bool no_infrastructure = false;
  std::vector<std::pair<Tick, DeviceId>> user_instructions;
};

// Per-tick inputs the rules are evaluated against, aligned with the node
// vector by index.
struct TriggerObservation {
  std::vector<int> peers_in_range;                // d <= own radio_range
  std::vector<bool> infrastructure_reachable;     // mesh component has internet
};

// Edge-triggered rule evaluation: NoInfrastructure and PeersInProximity
// fire on the tick their condition becomes true (including tick 0), not
// while it holds. UserInstruction fires exactly at its scripted tick.
// Firings are ordered by device id, then by kind.
class TriggerEngine {
 public:
  explicit TriggerEngine(TriggerRules rules) : rules_(std::move(rules)) {}

  std::vector<TriggerFiring> evaluate(std::span<const DeviceNode> nodes,
                                      const TriggerObservation& observation,
                                      Tick now);

 private:
  TriggerRules rules_;
  std::set<DeviceId> no_infrastructure_held_;
  std::set<DeviceId> peers_held_;
};

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_TRIGGERS_H_
