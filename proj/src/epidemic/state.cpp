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

#include "meshtrust/epidemic/state.h"

#include "meshtrust/core/errors.h"

namespace meshtrust::epidemic {

void EpidemicState::seed_infectious(DeviceId id, Tick now) {
  auto& node = health[id];
  node.compartment = Compartment::kInfectious;
  node.infectious_at = now;
}

std::array<std::size_t, 4> EpidemicState::counts() const {
  std::array<std::size_t, 4> out{0, 0, 0, 0};
  for (const auto& [id, node] : health) {
    out[static_cast<std::size_t>(node.compartment)] += 1;
  }
  return out;
}

std::set<DeviceId> EpidemicState::adopting_set() const {
  std::set<DeviceId> out;
  for (const auto& [id, node] : health) {
    if (node.adopting) out.insert(id);
  }
  return out;
}

const NodeHealth& EpidemicState::at(DeviceId id) const {
  auto it = health.find(id);
  if (it == health.end()) {
    throw UnknownDeviceError("no epidemic state for device " +
                             std::to_string(id.value));
  }
  return it->second;
}

}  // namespace meshtrust::epidemic
