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

#ifndef MESHTRUST_CORE_IDS_H_
#define MESHTRUST_CORE_IDS_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace meshtrust {

// Simulation time in ticks. One tick sequences one full pass of the
// simulation phases; the scenario config fixes the tick length in seconds.
using Tick = std::int64_t;

// Opaque identifier of a simulated device, unique and stable for a run.
struct DeviceId {
  std::uint64_t value = 0;

  constexpr auto operator<=>(const DeviceId&) const = default;
};

// Trust scores are keyed by context profile; "default" always exists.
using ProfileKey = std::string;

inline const ProfileKey kDefaultProfile = "default";

}  // namespace meshtrust

template <>
struct std::hash<meshtrust::DeviceId> {
  std::size_t operator()(const meshtrust::DeviceId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

#endif  // MESHTRUST_CORE_IDS_H_
