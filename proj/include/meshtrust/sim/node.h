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

#ifndef MESHTRUST_SIM_NODE_H_
#define MESHTRUST_SIM_NODE_H_

#include <cmath>
#include <set>
#include <string>

#include "meshtrust/core/ids.h"

namespace meshtrust::sim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_m(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Random-waypoint movement state. speed 0 means stationary.
struct Mobility {
  Position target;
  double speed = 0.0;  // meters per tick
};

// A simulated device.
struct DeviceNode {
  DeviceId id;
  Position position;
  double radio_range = 10.0;  // meters
  bool has_internet = false;
  bool airplane_mode = false;
  std::set<std::string> interests;
  std::set<std::string> apps;
  Mobility mobility;

  // Internet access as seen by session classification and backhaul
  // selection; airplane mode masks the capability.
  bool internet_reachable() const { return has_internet && !airplane_mode; }
};

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_NODE_H_
