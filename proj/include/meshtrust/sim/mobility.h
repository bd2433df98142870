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

#ifndef MESHTRUST_SIM_MOBILITY_H_
#define MESHTRUST_SIM_MOBILITY_H_

#include <istream>
#include <map>
#include <vector>

#include "meshtrust/core/rng.h"
#include "meshtrust/sim/node.h"

namespace meshtrust::sim {

struct Arena {
  double width = 0.0;
  double height = 0.0;
};

// Random-waypoint step: advance toward the waypoint by speed meters; on
// arrival snap to it and draw the next waypoint uniformly from the arena
// (x then y). speed <= 0 leaves the node untouched and draws nothing.
void step_mobility(DeviceNode& node, const Arena& arena, Rng& rng);

// Scripted positions, CSV rows `tick,device_id,x,y`. Devices and ticks
// not listed keep their waypoint behavior.
class MobilityTrace {
 public:
  struct Placement {
    DeviceId device;
    Position position;
  };

  // Throws Error on malformed rows. Lines starting with '#' and the
  // optional header row are skipped.
  static MobilityTrace load_csv(std::istream& in);

  // Placements for one tick, in input order; empty when none.
  const std::vector<Placement>& at(Tick tick) const;

  bool empty() const { return rows_.empty(); }

 private:
  std::map<Tick, std::vector<Placement>> rows_;
};

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_MOBILITY_H_
