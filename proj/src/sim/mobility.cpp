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

#include "meshtrust/sim/mobility.h"

#include <cstdlib>
#include <sstream>
#include <string>

#include "meshtrust/core/errors.h"

namespace meshtrust::sim {

void step_mobility(DeviceNode& node, const Arena& arena, Rng& rng) {
  if (node.mobility.speed <= 0.0) return;
  const double dx = node.mobility.target.x - node.position.x;
  const double dy = node.mobility.target.y - node.position.y;
  const double dist = std::hypot(dx, dy);
  if (dist <= node.mobility.speed) {
    node.position = node.mobility.target;
    node.mobility.target.x = rng.uniform(0.0, arena.width);
    node.mobility.target.y = rng.uniform(0.0, arena.height);
    return;
  }
  const double scale = node.mobility.speed / dist;
  node.position.x += dx * scale;
  node.position.y += dy * scale;
}

MobilityTrace MobilityTrace::load_csv(std::istream& in) {
  MobilityTrace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.rfind("tick", 0) == 0) continue;  // header row
    std::istringstream row(line);
    std::string field;
    Tick tick = 0;
    Placement placement;
    try {
      if (!std::getline(row, field, ',')) throw Error("");
      tick = std::stoll(field);
      if (!std::getline(row, field, ',')) throw Error("");
      placement.device = DeviceId{std::stoull(field)};
      if (!std::getline(row, field, ',')) throw Error("");
      placement.position.x = std::stod(field);
      if (!std::getline(row, field, ',')) throw Error("");
      placement.position.y = std::stod(field);
    } catch (const std::exception&) {
      throw Error("mobility trace: malformed row at line " +
                  std::to_string(line_no));
    }
    trace.rows_[tick].push_back(placement);
  }
  return trace;
}

const std::vector<MobilityTrace::Placement>& MobilityTrace::at(
    Tick tick) const {
  static const std::vector<Placement> kEmpty;
  auto it = rows_.find(tick);
  return it == rows_.end() ? kEmpty : it->second;
}

}  // namespace meshtrust::sim
