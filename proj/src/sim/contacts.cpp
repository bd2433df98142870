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

#include "meshtrust/sim/contacts.h"

namespace meshtrust::sim {

ContactRecord ContactTracker::finish(const std::pair<DeviceId, DeviceId>& pair,
                                     const OpenContact& open) const {
  ContactRecord record;
  record.a = pair.first;
  record.b = pair.second;
  record.start = open.start;
  record.duration = open.ticks;
  record.mean_distance = open.distance_sum / static_cast<double>(open.ticks);
  record.kind = trust::InteractionKind::kCoPresence;
  return record;
}

ContactTracker::TickResult ContactTracker::observe(
    std::span<const ActiveContact> active, Tick now) {
  TickResult result;
  for (const auto& contact : active) {
    const std::pair<DeviceId, DeviceId> key{contact.a, contact.b};
    auto [it, inserted] = open_.try_emplace(key, OpenContact{now, 0, 0.0});
    it->second.ticks += 1;
    it->second.distance_sum += contact.distance;
    if (inserted) result.opened.push_back(key);
  }
  // Presence is contiguous (absence closes the episode), so an episode was
  // extended this tick iff start + ticks == now + 1.
  for (auto it = open_.begin(); it != open_.end();) {
    if (it->second.start + it->second.ticks <= now) {
      result.closed.push_back(finish(it->first, it->second));
      it = open_.erase(it);
    } else {
      ++it;
    }
  }
  return result;
}

std::vector<ContactRecord> ContactTracker::close_all(Tick /*now*/) {
  std::vector<ContactRecord> closed;
  closed.reserve(open_.size());
  for (const auto& [pair, open] : open_) closed.push_back(finish(pair, open));
  open_.clear();
  return closed;
}

}  // namespace meshtrust::sim
