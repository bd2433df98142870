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

#ifndef MESHTRUST_SIM_CONTACTS_H_
#define MESHTRUST_SIM_CONTACTS_H_

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "meshtrust/core/ids.h"
#include "meshtrust/trust/model.h"

namespace meshtrust::sim {

// A completed proximity episode between two devices. Canonical ordering
// a < b; duration counts the ticks the pair spent inside the contact
// radius; mean_distance averages the per-tick distances over those ticks.
struct ContactRecord {
  DeviceId a;
  DeviceId b;
  Tick start = 0;
  Tick duration = 0;
  double mean_distance = 0.0;
  trust::InteractionKind kind = trust::InteractionKind::kCoPresence;

  bool involves(DeviceId id) const { return a == id || b == id; }
  DeviceId other(DeviceId id) const { return a == id ? b : a; }
  Tick end() const { return start + duration - 1; }
};

// A pair currently inside the contact radius, with this tick's distance.
struct ActiveContact {
  DeviceId a;
  DeviceId b;
  double distance = 0.0;
};

// Tracks open proximity episodes across ticks. Feed the full in-range
// pair list once per tick; pairs that drop out close and emit a record.
class ContactTracker {
 public:
  struct TickResult {
    std::vector<std::pair<DeviceId, DeviceId>> opened;
    std::vector<ContactRecord> closed;
  };

  // `active` must be canonically ordered (a < b) and duplicate-free.
  TickResult observe(std::span<const ActiveContact> active, Tick now);

  // Closes every remaining episode as of `now` (end-of-run flush).
  std::vector<ContactRecord> close_all(Tick now);

  std::size_t open_count() const { return open_.size(); }

 private:
  struct OpenContact {
    Tick start = 0;
    Tick ticks = 0;
    double distance_sum = 0.0;
  };

  ContactRecord finish(const std::pair<DeviceId, DeviceId>& pair,
                       const OpenContact& open) const;

  std::map<std::pair<DeviceId, DeviceId>, OpenContact> open_;
};

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_CONTACTS_H_
