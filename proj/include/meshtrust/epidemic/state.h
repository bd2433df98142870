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

#ifndef MESHTRUST_EPIDEMIC_STATE_H_
#define MESHTRUST_EPIDEMIC_STATE_H_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "meshtrust/core/ids.h"

namespace meshtrust::epidemic {

enum class Compartment { kSusceptible, kExposed, kInfectious, kRecovered };

enum class TransmissionMode { kContactBased, kTrustProxy };

// All durations are in simulation ticks (default 60 s each; the day-based
// defaults below assume that tick length).
struct EpidemicParams {
  double beta = 0.05;               // per-tick transmission intensity
  Tick incubation = 4320;           // E -> I, 3 days
  Tick infectious_period = 10080;   // I -> R, 7 days
  TransmissionMode mode = TransmissionMode::kContactBased;
  Tick trace_window = 20160;        // W, 14 days
  double trace_threshold = 0.3;     // tau_trace, minimum qualifying weight
  double adoption_rate = 1.0;
  double theta_individual = 0.7;    // alert tiers; locality < individual
  double theta_locality = 0.3;
  // Lag from infectious onset to case confirmation; tracing windows anchor
  // at onset + confirm_delay. Defaults to the infectious period so the
  // forward window covers the whole infectious span when W allows.
  Tick confirm_delay = 10080;
};

struct NodeHealth {
  Compartment compartment = Compartment::kSusceptible;
  std::optional<Tick> exposed_at;
  std::optional<Tick> infectious_at;
  std::optional<Tick> recovered_at;
  bool adopting = true;
};

// Ground-truth transmission edge, recorded for evaluation only. Tracing
// code never reads the ledger; scoring does.
struct LedgerEntry {
  DeviceId infector;
  DeviceId infectee;
  Tick tick = 0;

  bool operator==(const LedgerEntry&) const = default;
};

struct EpidemicState {
  std::map<DeviceId, NodeHealth> health;
  std::vector<LedgerEntry> infection_ledger;

  // Marks a node infectious at `now` with no ledger parent (outbreak seed).
  void seed_infectious(DeviceId id, Tick now);

  // {S, E, I, R} counts over all tracked nodes.
  std::array<std::size_t, 4> counts() const;

  std::set<DeviceId> adopting_set() const;

  const NodeHealth& at(DeviceId id) const;
};

}  // namespace meshtrust::epidemic

#endif  // MESHTRUST_EPIDEMIC_STATE_H_
