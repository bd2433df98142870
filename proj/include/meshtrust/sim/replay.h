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

#ifndef MESHTRUST_SIM_REPLAY_H_
#define MESHTRUST_SIM_REPLAY_H_

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "meshtrust/epidemic/tracing.h"
#include "meshtrust/sim/config.h"
#include "meshtrust/sim/contacts.h"
#include "meshtrust/trust/store.h"

namespace meshtrust::sim {

// Everything tracing analysis needs, reconstructed purely from an event
// log: the contact history, trust state (scores and their update times
// rebuilt from trust_update events), adoption flags, confirmed onsets and
// the ground-truth ledger (for scoring only). Analysis over a ReplayedRun
// matches the in-run analysis exactly.
struct ReplayedRun {
  SimConfig config;            // re-parsed from the embedded header config
  Tick end_tick = 0;
  std::set<DeviceId> devices;
  std::vector<ContactRecord> contacts;
  trust::TrustStore store;
  std::set<DeviceId> adopting;
  epidemic::OnsetMap onsets;
  std::vector<epidemic::LedgerEntry> ledger;
};

// Throws Error on malformed logs (missing header, bad JSON line).
ReplayedRun replay_log(std::istream& in);

struct TraceOptions {
  std::optional<DeviceId> index;  // default: latest confirmed adopting case
  bool forward_only = false;
  std::optional<epidemic::TransmissionMode> mode_override;
};

// The index the engine picks when none is given: the adopting confirmed
// case with the latest onset, ties to the smallest id. Absent when no
// adopting case exists.
std::optional<DeviceId> default_index_case(const ReplayedRun& run);

// Runs patient-zero analysis over a replayed log; equals the in-run
// report for the same index. Throws UnknownDeviceError for an index
// absent from the log.
epidemic::TraceReport analyze_trace(const ReplayedRun& run,
                                    const TraceOptions& options);

// t_confirmed anchor used for a case: onset + confirm_delay, capped at
// the end of the run.
Tick confirmed_at(const ReplayedRun& run, DeviceId id);

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_REPLAY_H_
