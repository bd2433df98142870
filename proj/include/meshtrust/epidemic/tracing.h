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

#ifndef MESHTRUST_EPIDEMIC_TRACING_H_
#define MESHTRUST_EPIDEMIC_TRACING_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "meshtrust/epidemic/state.h"
#include "meshtrust/sim/contacts.h"
#include "meshtrust/trust/params.h"
#include "meshtrust/trust/store.h"

namespace meshtrust::epidemic {

// Observable case data available to tracing: confirmed cases and their
// infectious-onset ticks. Tracing never sees the ground-truth ledger.
using OnsetMap = std::map<DeviceId, Tick>;

// Weight of a contact as seen from `subject`: the contact's
// proximity_score in ContactBased mode, T(subject -> peer) decayed to
// `now` in TrustProxy mode. A contact qualifies when its weight >=
// trace_threshold. `now` is the analysis time, fixed across one report.
double contact_weight(const sim::ContactRecord& contact, DeviceId subject,
                      const trust::TrustStore& store,
                      const EpidemicParams& params,
                      const trust::TrustModelParams& trust_params, Tick now);

// Adopting peers with a qualifying contact overlapping
// [t_confirmed - W, t_confirmed]. The index must be adopting.
std::set<DeviceId> forward_trace(std::span<const sim::ContactRecord> contacts,
                                 const trust::TrustStore& store,
                                 DeviceId index, Tick t_confirmed,
                                 const EpidemicParams& params,
                                 const trust::TrustModelParams& trust_params,
                                 const std::set<DeviceId>& adopting, Tick now);

struct BackwardCandidate {
  DeviceId id;
  double weight = 0.0;
  Tick contact_time = 0;  // start of the qualifying contact
};

// Candidate infectors of `index`: adopting peers with a qualifying
// contact overlapping [t_onset - W, t_onset] whose own confirmed onset
// precedes t_onset. Ranked by weight, then earlier contact, then id.
// Reads contacts, confirmations and trust only (ledger-blind).
std::vector<BackwardCandidate> backward_trace(
    std::span<const sim::ContactRecord> contacts,
    const trust::TrustStore& store, DeviceId index, Tick t_onset,
    const OnsetMap& onsets, const EpidemicParams& params,
    const trust::TrustModelParams& trust_params,
    const std::set<DeviceId>& adopting, Tick now);

struct TraceReport {
  DeviceId index_case;
  std::set<DeviceId> forward_set;   // forward contacts of every chain node
  std::set<DeviceId> backward_set;  // all backward candidates encountered
  std::vector<DeviceId> inferred_chain;  // patient-zero estimate first,
                                         // index_case last
  DeviceId patient_zero_estimate;
  double coverage = 0.0;  // ground-truth edges recovered / ledger size
  bool cycle_detected = false;
};

// Walks backward_trace from the index, stepping to the top candidate each
// round until none remains; the terminal node is the patient-zero
// estimate. A revisited node stops the walk (cycle_detected). Coverage
// scores the recovered edge set (chain edges plus chain-node forward
// contacts) against the ground-truth ledger; 1.0 on an empty ledger.
TraceReport trace_to_patient_zero(std::span<const sim::ContactRecord> contacts,
                                  const trust::TrustStore& store,
                                  DeviceId index, const OnsetMap& onsets,
                                  std::span<const LedgerEntry> ledger,
                                  const EpidemicParams& params,
                                  const trust::TrustModelParams& trust_params,
                                  const std::set<DeviceId>& adopting, Tick now);

// Forward-only baseline: edges recovered by forward_trace from the index
// alone, scored against the ledger. Used to compare tracing directions.
double forward_only_coverage(std::span<const sim::ContactRecord> contacts,
                             const trust::TrustStore& store, DeviceId index,
                             Tick t_confirmed,
                             std::span<const LedgerEntry> ledger,
                             const EpidemicParams& params,
                             const trust::TrustModelParams& trust_params,
                             const std::set<DeviceId>& adopting, Tick now);

struct SpreaderScore {
  DeviceId id;
  std::size_t count = 0;
};

// Evaluation mode: ranks by ground-truth out-degree in the ledger.
std::vector<SpreaderScore> find_super_spreaders(
    std::span<const LedgerEntry> ledger, std::size_t top_n);

// Inference mode: ranks by distinct adopting peers with a qualifying
// contact. Ties break toward the smaller id in both modes.
std::vector<SpreaderScore> find_super_spreaders(
    std::span<const sim::ContactRecord> contacts,
    const trust::TrustStore& store, const EpidemicParams& params,
    const trust::TrustModelParams& trust_params,
    const std::set<DeviceId>& adopting, std::size_t top_n, Tick now);

// True patient zero per the ledger: follow infectee -> infector edges
// from `index` to the chain head. Evaluation only.
DeviceId ledger_root(std::span<const LedgerEntry> ledger, DeviceId index);

}  // namespace meshtrust::epidemic

#endif  // MESHTRUST_EPIDEMIC_TRACING_H_
