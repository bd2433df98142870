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

#ifndef MESHTRUST_SIM_ENGINE_H_
#define MESHTRUST_SIM_ENGINE_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "meshtrust/epidemic/alerts.h"
#include "meshtrust/epidemic/dynamics.h"
#include "meshtrust/epidemic/tracing.h"
#include "meshtrust/messaging/slow_reveal.h"
#include "meshtrust/routing/route.h"
#include "meshtrust/sim/config.h"
#include "meshtrust/sim/contacts.h"
#include "meshtrust/sim/event_log.h"
#include "meshtrust/sim/mobility.h"
#include "meshtrust/sim/triggers.h"
#include "meshtrust/trust/store.h"

namespace meshtrust::sim {

struct RunReport {
  Tick end_tick = 0;
  std::array<std::size_t, 4> final_counts{0, 0, 0, 0};  // S, E, I, R
  double attack_rate = 0.0;  // fraction ever infected
  std::size_t contacts_closed = 0;
  std::size_t messages_sent = 0;
  std::size_t messages_delivered = 0;
  std::optional<epidemic::TraceReport> trace;
  double forward_only_coverage = 0.0;   // meaningful when trace present
  bool patient_zero_hit = false;        // estimate matches ledger root
  std::vector<epidemic::Alert> alerts;
};

// One deterministic simulation run. Fixed per-tick phase order: mode
// flips, mobility, contact detection, triggers (discovery on firing),
// trust updates on closed contacts and scripted interactions, scheduled
// message sends, epidemic step. All randomness flows from substreams of
// config.seed, so (seed, config) determines the event log byte for byte.
class Engine {
 public:
  // `resolved_config` is embedded in the run header; `config_hash`
  // fingerprints the scenario file bytes.
  Engine(SimConfig config, nlohmann::json resolved_config,
         std::string config_hash,
         std::optional<MobilityTrace> trace = std::nullopt);

  // Runs to completion, writing events to `log` and, when epidemic
  // dynamics are enabled and `compartments_csv` is non-null, one
  // `tick,S,E,I,R` row per tick.
  RunReport run(EventLog& log, std::ostream* compartments_csv = nullptr);

  const trust::TrustStore& store() const { return store_; }
  const std::vector<ContactRecord>& contacts() const { return contacts_; }
  const epidemic::EpidemicState* epidemic_state() const {
    return epidemic_ ? &state_ : nullptr;
  }
  const std::vector<DeviceNode>& nodes() const { return nodes_; }

 private:
  void build_population();
  void tick_phase_flips(Tick now, EventLog& log);
  void tick_phase_mobility(Tick now);

  struct PairScan {
    std::vector<ActiveContact> active;
    std::vector<std::pair<DeviceId, DeviceId>> mesh_edges;
    TriggerObservation observation;
  };
  PairScan scan_pairs() const;

  void apply_direction(DeviceId from, DeviceId to, const ProfileKey& profile,
                       const trust::InteractionEvent& event, Tick now,
                       EventLog& log);
  void process_record(const ContactRecord& record, Tick now, EventLog& log);
  void process_messages(Tick now, const routing::MeshGraph& graph,
                        EventLog& log, RunReport& report);
  void finish_epidemic_analysis(RunReport& report);

  std::string zone_of(DeviceId id) const;

  SimConfig config_;
  nlohmann::json resolved_config_;
  std::string config_hash_;
  std::optional<MobilityTrace> trace_;

  std::vector<DeviceNode> nodes_;  // ascending id
  std::map<DeviceId, std::size_t> index_of_;
  std::map<DeviceId, std::string> zones_;
  trust::TrustStore store_;
  ContactTracker tracker_;
  std::vector<ContactRecord> contacts_;
  TriggerEngine triggers_;
  messaging::RevealLedger reveal_ledger_;
  epidemic::EpidemicState state_;
  bool epidemic_ = false;

  Rng mobility_rng_;
  Rng adoption_rng_;
  Rng epidemic_rng_;
  Rng messaging_rng_;
  Rng nodegen_rng_;
};

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_ENGINE_H_
