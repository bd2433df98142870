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

#include "meshtrust/sim/replay.h"

#include <string>

#include <json.hpp>

#include "meshtrust/core/errors.h"

namespace meshtrust::sim {

namespace {

using nlohmann::json;

epidemic::EpidemicParams params_of(const ReplayedRun& run) {
  return run.config.epidemic ? run.config.epidemic->params
                             : epidemic::EpidemicParams{};
}

}  // namespace

ReplayedRun replay_log(std::istream& in) {
  ReplayedRun run;
  bool saw_header = false;
  bool saw_footer = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json event;
    try {
      event = json::parse(line);
    } catch (const json::parse_error&) {
      throw Error("replay: bad JSON at line " + std::to_string(line_no));
    }
    const std::string type = event.value("type", "");
    if (!saw_header) {
      if (type != "run_header") {
        throw Error("replay: log must start with a run_header event");
      }
      saw_header = true;
      std::vector<std::string> diagnostics;
      run.config = parse_config(event.at("config"), diagnostics);
      if (!diagnostics.empty()) throw ConfigError(std::move(diagnostics));
      run.end_tick = run.config.ticks_total;
      continue;
    }
    if (type == "adoption") {
      const DeviceId id{event.at("device").get<std::uint64_t>()};
      run.devices.insert(id);
      if (event.at("adopting").get<bool>()) run.adopting.insert(id);
    } else if (type == "contact_close") {
      ContactRecord record;
      record.a = DeviceId{event.at("a").get<std::uint64_t>()};
      record.b = DeviceId{event.at("b").get<std::uint64_t>()};
      record.start = event.at("start").get<Tick>();
      record.duration = event.at("duration").get<Tick>();
      record.mean_distance = event.at("mean_distance").get<double>();
      if (const auto kind = trust::interaction_kind_from_name(
              event.value("kind", "co_presence"))) {
        record.kind = *kind;
      }
      run.devices.insert(record.a);
      run.devices.insert(record.b);
      run.contacts.push_back(record);
    } else if (type == "trust_update") {
      const DeviceId from{event.at("from").get<std::uint64_t>()};
      const DeviceId to{event.at("to").get<std::uint64_t>()};
      run.devices.insert(from);
      run.devices.insert(to);
      run.store.set_score(from, to, event.at("profile").get<std::string>(),
                          event.at("score").get<double>(),
                          event.at("tick").get<Tick>());
    } else if (type == "compartment") {
      const DeviceId id{event.at("device").get<std::uint64_t>()};
      run.devices.insert(id);
      if (event.at("to").get<std::string>() == "i") {
        run.onsets[id] = event.at("tick").get<Tick>();
      }
    } else if (type == "infection") {
      epidemic::LedgerEntry entry;
      entry.infector = DeviceId{event.at("infector").get<std::uint64_t>()};
      entry.infectee = DeviceId{event.at("infectee").get<std::uint64_t>()};
      entry.tick = event.at("tick").get<Tick>();
      run.ledger.push_back(entry);
    } else if (type == "run_footer") {
      run.end_tick = event.at("end_tick").get<Tick>();
      saw_footer = true;
    }
  }
  if (!saw_header) throw Error("replay: log has no run_header event");
  (void)saw_footer;  // a truncated log falls back to config ticks_total
  return run;
}

std::optional<DeviceId> default_index_case(const ReplayedRun& run) {
  std::optional<DeviceId> index;
  for (const auto& [id, onset] : run.onsets) {
    if (!run.adopting.contains(id)) continue;
    if (!index || onset > run.onsets.at(*index)) index = id;
  }
  return index;
}

Tick confirmed_at(const ReplayedRun& run, DeviceId id) {
  const auto it = run.onsets.find(id);
  if (it == run.onsets.end()) {
    throw UnknownDeviceError("device " + std::to_string(id.value) +
                             " has no confirmed onset");
  }
  return std::min<Tick>(it->second + params_of(run).confirm_delay,
                        run.end_tick);
}

epidemic::TraceReport analyze_trace(const ReplayedRun& run,
                                    const TraceOptions& options) {
  auto params = params_of(run);
  if (options.mode_override) params.mode = *options.mode_override;

  std::optional<DeviceId> index = options.index;
  if (index && !run.devices.contains(*index)) {
    throw UnknownDeviceError("device " + std::to_string(index->value) +
                             " does not appear in the log");
  }
  if (!index) index = default_index_case(run);
  if (!index) throw Error("no confirmed adopting case to trace");

  const Tick now = run.end_tick;
  if (options.forward_only) {
    epidemic::TraceReport report;
    report.index_case = *index;
    report.inferred_chain = {*index};
    report.patient_zero_estimate = *index;
    const Tick t_confirmed = confirmed_at(run, *index);
    report.forward_set = epidemic::forward_trace(
        run.contacts, run.store, *index, t_confirmed, params,
        run.config.trust, run.adopting, now);
    report.coverage = epidemic::forward_only_coverage(
        run.contacts, run.store, *index, t_confirmed, run.ledger, params,
        run.config.trust, run.adopting, now);
    return report;
  }
  return epidemic::trace_to_patient_zero(run.contacts, run.store, *index,
                                         run.onsets, run.ledger, params,
                                         run.config.trust, run.adopting, now);
}

}  // namespace meshtrust::sim
