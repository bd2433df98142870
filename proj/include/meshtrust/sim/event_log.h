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

#ifndef MESHTRUST_SIM_EVENT_LOG_H_
#define MESHTRUST_SIM_EVENT_LOG_H_

#include <ostream>

#include <json.hpp>

namespace meshtrust::sim {

// JSON-lines event writer. One object per line, keys serialized in
// alphabetical order (nlohmann default), so identical event sequences
// yield byte-identical logs. Every event carries "type"; all events after
// the header carry a non-decreasing "tick".
//
// Event types emitted by the engine:
//   run_header    {artifact_version, config_hash, seed, ticks_total,
//                  tick_length_s, population, config}
//   adoption      {tick, device, adopting}
//   mode_flip     {tick, device, airplane_mode}
//   trigger       {tick, device, kind}
//   discovery     {tick, device, peers, registry_peers?}
//   contact_open  {tick, a, b}
//   contact_close {tick, a, b, start, duration, mean_distance, kind}
//   interaction   {tick, a, b, kind, quality, duration, distance, profile}
//   trust_update  {tick, from, to, profile, score, initial}
//   message_send  {tick, key_id, sender, receiver, permitted, score,
//                  required}
//   message_route {tick, key_id, session, hops, bridge_index?, delivered}
//   relay_hop     {tick, key_id, node, hop_index}
//   decode_attempt{tick, key_id, receiver, trust, revealed, complete}
//   infection     {tick, infector, infectee}
//   compartment   {tick, device, from, to}
//   run_footer    {tick, end_tick, s, e, i, r}
class EventLog {
 public:
  explicit EventLog(std::ostream& out) : out_(out) {}

  void emit(const nlohmann::json& event) { out_ << event.dump() << '\n'; }

  std::ostream& stream() { return out_; }

 private:
  std::ostream& out_;
};

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_EVENT_LOG_H_
