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

#include "meshtrust/epidemic/tracing.h"

#include <algorithm>
#include <utility>

#include "meshtrust/trust/model.h"

namespace meshtrust::epidemic {

namespace {

bool overlaps(const sim::ContactRecord& contact, Tick lo, Tick hi) {
  return contact.start <= hi && contact.end() >= lo;
}

using Edge = std::pair<DeviceId, DeviceId>;  // (infector, infectee)

double score_edges(const std::set<Edge>& recovered,
                   std::span<const LedgerEntry> ledger) {
  if (ledger.empty()) return 1.0;
  std::set<Edge> truth;
  for (const auto& entry : ledger) truth.insert({entry.infector, entry.infectee});
  std::size_t hit = 0;
  for (const auto& edge : truth) hit += recovered.contains(edge);
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

}  // namespace

double contact_weight(const sim::ContactRecord& contact, DeviceId subject,
                      const trust::TrustStore& store,
                      const EpidemicParams& params,
                      const trust::TrustModelParams& trust_params, Tick now) {
  if (params.mode == TransmissionMode::kTrustProxy) {
    return store.get_score(subject, contact.other(subject), kDefaultProfile,
                           now, trust_params);
  }
  return trust::proximity_score(static_cast<double>(contact.duration),
                                contact.mean_distance, trust_params);
}

std::set<DeviceId> forward_trace(std::span<const sim::ContactRecord> contacts,
                                 const trust::TrustStore& store,
                                 DeviceId index, Tick t_confirmed,
                                 const EpidemicParams& params,
                                 const trust::TrustModelParams& trust_params,
                                 const std::set<DeviceId>& adopting, Tick now) {
  std::set<DeviceId> traced;
  if (!adopting.contains(index)) return traced;
  const Tick lo = t_confirmed - params.trace_window;
  for (const auto& contact : contacts) {
    if (!contact.involves(index)) continue;
    if (!overlaps(contact, lo, t_confirmed)) continue;
    const DeviceId peer = contact.other(index);
    if (!adopting.contains(peer)) continue;
    if (contact_weight(contact, index, store, params, trust_params, now) >=
        params.trace_threshold) {
      traced.insert(peer);
    }
  }
  return traced;
}

std::vector<BackwardCandidate> backward_trace(
    std::span<const sim::ContactRecord> contacts,
    const trust::TrustStore& store, DeviceId index, Tick t_onset,
    const OnsetMap& onsets, const EpidemicParams& params,
    const trust::TrustModelParams& trust_params,
    const std::set<DeviceId>& adopting, Tick now) {
  std::map<DeviceId, BackwardCandidate> best;
  if (!adopting.contains(index)) return {};
  const Tick lo = t_onset - params.trace_window;
  for (const auto& contact : contacts) {
    if (!contact.involves(index)) continue;
    if (!overlaps(contact, lo, t_onset)) continue;
    const DeviceId peer = contact.other(index);
    if (!adopting.contains(peer)) continue;
    // Infectious-plausible: confirmed with onset strictly before the
    // index's own onset.
    auto onset = onsets.find(peer);
    if (onset == onsets.end() || onset->second >= t_onset) continue;
    const double weight =
        contact_weight(contact, index, store, params, trust_params, now);
    if (weight < params.trace_threshold) continue;
    const BackwardCandidate candidate{peer, weight, contact.start};
    auto [it, inserted] = best.try_emplace(peer, candidate);
    if (!inserted && (candidate.weight > it->second.weight ||
                      (candidate.weight == it->second.weight &&
                       candidate.contact_time < it->second.contact_time))) {
      it->second = candidate;
    }
  }
  std::vector<BackwardCandidate> ranked;
  ranked.reserve(best.size());
  for (const auto& [id, candidate] : best) ranked.push_back(candidate);
  std::sort(ranked.begin(), ranked.end(),
            [](const BackwardCandidate& lhs, const BackwardCandidate& rhs) {
              if (lhs.weight != rhs.weight) return lhs.weight > rhs.weight;
              if (lhs.contact_time != rhs.contact_time) {
                return lhs.contact_time < rhs.contact_time;
              }
              return lhs.id < rhs.id;
            });
  return ranked;
}

TraceReport trace_to_patient_zero(std::span<const sim::ContactRecord> contacts,
                                  const trust::TrustStore& store,
                                  DeviceId index, const OnsetMap& onsets,
                                  std::span<const LedgerEntry> ledger,
                                  const EpidemicParams& params,
                                  const trust::TrustModelParams& trust_params,
                                  const std::set<DeviceId>& adopting,
                                  Tick now) {
  TraceReport report;
  report.index_case = index;
  report.inferred_chain = {index};
  std::set<DeviceId> visited{index};
  DeviceId current = index;
  while (true) {
    auto onset = onsets.find(current);
    if (onset == onsets.end()) break;
    const auto candidates =
        backward_trace(contacts, store, current, onset->second, onsets, params,
                       trust_params, adopting, now);
    for (const auto& candidate : candidates) {
      report.backward_set.insert(candidate.id);
    }
    if (candidates.empty()) break;
    const DeviceId next = candidates.front().id;
    if (visited.contains(next)) {
      report.cycle_detected = true;
      break;
    }
    report.inferred_chain.insert(report.inferred_chain.begin(), next);
    visited.insert(next);
    current = next;
  }
  report.patient_zero_estimate = report.inferred_chain.front();

  std::set<Edge> recovered;
  for (std::size_t i = 0; i + 1 < report.inferred_chain.size(); ++i) {
    recovered.insert({report.inferred_chain[i], report.inferred_chain[i + 1]});
  }
  for (DeviceId node : report.inferred_chain) {
    auto onset = onsets.find(node);
    if (onset == onsets.end()) continue;
    const Tick t_confirmed = onset->second + params.confirm_delay;
    for (DeviceId peer :
         forward_trace(contacts, store, node, t_confirmed, params,
                       trust_params, adopting, now)) {
      report.forward_set.insert(peer);
      recovered.insert({node, peer});
    }
  }
  report.coverage = score_edges(recovered, ledger);
  return report;
}

double forward_only_coverage(std::span<const sim::ContactRecord> contacts,
                             const trust::TrustStore& store, DeviceId index,
                             Tick t_confirmed,
                             std::span<const LedgerEntry> ledger,
                             const EpidemicParams& params,
                             const trust::TrustModelParams& trust_params,
                             const std::set<DeviceId>& adopting, Tick now) {
  std::set<Edge> recovered;
  for (DeviceId peer : forward_trace(contacts, store, index, t_confirmed,
                                     params, trust_params, adopting, now)) {
    recovered.insert({index, peer});
  }
  return score_edges(recovered, ledger);
}

std::vector<SpreaderScore> find_super_spreaders(
    std::span<const LedgerEntry> ledger, std::size_t top_n) {
  std::map<DeviceId, std::size_t> degree;
  for (const auto& entry : ledger) degree[entry.infector] += 1;
  std::vector<SpreaderScore> ranked;
  ranked.reserve(degree.size());
  for (const auto& [id, count] : degree) ranked.push_back({id, count});
  std::sort(ranked.begin(), ranked.end(),
            [](const SpreaderScore& lhs, const SpreaderScore& rhs) {
              if (lhs.count != rhs.count) return lhs.count > rhs.count;
              return lhs.id < rhs.id;
            });
  if (ranked.size() > top_n) ranked.resize(top_n);
  return ranked;
}

std::vector<SpreaderScore> find_super_spreaders(
    std::span<const sim::ContactRecord> contacts,
    const trust::TrustStore& store, const EpidemicParams& params,
    const trust::TrustModelParams& trust_params,
    const std::set<DeviceId>& adopting, std::size_t top_n, Tick now) {
  std::map<DeviceId, std::set<DeviceId>> peers;
  for (const auto& contact : contacts) {
    if (!adopting.contains(contact.a) || !adopting.contains(contact.b)) {
      continue;
    }
    for (DeviceId subject : {contact.a, contact.b}) {
      if (contact_weight(contact, subject, store, params, trust_params, now) >=
          params.trace_threshold) {
        peers[subject].insert(contact.other(subject));
      }
    }
  }
  std::vector<SpreaderScore> ranked;
  ranked.reserve(peers.size());
  for (const auto& [id, contacts_of] : peers) {
    ranked.push_back({id, contacts_of.size()});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const SpreaderScore& lhs, const SpreaderScore& rhs) {
              if (lhs.count != rhs.count) return lhs.count > rhs.count;
              return lhs.id < rhs.id;
            });
  if (ranked.size() > top_n) ranked.resize(top_n);
  return ranked;
}

DeviceId ledger_root(std::span<const LedgerEntry> ledger, DeviceId index) {
  std::map<DeviceId, DeviceId> parent;
  for (const auto& entry : ledger) parent.emplace(entry.infectee, entry.infector);
  std::set<DeviceId> visited{index};
  DeviceId current = index;
  for (auto it = parent.find(current); it != parent.end();
       it = parent.find(current)) {
    if (visited.contains(it->second)) break;
    current = it->second;
    visited.insert(current);
  }
  return current;
}

}  // namespace meshtrust::epidemic
