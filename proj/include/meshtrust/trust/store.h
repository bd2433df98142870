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

#ifndef MESHTRUST_TRUST_STORE_H_
#define MESHTRUST_TRUST_STORE_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <tuple>

#include "meshtrust/core/ids.h"
#include "meshtrust/trust/model.h"
#include "meshtrust/trust/params.h"

namespace meshtrust::trust {

// An asymmetric, profile-keyed trust score held by `from` about `to`.
// (a,b,p) and (b,a,p) are independent entries.
struct DirectedTrust {
  DeviceId from;
  DeviceId to;
  ProfileKey profile;
  double score = 0.0;  // in [0, 1]
  Tick last_updated = 0;
  std::uint64_t interaction_count = 0;
};

// Keyed map of directed trust entries with lazy decay on read. There is no
// background sweeper: scores age only when observed, which keeps replays
// deterministic. Reads may run concurrently; writes take the exclusive
// lock, which serializes them for every key.
class TrustStore {
 public:
  using Key = std::tuple<DeviceId, DeviceId, ProfileKey>;

  TrustStore() = default;
  TrustStore(TrustStore&& other) noexcept;
  TrustStore& operator=(TrustStore&& other) noexcept;
  TrustStore(const TrustStore&) = delete;
  TrustStore& operator=(const TrustStore&) = delete;

  // Raw stored entry, no decay applied.
  std::optional<DirectedTrust> find(DeviceId from, DeviceId to,
                                    const ProfileKey& profile) const;

  // True when any profile holds an entry from -> to.
  bool knows(DeviceId from, DeviceId to) const;

  // Stored score decayed to `now`; s_base when no entry exists. Pure read.
  double get_score(DeviceId from, DeviceId to, const ProfileKey& profile,
                   Tick now, const TrustModelParams& params) const;

  // Upserts a raw score (clamped to [0,1]) with the given timestamp.
  // Leaves the interaction count unchanged for existing entries.
  void set_score(DeviceId from, DeviceId to, const ProfileKey& profile,
                 double score, Tick now);

  // Decays the stored score to `now`, applies the interaction update and
  // stores the result; creates the entry from s_base when absent. Returns
  // the new score.
  double apply_interaction(DeviceId from, DeviceId to,
                           const ProfileKey& profile,
                           const InteractionEvent& event, Tick now,
                           const TrustModelParams& params);

  // Opinion of `a` about `b` aggregated over mutual peers p with
  // T(a,p) >= tau_peer and an existing entry T(p,b):
  //   sum_p T(a,p) * T(p,b) / sum_p T(a,p)
  // Uses stored scores as-is and iterates peers in ascending id order.
  // Absent when no peer qualifies.
  std::optional<double> transitive_trust(DeviceId a, DeviceId b,
                                         const ProfileKey& profile,
                                         const TrustModelParams& params) const;

  // True iff the requester's decayed score for the peer meets the
  // threshold (ties pass).
  bool verify_authority(DeviceId requester, DeviceId peer,
                        const ProfileKey& profile, double threshold, Tick now,
                        const TrustModelParams& params) const;

  std::size_t size() const;

  // Visits entries in key order (from, to, profile).
  void for_each(const std::function<void(const DirectedTrust&)>& fn) const;

  // JSON-lines snapshot, one entry per line in key order:
  //   {"from":..,"to":..,"profile":..,"score":..,"last_updated":..,
  //    "interaction_count":..}
  void export_jsonl(std::ostream& out) const;
  static TrustStore import_jsonl(std::istream& in);

 private:
  std::map<Key, DirectedTrust> entries_;
  mutable std::shared_mutex mutex_;
};

// Collects initial-score factor inputs for a first-or-stale session between
// `from` and `to`. The previous-sessions slot is filled only when the
// stored entry was updated within the session window; the mutual-peer,
// overlap and proximity slots fill from the store, the node token sets and
// the triggering event. Physical-interaction quality counts only for
// explicitly sensed kinds (not CoPresence).
FactorInputs gather_factor_inputs(const TrustStore& store, DeviceId from,
                                  DeviceId to, const ProfileKey& profile,
                                  const std::set<std::string>& interests_from,
                                  const std::set<std::string>& interests_to,
                                  const std::set<std::string>& apps_from,
                                  const std::set<std::string>& apps_to,
                                  const InteractionEvent& event, Tick now,
                                  const TrustModelParams& params);

}  // namespace meshtrust::trust

#endif  // MESHTRUST_TRUST_STORE_H_
