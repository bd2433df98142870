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

#include "meshtrust/trust/store.h"

#include <algorithm>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>

#include "json.hpp"

namespace meshtrust::trust {

TrustStore::TrustStore(TrustStore&& other) noexcept {
  std::unique_lock lock(other.mutex_);
  entries_ = std::move(other.entries_);
}

TrustStore& TrustStore::operator=(TrustStore&& other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(mutex_, other.mutex_);
    entries_ = std::move(other.entries_);
  }
  return *this;
}

std::optional<DirectedTrust> TrustStore::find(DeviceId from, DeviceId to,
                                              const ProfileKey& profile) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find({from, to, profile});
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool TrustStore::knows(DeviceId from, DeviceId to) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.lower_bound({from, to, ProfileKey{}});
  return it != entries_.end() && std::get<0>(it->first) == from &&
         std::get<1>(it->first) == to;
}

double TrustStore::get_score(DeviceId from, DeviceId to,
                             const ProfileKey& profile, Tick now,
                             const TrustModelParams& params) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find({from, to, profile});
  if (it == entries_.end()) {
    return params.s_base;
  }
  const Tick elapsed = std::max<Tick>(0, now - it->second.last_updated);
  return decay(it->second.score, elapsed, params);
}

void TrustStore::set_score(DeviceId from, DeviceId to,
                           const ProfileKey& profile, double score, Tick now) {
  std::unique_lock lock(mutex_);
  auto& entry = entries_[{from, to, profile}];
  entry.from = from;
  entry.to = to;
  entry.profile = profile;
  entry.score = std::clamp(score, 0.0, 1.0);
  entry.last_updated = now;
}

double TrustStore::apply_interaction(DeviceId from, DeviceId to,
                                     const ProfileKey& profile,
                                     const InteractionEvent& event, Tick now,
                                     const TrustModelParams& params) {
  std::unique_lock lock(mutex_);
  const Key key{from, to, profile};
  auto it = entries_.find(key);
  double current = params.s_base;
  std::uint64_t count = 0;
  if (it != entries_.end()) {
    const Tick elapsed = std::max<Tick>(0, now - it->second.last_updated);
    current = decay(it->second.score, elapsed, params);
    count = it->second.interaction_count;
  }
  const double updated = update_on_interaction(current, event, params);
  entries_[key] = DirectedTrust{from, to, profile, updated, now, count + 1};
  return updated;
}

std::optional<double> TrustStore::transitive_trust(
    DeviceId a, DeviceId b, const ProfileKey& profile,
    const TrustModelParams& params) const {
  std::shared_lock lock(mutex_);
  double numerator = 0.0;
  double denominator = 0.0;
  bool any = false;
  // All entries with from == a, in ascending (to, profile) order.
  for (auto it = entries_.lower_bound({a, DeviceId{0}, ProfileKey{}});
       it != entries_.end() && std::get<0>(it->first) == a; ++it) {
    if (std::get<2>(it->first) != profile) {
      continue;
    }
    const DeviceId peer = std::get<1>(it->first);
    if (peer == a || peer == b) {
      continue;
    }
    const double own = it->second.score;
    if (own < params.tau_peer) {
      continue;
    }
    auto peer_entry = entries_.find({peer, b, profile});
    if (peer_entry == entries_.end()) {
      continue;
    }
    numerator += own * peer_entry->second.score;
    denominator += own;
    any = true;
  }
  if (!any || denominator <= 0.0) {
    return std::nullopt;
  }
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

bool TrustStore::verify_authority(DeviceId requester, DeviceId peer,
                                  const ProfileKey& profile, double threshold,
                                  Tick now,
                                  const TrustModelParams& params) const {
  return get_score(requester, peer, profile, now, params) >= threshold;
}

std::size_t TrustStore::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void TrustStore::for_each(
    const std::function<void(const DirectedTrust&)>& fn) const {
  std::shared_lock lock(mutex_);
  for (const auto& [key, entry] : entries_) {
    fn(entry);
  }
}

void TrustStore::export_jsonl(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  for (const auto& [key, entry] : entries_) {
    nlohmann::json line = {
        {"from", entry.from.value},
        {"to", entry.to.value},
        {"profile", entry.profile},
        {"score", entry.score},
        {"last_updated", entry.last_updated},
        {"interaction_count", entry.interaction_count},
    };
    out << line.dump() << '\n';
  }
}

TrustStore TrustStore::import_jsonl(std::istream& in) {
  TrustStore store;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto parsed = nlohmann::json::parse(line);
    DirectedTrust entry;
    entry.from = DeviceId{parsed.at("from").get<std::uint64_t>()};
    entry.to = DeviceId{parsed.at("to").get<std::uint64_t>()};
    entry.profile = parsed.at("profile").get<std::string>();
    entry.score = parsed.at("score").get<double>();
    entry.last_updated = parsed.at("last_updated").get<Tick>();
    entry.interaction_count =
        parsed.at("interaction_count").get<std::uint64_t>();
    store.entries_[{entry.from, entry.to, entry.profile}] = entry;
  }
  return store;
}

FactorInputs gather_factor_inputs(const TrustStore& store, DeviceId from,
                                  DeviceId to, const ProfileKey& profile,
                                  const std::set<std::string>& interests_from,
                                  const std::set<std::string>& interests_to,
                                  const std::set<std::string>& apps_from,
                                  const std::set<std::string>& apps_to,
                                  const InteractionEvent& event, Tick now,
                                  const TrustModelParams& params) {
  FactorInputs inputs;
  if (auto entry = store.find(from, to, profile); entry.has_value()) {
    const Tick age = now - entry->last_updated;
    if (age >= 0 && age <= params.session_window_ticks) {
      inputs.prev_score = decay(entry->score, age, params);
    }
  }
  inputs.peer_score = store.transitive_trust(from, to, profile, params);
  if (!interests_from.empty() || !interests_to.empty()) {
    inputs.interest_overlap = overlap_score(interests_from, interests_to);
  }
  if (!apps_from.empty() || !apps_to.empty()) {
    inputs.app_overlap = overlap_score(apps_from, apps_to);
  }
  inputs.prox_score = proximity_score(event.duration, event.distance, params);
  if (event.kind != InteractionKind::kCoPresence) {
    inputs.phys_score = event.quality;
  }
  return inputs;
}

}  // namespace meshtrust::trust
