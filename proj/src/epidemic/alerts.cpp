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

#include "meshtrust/epidemic/alerts.h"

#include <algorithm>

#include <json.hpp>

#include "meshtrust/core/rng.h"
#include "meshtrust/messaging/slow_reveal.h"

namespace meshtrust::epidemic {

const char* tier_name(AlertTier tier) {
  switch (tier) {
    case AlertTier::kIndividual:
      return "individual";
    case AlertTier::kLocality:
      return "locality";
    case AlertTier::kNoAlert:
      return "no_alert";
  }
  return "no_alert";
}

namespace {

constexpr std::uint64_t kAlertKeyStream = 0x616c657274ULL;  // "alert"

std::string individual_payload(DeviceId index, const AlertContext& context) {
  nlohmann::json j;
  j["tier"] = "individual";
  j["case"] = index.value;
  j["window_start"] = context.window_start;
  j["window_end"] = context.window_end;
  return j.dump();
}

// Zone and day only; no device identity of any kind.
std::string locality_payload(DeviceId recipient, const AlertContext& context) {
  nlohmann::json j;
  j["tier"] = "locality";
  j["zone"] = context.zone_of ? context.zone_of(recipient) : "unknown";
  j["day"] = context.window_end / std::max<Tick>(context.ticks_per_day, 1);
  return j.dump();
}

}  // namespace

std::vector<Alert> issue_alerts(const TraceReport& report,
                                const trust::TrustStore& store,
                                const EpidemicParams& params,
                                const trust::TrustModelParams& trust_params,
                                const AlertContext& context) {
  std::set<DeviceId> traced = report.forward_set;
  traced.insert(report.backward_set.begin(), report.backward_set.end());
  traced.erase(report.index_case);

  std::vector<Alert> alerts;
  alerts.reserve(traced.size());
  for (DeviceId recipient : traced) {
    Alert alert;
    alert.recipient = recipient;
    alert.trust = store.get_score(report.index_case, recipient,
                                  kDefaultProfile, context.now, trust_params);
    if (alert.trust >= params.theta_individual) {
      alert.tier = AlertTier::kIndividual;
      alert.rx_threshold = params.theta_individual;
      alert.payload = individual_payload(report.index_case, context);
    } else if (alert.trust >= params.theta_locality) {
      alert.tier = AlertTier::kLocality;
      alert.rx_threshold = params.theta_locality;
      alert.payload = locality_payload(recipient, context);
    } else {
      alert.tier = AlertTier::kNoAlert;
      alerts.push_back(std::move(alert));
      continue;
    }
    messaging::SecurityKey key;
    key.key_id = derive_seed(derive_seed(report.index_case.value,
                                         recipient.value),
                             static_cast<std::uint64_t>(context.now));
    key.seed = derive_seed(key.key_id, kAlertKeyStream);
    messaging::EncodeParams encode_params;
    encode_params.sender = report.index_case;
    encode_params.receiver = recipient;
    encode_params.sent_at = context.now;
    alert.envelope = messaging::encode_text(
        alert.payload, 1, 0.0, alert.rx_threshold, alert.rx_threshold, key,
        messaging::RevealMode::kDeterministic, encode_params);
    alerts.push_back(std::move(alert));
  }
  return alerts;
}

}  // namespace meshtrust::epidemic
