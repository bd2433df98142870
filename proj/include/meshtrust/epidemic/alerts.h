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

#ifndef MESHTRUST_EPIDEMIC_ALERTS_H_
#define MESHTRUST_EPIDEMIC_ALERTS_H_

#include <functional>
#include <string>
#include <vector>

#include "meshtrust/epidemic/tracing.h"
#include "meshtrust/messaging/envelope.h"

namespace meshtrust::epidemic {

enum class AlertTier { kIndividual, kLocality, kNoAlert };

const char* tier_name(AlertTier tier);

struct Alert {
  DeviceId recipient;
  AlertTier tier = AlertTier::kNoAlert;
  double trust = 0.0;            // T(index -> recipient) at issue time
  double rx_threshold = 0.0;     // tier threshold carried by the envelope
  std::string payload;           // plaintext JSON handed to encode()
  messaging::SlowRevealEnvelope envelope;  // empty for kNoAlert
};

struct AlertContext {
  Tick now = 0;
  Tick window_start = 0;  // exposure window named in Individual alerts
  Tick window_end = 0;
  Tick ticks_per_day = 1440;
  // Zone label for a device, used by Locality payloads.
  std::function<std::string(DeviceId)> zone_of;
};

// Tiers every traced peer j (forward or backward, excluding the index) by
// T(index -> j): >= theta_individual gets an Individual alert naming the
// case and exposure window; [theta_locality, theta_individual) gets a
// Locality alert carrying zone and day only, with no identity fields;
// below stays kNoAlert. Alerts ship as single-partition slow-reveal
// envelopes whose rx_threshold is the tier threshold. Output is ordered
// by recipient id; envelope keys derive deterministically from
// (index, recipient, now).
std::vector<Alert> issue_alerts(const TraceReport& report,
                                const trust::TrustStore& store,
                                const EpidemicParams& params,
                                const trust::TrustModelParams& trust_params,
                                const AlertContext& context);

}  // namespace meshtrust::epidemic

#endif  // MESHTRUST_EPIDEMIC_ALERTS_H_
