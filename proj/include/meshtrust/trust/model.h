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

#ifndef MESHTRUST_TRUST_MODEL_H_
#define MESHTRUST_TRUST_MODEL_H_

#include <optional>
#include <set>
#include <string>

#include "meshtrust/core/ids.h"
#include "meshtrust/trust/params.h"

namespace meshtrust::trust {

// Kinds of captured interactions between two devices. CoPresence is the
// implicit proximity-only contact; the others are explicitly sensed.
enum class InteractionKind {
  kConversation,
  kHandshake,
  kWave,
  kCoPresence,
  kMessageExchange,
  kHealthConsult,
};

// One proximity interaction between devices a and b.
struct InteractionEvent {
  DeviceId a;
  DeviceId b;
  Tick time = 0;
  Tick duration = 0;       // ticks, >= 0
  double distance = 0.0;   // meters, >= 0
  InteractionKind kind = InteractionKind::kCoPresence;
  double quality = 1.0;    // in [0, 1]
};

// Inputs to the initial-score computation; absent factors are skipped and
// the weighted mean renormalizes over the present ones.
struct FactorInputs {
  std::optional<double> prev_score;
  std::optional<double> peer_score;
  std::optional<double> interest_overlap;
  std::optional<double> app_overlap;
  std::optional<double> prox_score;
  std::optional<double> phys_score;
};

// Proximity contribution of one interaction. Saturates with duration and
// falls off exponentially with distance:
//   (1 - exp(-duration/tau_d)) * exp(-distance/rho)
// Strictly increasing in duration, strictly decreasing in distance.
double proximity_score(Tick duration, double distance_m,
                       const TrustModelParams& params);

// Jaccard similarity of two token sets; 0 when both are empty.
double overlap_score(const std::set<std::string>& a,
                     const std::set<std::string>& b);

// Weighted mean over the present factors, renormalized by the present
// weights. Falls back to the baseline when no factor is present; the
// result is clamped to [0, 1].
double initial_trust(const FactorInputs& inputs,
                     const TrustModelParams& params);

// Exponential moving-average step toward the interaction's effective
// quality q_eff = quality * proximity_score(duration, distance):
//   next = (1 - eta) * current + eta * q_eff
// Written in this factored form so the contraction factor is exactly
// (1 - eta) up to rounding.
double update_on_interaction(double current, const InteractionEvent& event,
                             const TrustModelParams& params);

// Half-life decay toward the baseline:
//   s_base + (current - s_base) * 2^(-elapsed/h)
// Forms a semigroup in elapsed time.
double decay(double current, Tick elapsed, const TrustModelParams& params);

// Logistic sigmoid, the probabilistic-reveal activation.
double logistic(double x);

// Snake-case names used in configs and event logs.
const char* interaction_kind_name(InteractionKind kind);
std::optional<InteractionKind> interaction_kind_from_name(
    const std::string& name);

}  // namespace meshtrust::trust

#endif  // MESHTRUST_TRUST_MODEL_H_
