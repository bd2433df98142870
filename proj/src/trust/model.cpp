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

#include "meshtrust/trust/model.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace meshtrust::trust {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double proximity_score(Tick duration, double distance_m,
                       const TrustModelParams& params) {
  const double saturation =
      1.0 - std::exp(-static_cast<double>(duration) /
                     static_cast<double>(params.tau_d_ticks));
  const double falloff = std::exp(-distance_m / params.rho_m);
  return clamp01(saturation * falloff);
}

double overlap_score(const std::set<std::string>& a,
                     const std::set<std::string>& b) {
  if (a.empty() && b.empty()) {
    return 0.0;
  }
  std::size_t intersection = 0;
  for (const auto& token : a) {
    if (b.contains(token)) {
      ++intersection;
    }
  }
  const std::size_t unions = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unions);
}

double initial_trust(const FactorInputs& inputs,
                     const TrustModelParams& params) {
  double weighted_sum = 0.0;
  double weight_sum = 0.0;
  const auto add = [&](const std::optional<double>& value, double weight) {
    if (value.has_value()) {
      weighted_sum += weight * *value;
      weight_sum += weight;
    }
  };
  add(inputs.prev_score, params.w_prev);
  add(inputs.peer_score, params.w_peer);
  add(inputs.interest_overlap, params.w_interests);
  add(inputs.app_overlap, params.w_apps);
  add(inputs.prox_score, params.w_prox);
  add(inputs.phys_score, params.w_phys);
  if (weight_sum <= 0.0) {
    return params.s_base;
  }
  return clamp01(weighted_sum / weight_sum);
}

double update_on_interaction(double current, const InteractionEvent& event,
                             const TrustModelParams& params) {
  const double q_eff =
      event.quality * proximity_score(event.duration, event.distance, params);
  return clamp01((1.0 - params.eta) * current + params.eta * q_eff);
}

double decay(double current, Tick elapsed, const TrustModelParams& params) {
  if (elapsed <= 0) {
    return current;
  }
  const double factor =
      std::exp2(-static_cast<double>(elapsed) /
                static_cast<double>(params.half_life_ticks));
  return clamp01(params.s_base + (current - params.s_base) * factor);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

const char* interaction_kind_name(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::kConversation:
      return "conversation";
    case InteractionKind::kHandshake:
      return "handshake";
    case InteractionKind::kWave:
      return "wave";
    case InteractionKind::kCoPresence:
      return "co_presence";
    case InteractionKind::kMessageExchange:
      return "message_exchange";
    case InteractionKind::kHealthConsult:
      return "health_consult";
  }
  return "co_presence";
}

std::optional<InteractionKind> interaction_kind_from_name(
    const std::string& name) {
  static const std::array<InteractionKind, 6> kKinds = {
      InteractionKind::kConversation,   InteractionKind::kHandshake,
      InteractionKind::kWave,           InteractionKind::kCoPresence,
      InteractionKind::kMessageExchange, InteractionKind::kHealthConsult,
  };
  for (InteractionKind kind : kKinds) {
    if (name == interaction_kind_name(kind)) {
      return kind;
    }
  }
  return std::nullopt;
}

}  // namespace meshtrust::trust
