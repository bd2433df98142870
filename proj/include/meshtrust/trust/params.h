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

#ifndef MESHTRUST_TRUST_PARAMS_H_
#define MESHTRUST_TRUST_PARAMS_H_

#include "meshtrust/core/ids.h"

namespace meshtrust::trust {

// Tunable parameters of the trust model. The defaults assume a 60 s tick
// (so 30 sim-days = 43200 ticks); every value can be overridden from the
// scenario config.
struct TrustModelParams {
  // Weights of the six initial-score factors: previous sessions, mutual
  // peers, common interests, common apps, proximity, physical interaction.
  double w_prev = 0.35;
  double w_peer = 0.25;
  double w_interests = 0.10;
  double w_apps = 0.10;
  double w_prox = 0.15;
  double w_phys = 0.05;

  // Learning rate of the interaction update, in (0, 1].
  double eta = 0.2;

  // Half-life of score decay toward the baseline, in ticks.
  Tick half_life_ticks = 43200;  // 30 sim-days at 60 s ticks

  // Score assumed for unknown peers and the decay asymptote.
  double s_base = 0.0;

  // Minimum own-trust a mutual peer needs before its opinion counts.
  double tau_peer = 0.5;

  // Recency window inside which a stored score fills the previous-sessions
  // factor slot; older entries contribute only through decay.
  Tick session_window_ticks = 129600;  // 90 sim-days

  // Contact-duration saturation constant of the proximity score, in ticks.
  Tick tau_d_ticks = 30;  // 30 minutes

  // Distance scale of the proximity score, in meters.
  double rho_m = 5.0;
};

}  // namespace meshtrust::trust

#endif  // MESHTRUST_TRUST_PARAMS_H_
