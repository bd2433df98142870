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

#ifndef MESHTRUST_EPIDEMIC_DYNAMICS_H_
#define MESHTRUST_EPIDEMIC_DYNAMICS_H_

#include <span>
#include <vector>

#include "meshtrust/core/rng.h"
#include "meshtrust/epidemic/state.h"
#include "meshtrust/sim/contacts.h"
#include "meshtrust/trust/params.h"
#include "meshtrust/trust/store.h"

namespace meshtrust::epidemic {

// Per-contact infection probability over one tick (delta_t = 1).
// ContactBased: 1 - exp(-beta * exp(-distance/rho)).
// TrustProxy:   1 - exp(-beta * T), monotone non-decreasing in T.
double infection_probability_contact(double beta, double distance, double rho);
double infection_probability_trust(double beta, double trust_score);

struct Transition {
  DeviceId node;
  Compartment from;
  Compartment to;
  Tick tick = 0;
};

struct StepResult {
  std::vector<LedgerEntry> infections;  // S -> E this tick, ledger order
  std::vector<Transition> transitions;  // every compartment change this tick
};

// Advances the epidemic one tick: each contact whose one side is
// infectious and whose other side is susceptible runs one transmission
// trial (TrustProxy mode weights it by T(infectious -> susceptible)),
// then timers move E -> I after incubation and I -> R after
// infectious_period. Draws consume `rng` in contact order.
StepResult infection_step(EpidemicState& state,
                          std::span<const sim::ActiveContact> contacts,
                          const trust::TrustStore& store,
                          const EpidemicParams& params,
                          const trust::TrustModelParams& trust_params,
                          Tick now, Rng& rng);

}  // namespace meshtrust::epidemic

#endif  // MESHTRUST_EPIDEMIC_DYNAMICS_H_
