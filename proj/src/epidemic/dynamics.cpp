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

#include "meshtrust/epidemic/dynamics.h"

#include <cmath>

namespace meshtrust::epidemic {

double infection_probability_contact(double beta, double distance,
                                     double rho) {
  return 1.0 - std::exp(-beta * std::exp(-distance / rho));
}

double infection_probability_trust(double beta, double trust_score) {
  return 1.0 - std::exp(-beta * trust_score);
}

namespace {

// (infectious, susceptible) orientation of a contact, if it has one.
struct Exposure {
  DeviceId infectious;
  DeviceId susceptible;
};

std::optional<Exposure> orient(const EpidemicState& state,
                               const sim::ActiveContact& contact) {
  const auto comp = [&](DeviceId id) { return state.at(id).compartment; };
  if (comp(contact.a) == Compartment::kInfectious &&
      comp(contact.b) == Compartment::kSusceptible) {
    return Exposure{contact.a, contact.b};
  }
  if (comp(contact.b) == Compartment::kInfectious &&
      comp(contact.a) == Compartment::kSusceptible) {
    return Exposure{contact.b, contact.a};
  }
  return std::nullopt;
}

}  // namespace

StepResult infection_step(EpidemicState& state,
                          std::span<const sim::ActiveContact> contacts,
                          const trust::TrustStore& store,
                          const EpidemicParams& params,
                          const trust::TrustModelParams& trust_params,
                          Tick now, Rng& rng) {
  StepResult result;
  for (const auto& contact : contacts) {
    const auto exposure = orient(state, contact);
    if (!exposure) continue;
    double p = 0.0;
    if (params.mode == TransmissionMode::kContactBased) {
      p = infection_probability_contact(params.beta, contact.distance,
                                        trust_params.rho_m);
    } else {
      const double t = store.get_score(exposure->infectious,
                                       exposure->susceptible, kDefaultProfile,
                                       now, trust_params);
      p = infection_probability_trust(params.beta, t);
    }
    if (!rng.bernoulli(p)) continue;
    auto& target = state.health.at(exposure->susceptible);
    target.compartment = Compartment::kExposed;
    target.exposed_at = now;
    state.infection_ledger.push_back(
        LedgerEntry{exposure->infectious, exposure->susceptible, now});
    result.infections.push_back(state.infection_ledger.back());
    result.transitions.push_back(Transition{exposure->susceptible,
                                            Compartment::kSusceptible,
                                            Compartment::kExposed, now});
  }
  for (auto& [id, node] : state.health) {
    if (node.compartment == Compartment::kExposed &&
        now - *node.exposed_at >= params.incubation) {
      node.compartment = Compartment::kInfectious;
      node.infectious_at = now;
      result.transitions.push_back(
          Transition{id, Compartment::kExposed, Compartment::kInfectious, now});
    } else if (node.compartment == Compartment::kInfectious &&
               now - *node.infectious_at >= params.infectious_period) {
      node.compartment = Compartment::kRecovered;
      node.recovered_at = now;
      result.transitions.push_back(Transition{id, Compartment::kInfectious,
                                              Compartment::kRecovered, now});
    }
  }
  return result;
}

}  // namespace meshtrust::epidemic
