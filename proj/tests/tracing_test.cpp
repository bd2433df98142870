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

#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "meshtrust/epidemic/tracing.h"
#include "meshtrust/trust/store.h"

using namespace meshtrust;
using namespace meshtrust::epidemic;

namespace {

constexpr DeviceId kZ{0};
constexpr DeviceId kA{1};
constexpr DeviceId kB{2};

sim::ContactRecord meet(std::uint64_t a, std::uint64_t b, Tick start,
                        Tick duration, double distance = 1.0) {
  sim::ContactRecord record;
  record.a = DeviceId{a};
  record.b = DeviceId{b};
  record.start = start;
  record.duration = duration;
  record.mean_distance = distance;
  return record;
}

EpidemicParams tracing_params() {
  EpidemicParams params;
  params.trace_window = 100;
  params.trace_threshold = 0.3;
  params.confirm_delay = 10;
  return params;
}

}  // namespace

TEST_CASE("contact weight per transmission mode") {
  trust::TrustModelParams trust_params;  // tau_d 30, rho 5
  trust::TrustStore store;
  const auto record = meet(1, 2, 0, 30, 1.0);

  SUBCASE("contact-based uses the proximity score") {
    EpidemicParams params;
    params.mode = TransmissionMode::kContactBased;
    // (1 - e^-1) * e^-0.2 for a 30-tick contact at one meter, frozen.
    CHECK(contact_weight(record, DeviceId{1}, store, params, trust_params,
                         1000) ==
          doctest::Approx(0.5175365411657797).epsilon(1e-12));
    // Same weight from either side.
    CHECK(contact_weight(record, DeviceId{2}, store, params, trust_params,
                         1000) ==
          contact_weight(record, DeviceId{1}, store, params, trust_params,
                         1000));
  }
  SUBCASE("trust-proxy reads the subject's directed score") {
    EpidemicParams params;
    params.mode = TransmissionMode::kTrustProxy;
    store.set_score(DeviceId{1}, DeviceId{2}, kDefaultProfile, 0.8, 1000);
    CHECK(contact_weight(record, DeviceId{1}, store, params, trust_params,
                         1000) == 0.8);
    // The reverse direction has no entry and falls to the baseline.
    CHECK(contact_weight(record, DeviceId{2}, store, params, trust_params,
                         1000) == trust_params.s_base);
  }
}

TEST_CASE("forward tracing collects qualifying window contacts") {
  trust::TrustModelParams trust_params;
  trust::TrustStore store;
  const auto params = tracing_params();
  const std::set<DeviceId> adopting{kZ, kA, kB, DeviceId{3}};
  const Tick now = 1000;

  SUBCASE("no contacts, no peers") {
    CHECK(forward_trace({}, store, kA, 100, params, trust_params, adopting,
                        now)
              .empty());
  }
  SUBCASE("a qualifying contact inside the window is included") {
    const std::vector<sim::ContactRecord> contacts{meet(1, 2, 60, 30)};
    const auto traced = forward_trace(contacts, store, kA, 100, params,
                                      trust_params, adopting, now);
    CHECK(traced == std::set<DeviceId>{kB});
  }
  SUBCASE("window boundaries are inclusive") {
    EpidemicParams tight = params;
    tight.trace_window = 50;  // window [50, 100]
    const std::vector<sim::ContactRecord> contacts{
        meet(1, 2, 21, 30),   // ends exactly at 50
        meet(1, 3, 100, 30),  // starts exactly at 100
    };
    const auto traced = forward_trace(contacts, store, kA, 100, tight,
                                      trust_params, adopting, now);
    CHECK(traced == std::set<DeviceId>{kB, DeviceId{3}});
  }
  SUBCASE("contacts fully before the window are excluded") {
    EpidemicParams tight = params;
    tight.trace_window = 50;
    const std::vector<sim::ContactRecord> contacts{meet(1, 2, 10, 30)};
    CHECK(forward_trace(contacts, store, kA, 100, tight, trust_params,
                        adopting, now)
              .empty());
  }
  SUBCASE("weak contacts are excluded") {
    // One tick at 40 meters scores far below the 0.3 threshold.
    const std::vector<sim::ContactRecord> contacts{meet(1, 2, 60, 1, 40.0)};
    CHECK(forward_trace(contacts, store, kA, 100, params, trust_params,
                        adopting, now)
              .empty());
  }
  SUBCASE("non-adopting peers and indexes are invisible") {
    const std::vector<sim::ContactRecord> contacts{meet(1, 2, 60, 30)};
    const std::set<DeviceId> only_index{kA};
    CHECK(forward_trace(contacts, store, kA, 100, params, trust_params,
                        only_index, now)
              .empty());
    const std::set<DeviceId> only_peer{kB};
    CHECK(forward_trace(contacts, store, kA, 100, params, trust_params,
                        only_peer, now)
              .empty());
  }
}

TEST_CASE("backward tracing ranks plausible infectors") {
  trust::TrustModelParams trust_params;
  trust::TrustStore store;
  const auto params = tracing_params();
  const Tick now = 1000;

  SUBCASE("the upstream neighbor is the only candidate") {
    // z meets a, then a meets b; b's onset follows a's.
    const std::vector<sim::ContactRecord> contacts{meet(0, 1, 0, 30),
                                                   meet(1, 2, 40, 30)};
    const OnsetMap onsets{{kZ, 0}, {kA, 35}, {kB, 60}};
    const std::set<DeviceId> adopting{kZ, kA, kB};
    const auto candidates = backward_trace(contacts, store, kB, 60, onsets,
                                           params, trust_params, adopting, now);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].id == kA);
    CHECK(candidates[0].contact_time == 40);
  }
  SUBCASE("stronger contacts rank first") {
    const std::vector<sim::ContactRecord> contacts{
        meet(1, 2, 40, 30, 1.0),   // weight ~0.52
        meet(2, 3, 45, 200, 0.0),  // weight ~0.999
    };
    const OnsetMap onsets{{kA, 10}, {kB, 100}, {DeviceId{3}, 20}};
    const std::set<DeviceId> adopting{kA, kB, DeviceId{3}};
    const auto candidates = backward_trace(contacts, store, kB, 100, onsets,
                                           params, trust_params, adopting, now);
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0].id == DeviceId{3});
    CHECK(candidates[1].id == kA);
    CHECK(candidates[0].weight > candidates[1].weight);
  }
  SUBCASE("equal weights break by earlier contact, then smaller id") {
    const std::vector<sim::ContactRecord> contacts{
        meet(2, 5, 50, 30, 1.0), meet(2, 4, 40, 30, 1.0),
        meet(2, 3, 40, 30, 1.0)};
    const OnsetMap onsets{
        {kB, 100}, {DeviceId{3}, 1}, {DeviceId{4}, 2}, {DeviceId{5}, 3}};
    const std::set<DeviceId> adopting{kB, DeviceId{3}, DeviceId{4},
                                      DeviceId{5}};
    const auto candidates = backward_trace(contacts, store, kB, 100, onsets,
                                           params, trust_params, adopting, now);
    REQUIRE(candidates.size() == 3);
    CHECK(candidates[0].id == DeviceId{3});  // tick 40, smaller id
    CHECK(candidates[1].id == DeviceId{4});  // tick 40
    CHECK(candidates[2].id == DeviceId{5});  // tick 50
  }
  SUBCASE("peers without an earlier confirmed onset are excluded") {
    const std::vector<sim::ContactRecord> contacts{meet(1, 2, 40, 30)};
    const std::set<DeviceId> adopting{kA, kB};
    // Identical onset: not strictly earlier.
    CHECK(backward_trace(contacts, store, kB, 60, OnsetMap{{kA, 60}, {kB, 60}},
                         params, trust_params, adopting, now)
              .empty());
    // Unconfirmed peer: no onset at all.
    CHECK(backward_trace(contacts, store, kB, 60, OnsetMap{{kB, 60}}, params,
                         trust_params, adopting, now)
              .empty());
  }
  SUBCASE("no contacts means no candidates") {
    CHECK(backward_trace({}, store, kB, 60, OnsetMap{{kB, 60}}, params,
                         trust_params, {kB}, now)
              .empty());
  }
}

TEST_CASE("patient-zero walks recover the chain") {
  trust::TrustModelParams trust_params;
  trust::TrustStore store;
  const auto params = tracing_params();
  const Tick now = 1000;
  const std::vector<sim::ContactRecord> contacts{meet(0, 1, 0, 30),
                                                 meet(1, 2, 40, 30)};
  const OnsetMap onsets{{kZ, 0}, {kA, 35}, {kB, 60}};
  const std::vector<LedgerEntry> ledger{{kZ, kA, 20}, {kA, kB, 55}};
  const std::set<DeviceId> adopting{kZ, kA, kB};

  SUBCASE("full chain, full coverage") {
    const auto report = trace_to_patient_zero(contacts, store, kB, onsets,
                                              ledger, params, trust_params,
                                              adopting, now);
    CHECK(report.index_case == kB);
    CHECK(report.inferred_chain == std::vector<DeviceId>{kZ, kA, kB});
    CHECK(report.patient_zero_estimate == kZ);
    CHECK(report.coverage == 1.0);
    CHECK_FALSE(report.cycle_detected);
    CHECK(report.backward_set == std::set<DeviceId>{kZ, kA});
    CHECK(report.patient_zero_estimate == ledger_root(ledger, kB));
  }
  SUBCASE("an index with no candidates is its own estimate") {
    const auto report = trace_to_patient_zero(
        contacts, store, kZ, onsets, ledger, params, trust_params, adopting,
        now);
    CHECK(report.inferred_chain == std::vector<DeviceId>{kZ});
    CHECK(report.patient_zero_estimate == kZ);
  }
  SUBCASE("a non-adopting middle hop stops the walk") {
    const std::set<DeviceId> partial{kZ, kB};
    const auto report = trace_to_patient_zero(contacts, store, kB, onsets,
                                              ledger, params, trust_params,
                                              partial, now);
    CHECK(report.inferred_chain == std::vector<DeviceId>{kB});
    CHECK(report.patient_zero_estimate == kB);
    CHECK(report.coverage < 1.0);
  }
  SUBCASE("the walk never reads the ledger") {
    const std::vector<LedgerEntry> reversed{{kA, kB, 55}, {kZ, kA, 20}};
    const auto base = trace_to_patient_zero(contacts, store, kB, onsets,
                                            ledger, params, trust_params,
                                            adopting, now);
    const auto swapped = trace_to_patient_zero(contacts, store, kB, onsets,
                                               reversed, params, trust_params,
                                               adopting, now);
    CHECK(swapped.inferred_chain == base.inferred_chain);
    CHECK(swapped.forward_set == base.forward_set);
    CHECK(swapped.backward_set == base.backward_set);
    CHECK(swapped.coverage == base.coverage);

    // A doctored ledger changes only the score, never the inference.
    const std::vector<LedgerEntry> doctored{
        {kZ, kA, 20}, {kA, kB, 55}, {kB, kZ, 70}};
    const auto scored = trace_to_patient_zero(contacts, store, kB, onsets,
                                              doctored, params, trust_params,
                                              adopting, now);
    CHECK(scored.inferred_chain == base.inferred_chain);
    CHECK(scored.coverage == doctest::Approx(2.0 / 3.0));
  }
}

TEST_CASE("forward-only coverage scores directed index edges") {
  trust::TrustModelParams trust_params;
  trust::TrustStore store;
  const auto params = tracing_params();
  const Tick now = 1000;
  const std::vector<sim::ContactRecord> contacts{meet(0, 1, 0, 30),
                                                 meet(1, 2, 40, 30)};
  const std::vector<LedgerEntry> ledger{{kZ, kA, 20}, {kA, kB, 55}};
  const std::set<DeviceId> adopting{kZ, kA, kB};

  // The latest case only has upstream contacts: zero forward recovery.
  CHECK(forward_only_coverage(contacts, store, kB, 70, ledger, params,
                              trust_params, adopting, now) == 0.0);
  // The true origin recovers its own outgoing edge, half the ledger.
  CHECK(forward_only_coverage(contacts, store, kZ, 10, ledger, params,
                              trust_params, adopting, now) == 0.5);
}

TEST_CASE("super-spreader rankings") {
  SUBCASE("ledger mode ranks by out-degree with id tie-breaks") {
    const std::vector<LedgerEntry> ledger{{DeviceId{0}, DeviceId{1}, 1},
                                          {DeviceId{0}, DeviceId{2}, 2},
                                          {DeviceId{0}, DeviceId{3}, 3},
                                          {DeviceId{9}, DeviceId{7}, 4},
                                          {DeviceId{4}, DeviceId{8}, 5}};
    const auto top = find_super_spreaders(ledger, 5);
    REQUIRE(top.size() == 3);
    CHECK(top[0].id == DeviceId{0});
    CHECK(top[0].count == 3);
    CHECK(top[1].id == DeviceId{4});  // ties on count 1: 4 before 9
    CHECK(top[2].id == DeviceId{9});

    const auto truncated = find_super_spreaders(ledger, 1);
    REQUIRE(truncated.size() == 1);
    CHECK(truncated[0].id == DeviceId{0});
  }
  SUBCASE("inference mode counts distinct qualifying peers") {
    trust::TrustModelParams trust_params;
    trust::TrustStore store;
    const auto params = tracing_params();
    std::vector<sim::ContactRecord> contacts;
    for (std::uint64_t leaf = 1; leaf <= 5; ++leaf) {
      contacts.push_back(meet(0, leaf, 10 * leaf, 30));
    }
    std::set<DeviceId> adopting;
    for (std::uint64_t i = 0; i <= 5; ++i) adopting.insert(DeviceId{i});

    const auto top = find_super_spreaders(contacts, store, params,
                                          trust_params, adopting, 3, 1000);
    REQUIRE(top.size() == 3);
    CHECK(top[0].id == DeviceId{0});
    CHECK(top[0].count == 5);
    CHECK(top[1].id == DeviceId{1});  // leaves tie at one peer each
    CHECK(top[1].count == 1);
    CHECK(top[2].id == DeviceId{2});

    // Dropping the hub from the adopting set hides all its contacts.
    adopting.erase(DeviceId{0});
    CHECK(find_super_spreaders(contacts, store, params, trust_params,
                               adopting, 3, 1000)
              .empty());
  }
}

TEST_CASE("ledger root follows ground-truth parents") {
  const std::vector<LedgerEntry> ledger{{kZ, kA, 20}, {kA, kB, 55}};
  CHECK(ledger_root(ledger, kB) == kZ);
  CHECK(ledger_root(ledger, kA) == kZ);
  CHECK(ledger_root(ledger, kZ) == kZ);
  CHECK(ledger_root(ledger, DeviceId{42}) == DeviceId{42});
  CHECK(ledger_root({}, kB) == kB);
}
