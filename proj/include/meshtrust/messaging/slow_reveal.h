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

#ifndef MESHTRUST_MESSAGING_SLOW_REVEAL_H_
#define MESHTRUST_MESSAGING_SLOW_REVEAL_H_

#include <cstdint>
#include <map>
#include <set>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

#include <string_view>

#include "meshtrust/core/rng.h"
#include "meshtrust/messaging/envelope.h"
#include "meshtrust/trust/store.h"

namespace meshtrust::messaging {

// Addressing and mode parameters for encode().
struct EncodeParams {
  DeviceId sender;
  DeviceId receiver;
  ProfileKey profile = kDefaultProfile;
  Tick sent_at = 0;
  double temperature = 0.05;
};

// Splits plaintext into k contiguous blocks of ceil(n/k) bytes (the tail
// blocks may be shorter or empty when k > n) and XORs each block with a
// keystream derived from (key.seed, key_id, block index). Partition i
// unlocks at threshold rx + i*(theta_full - rx)/max(k-1, 1).
// Throws EmptyPlaintextError on empty plaintext.
SlowRevealEnvelope encode(std::span<const std::uint8_t> plaintext,
                          std::size_t k, double tx_threshold,
                          double rx_threshold, double theta_full,
                          const SecurityKey& key, RevealMode mode,
                          const EncodeParams& params);

SlowRevealEnvelope encode_text(std::string_view plaintext, std::size_t k,
                               double tx_threshold, double rx_threshold,
                               double theta_full, const SecurityKey& key,
                               RevealMode mode, const EncodeParams& params);

// Sender-side gate outcome. permitted iff score >= required at the time
// of the check.
struct TransmissionDecision {
  bool permitted = false;
  double score = 0.0;
  double required = 0.0;
};

// Evaluates the transmission threshold against the sender's current
// trust toward the receiver (decayed to `now`).
TransmissionDecision send(const trust::TrustStore& store,
                          const SlowRevealEnvelope& envelope, Tick now,
                          const trust::TrustModelParams& params);

// Throws BelowTransmissionThresholdError unless decision.permitted.
void require_transmission(const TransmissionDecision& decision);

struct RevealResult {
  std::set<std::size_t> revealed_partitions;
  // Decoded bytes for exactly the revealed indices, ascending.
  std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>>
      plaintext_fragments;
  bool complete = false;

  // Concatenation of fragments for the leading run {0..j} of revealed
  // indices; the whole plaintext once complete.
  std::vector<std::uint8_t> prefix_bytes() const;
};

// Per-envelope cumulative reveal state for one receiver. Partitions stay
// revealed across attempts regardless of later trust decay. Reads and
// writes follow the same serialization rule as the trust store.
class RevealLedger {
 public:
  // Current mask for the envelope, created all-false on first use.
  std::vector<bool> mask(std::uint64_t key_id, std::size_t k) const;
  void mark_revealed(std::uint64_t key_id, std::size_t k,
                     const std::set<std::size_t>& indices);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::uint64_t, std::vector<bool>> masks_;
};

// Decodes whatever the receiver's current trust unlocks, plus anything
// revealed by earlier attempts. Let T = trust(receiver -> sender, now).
// T < rx_threshold unlocks nothing new. Deterministic mode reveals i iff
// T >= partition_thresholds[i]; probabilistic mode reveals i with
// probability logistic((T - threshold_i)/temperature). Throws
// KeyMismatchError when key.key_id does not match the envelope.
RevealResult attempt_decode(const trust::TrustStore& store,
                            RevealLedger& ledger,
                            const SlowRevealEnvelope& envelope,
                            const SecurityKey& key, Tick now,
                            const trust::TrustModelParams& params, Rng& rng);

// attempt_decode at each tick of a strictly increasing schedule, using
// then-current (decayed) trust. Revealed sets are non-decreasing.
std::vector<RevealResult> reveal_over_time(
    const trust::TrustStore& store, RevealLedger& ledger,
    const SlowRevealEnvelope& envelope, const SecurityKey& key,
    std::span<const Tick> schedule, const trust::TrustModelParams& params,
    Rng& rng);

}  // namespace meshtrust::messaging

#endif  // MESHTRUST_MESSAGING_SLOW_REVEAL_H_
