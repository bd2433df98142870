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

#include "meshtrust/messaging/slow_reveal.h"

#include <algorithm>
#include <mutex>

#include "meshtrust/core/errors.h"
#include "meshtrust/trust/model.h"

namespace meshtrust::messaging {

namespace {

// Keystream block for partition `index`: successive splitmix64 outputs
// from a state mixed out of (seed, key_id, index), emitted little-endian.
std::vector<std::uint8_t> keystream(std::uint64_t seed, std::uint64_t key_id,
                                    std::size_t index, std::size_t length) {
  std::uint64_t state = seed;
  state = splitmix64(state) ^ key_id;
  state = splitmix64(state) ^ static_cast<std::uint64_t>(index);
  std::vector<std::uint8_t> out(length);
  std::size_t written = 0;
  while (written < length) {
    std::uint64_t word = splitmix64(state);
    for (int b = 0; b < 8 && written < length; ++b) {
      out[written++] = static_cast<std::uint8_t>(word >> (8 * b));
    }
  }
  return out;
}

std::vector<std::uint8_t> xor_block(std::span<const std::uint8_t> data,
                                    std::uint64_t seed, std::uint64_t key_id,
                                    std::size_t index) {
  const auto stream = keystream(seed, key_id, index, data.size());
  std::vector<std::uint8_t> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i] ^ stream[i];
  return out;
}

}  // namespace

SlowRevealEnvelope encode(std::span<const std::uint8_t> plaintext,
                          std::size_t k, double tx_threshold,
                          double rx_threshold, double theta_full,
                          const SecurityKey& key, RevealMode mode,
                          const EncodeParams& params) {
  if (plaintext.empty()) throw EmptyPlaintextError("plaintext is empty");
  if (k < 1) throw Error("partition count must be >= 1");
  if (rx_threshold > theta_full) {
    throw Error("rx_threshold must not exceed theta_full");
  }
  SlowRevealEnvelope e;
  e.sender = params.sender;
  e.receiver = params.receiver;
  e.profile = params.profile;
  e.tx_threshold = tx_threshold;
  e.rx_threshold = rx_threshold;
  e.key_id = key.key_id;
  e.sent_at = params.sent_at;
  e.reveal_mode = mode;
  e.temperature = params.temperature;

  const std::size_t n = plaintext.size();
  const std::size_t block = (n + k - 1) / k;
  const double span = theta_full - rx_threshold;
  const double denom = static_cast<double>(std::max<std::size_t>(k - 1, 1));
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t begin = std::min(i * block, n);
    const std::size_t end = std::min(begin + block, n);
    e.partitions.push_back(
        xor_block(plaintext.subspan(begin, end - begin), key.seed, key.key_id, i));
    e.partition_thresholds.push_back(rx_threshold +
                                     static_cast<double>(i) * span / denom);
  }
  return e;
}

SlowRevealEnvelope encode_text(std::string_view plaintext, std::size_t k,
                               double tx_threshold, double rx_threshold,
                               double theta_full, const SecurityKey& key,
                               RevealMode mode, const EncodeParams& params) {
  return encode(
      std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(plaintext.data()),
          plaintext.size()),
      k, tx_threshold, rx_threshold, theta_full, key, mode, params);
}

TransmissionDecision send(const trust::TrustStore& store,
                          const SlowRevealEnvelope& envelope, Tick now,
                          const trust::TrustModelParams& params) {
  TransmissionDecision d;
  d.score = store.get_score(envelope.sender, envelope.receiver,
                            envelope.profile, now, params);
  d.required = envelope.tx_threshold;
  d.permitted = d.score >= d.required;
  return d;
}

void require_transmission(const TransmissionDecision& decision) {
  if (!decision.permitted) {
    throw BelowTransmissionThresholdError(decision.score, decision.required);
  }
}

std::vector<std::uint8_t> RevealResult::prefix_bytes() const {
  std::vector<std::uint8_t> out;
  std::size_t expect = 0;
  for (const auto& [index, bytes] : plaintext_fragments) {
    if (index != expect) break;
    out.insert(out.end(), bytes.begin(), bytes.end());
    ++expect;
  }
  return out;
}

std::vector<bool> RevealLedger::mask(std::uint64_t key_id,
                                     std::size_t k) const {
  std::shared_lock lock(mutex_);
  auto it = masks_.find(key_id);
  if (it == masks_.end()) return std::vector<bool>(k, false);
  return it->second;
}

void RevealLedger::mark_revealed(std::uint64_t key_id, std::size_t k,
                                 const std::set<std::size_t>& indices) {
  std::unique_lock lock(mutex_);
  auto& mask = masks_[key_id];
  mask.resize(k, false);
  for (std::size_t i : indices) {
    if (i < k) mask[i] = true;
  }
}

RevealResult attempt_decode(const trust::TrustStore& store,
                            RevealLedger& ledger,
                            const SlowRevealEnvelope& envelope,
                            const SecurityKey& key, Tick now,
                            const trust::TrustModelParams& params, Rng& rng) {
  if (key.key_id != envelope.key_id) {
    throw KeyMismatchError("security key does not match envelope");
  }
  const std::size_t k = envelope.partitions.size();
  const double T = store.get_score(envelope.receiver, envelope.sender,
                                   envelope.profile, now, params);
  auto mask = ledger.mask(envelope.key_id, k);

  // Below the reception gate nothing new unlocks; earlier reveals stand.
  if (T >= envelope.rx_threshold) {
    std::set<std::size_t> newly;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask[i]) continue;
      const double theta = envelope.partition_thresholds[i];
      const bool reveal =
          envelope.reveal_mode == RevealMode::kDeterministic
              ? T >= theta
              : rng.bernoulli(trust::logistic((T - theta) / envelope.temperature));
      if (reveal) {
        mask[i] = true;
        newly.insert(i);
      }
    }
    if (!newly.empty()) ledger.mark_revealed(envelope.key_id, k, newly);
  }

  RevealResult result;
  for (std::size_t i = 0; i < k; ++i) {
    if (!mask[i]) continue;
    result.revealed_partitions.insert(i);
    result.plaintext_fragments.emplace_back(
        i, xor_block(envelope.partitions[i], key.seed, key.key_id, i));
  }
  result.complete = result.revealed_partitions.size() == k;
  return result;
}

std::vector<RevealResult> reveal_over_time(
    const trust::TrustStore& store, RevealLedger& ledger,
    const SlowRevealEnvelope& envelope, const SecurityKey& key,
    std::span<const Tick> schedule, const trust::TrustModelParams& params,
    Rng& rng) {
  std::vector<RevealResult> results;
  results.reserve(schedule.size());
  for (Tick t : schedule) {
    results.push_back(
        attempt_decode(store, ledger, envelope, key, t, params, rng));
  }
  return results;
}

}  // namespace meshtrust::messaging
