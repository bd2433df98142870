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

#ifndef MESHTRUST_MESSAGING_ENVELOPE_H_
#define MESHTRUST_MESSAGING_ENVELOPE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "meshtrust/core/ids.h"

namespace meshtrust::messaging {

enum class RevealMode { kDeterministic, kProbabilistic };

// Key issued by the sender to the receiver ahead of transmission. The
// seed drives the partition keystreams; key_id ties decode attempts to
// the envelope they belong to.
struct SecurityKey {
  std::uint64_t key_id = 0;
  std::uint64_t seed = 0;
};

// Partitioned message whose blocks unlock as receiver-side trust crosses
// the per-partition thresholds.
//
// Invariants: partitions and partition_thresholds have equal length >= 1;
// partition_thresholds[0] == rx_threshold; thresholds non-decreasing,
// all in [0,1]; temperature > 0 and meaningful only in probabilistic mode.
struct SlowRevealEnvelope {
  DeviceId sender;
  DeviceId receiver;
  ProfileKey profile = kDefaultProfile;
  std::vector<std::vector<std::uint8_t>> partitions;
  std::vector<double> partition_thresholds;
  double tx_threshold = 0.0;
  double rx_threshold = 0.0;
  std::uint64_t key_id = 0;
  Tick sent_at = 0;
  RevealMode reveal_mode = RevealMode::kDeterministic;
  double temperature = 0.05;

  std::size_t partition_count() const { return partitions.size(); }
  std::size_t total_payload_bytes() const;

  bool operator==(const SlowRevealEnvelope&) const = default;
};

// Length-prefixed binary layout: magic, version, header fields in fixed
// order, little-endian integers, thresholds as IEEE-754 bit patterns.
// Round-trips bit-exactly.
std::vector<std::uint8_t> serialize(const SlowRevealEnvelope& envelope);

// Throws Error on truncated or malformed input.
SlowRevealEnvelope deserialize(std::span<const std::uint8_t> bytes);

// Human-readable JSON rendering (payload bytes as hex) for debugging and
// logs. Not an interchange format; use serialize() for that.
std::string to_debug_json(const SlowRevealEnvelope& envelope);

}  // namespace meshtrust::messaging

#endif  // MESHTRUST_MESSAGING_ENVELOPE_H_
