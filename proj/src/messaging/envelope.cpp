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

#include "meshtrust/messaging/envelope.h"

#include <bit>
#include <cstring>

#include <json.hpp>

#include "meshtrust/core/errors.h"

namespace meshtrust::messaging {

namespace {

constexpr std::uint8_t kMagic[4] = {'M', 'T', 'E', 'V'};
constexpr std::uint8_t kFormatVersion = 1;

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) {
  out.push_back(v);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return take(1)[0]; }

  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw Error("truncated envelope");
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

}  // namespace

std::size_t SlowRevealEnvelope::total_payload_bytes() const {
  std::size_t n = 0;
  for (const auto& p : partitions) n += p.size();
  return n;
}

std::vector<std::uint8_t> serialize(const SlowRevealEnvelope& envelope) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u8(out, kFormatVersion);
  put_u64(out, envelope.sender.value);
  put_u64(out, envelope.receiver.value);
  put_u32(out, static_cast<std::uint32_t>(envelope.profile.size()));
  out.insert(out.end(), envelope.profile.begin(), envelope.profile.end());
  put_f64(out, envelope.tx_threshold);
  put_f64(out, envelope.rx_threshold);
  put_u64(out, envelope.key_id);
  put_u64(out, static_cast<std::uint64_t>(envelope.sent_at));
  put_u8(out, envelope.reveal_mode == RevealMode::kProbabilistic ? 1 : 0);
  put_f64(out, envelope.temperature);
  put_u32(out, static_cast<std::uint32_t>(envelope.partitions.size()));
  for (double t : envelope.partition_thresholds) put_f64(out, t);
  for (const auto& block : envelope.partitions) {
    put_u32(out, static_cast<std::uint32_t>(block.size()));
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

SlowRevealEnvelope deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    throw Error("bad envelope magic");
  }
  if (r.u8() != kFormatVersion) throw Error("unsupported envelope version");
  SlowRevealEnvelope e;
  e.sender = DeviceId{r.u64()};
  e.receiver = DeviceId{r.u64()};
  const auto profile_len = r.u32();
  auto profile_bytes = r.take(profile_len);
  e.profile.assign(profile_bytes.begin(), profile_bytes.end());
  e.tx_threshold = r.f64();
  e.rx_threshold = r.f64();
  e.key_id = r.u64();
  e.sent_at = static_cast<Tick>(r.u64());
  e.reveal_mode = r.u8() == 1 ? RevealMode::kProbabilistic
                              : RevealMode::kDeterministic;
  e.temperature = r.f64();
  const auto k = r.u32();
  e.partition_thresholds.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) e.partition_thresholds.push_back(r.f64());
  e.partitions.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto len = r.u32();
    auto block = r.take(len);
    e.partitions.emplace_back(block.begin(), block.end());
  }
  if (!r.exhausted()) throw Error("trailing bytes after envelope");
  return e;
}

std::string to_debug_json(const SlowRevealEnvelope& envelope) {
  nlohmann::json j;
  j["sender"] = envelope.sender.value;
  j["receiver"] = envelope.receiver.value;
  j["profile"] = envelope.profile;
  j["tx_threshold"] = envelope.tx_threshold;
  j["rx_threshold"] = envelope.rx_threshold;
  j["key_id"] = envelope.key_id;
  j["sent_at"] = envelope.sent_at;
  j["reveal_mode"] = envelope.reveal_mode == RevealMode::kProbabilistic
                         ? "probabilistic"
                         : "deterministic";
  j["temperature"] = envelope.temperature;
  j["partition_thresholds"] = envelope.partition_thresholds;
  auto& parts = j["partitions"] = nlohmann::json::array();
  for (const auto& block : envelope.partitions) parts.push_back(to_hex(block));
  return j.dump();
}

}  // namespace meshtrust::messaging
