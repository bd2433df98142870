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

#ifndef MESHTRUST_CORE_HASH_H_
#define MESHTRUST_CORE_HASH_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace meshtrust {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

// FNV-1a over raw bytes; stable fingerprint for config files and logs.
constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string to_hex(std::uint64_t value);

}  // namespace meshtrust

#endif  // MESHTRUST_CORE_HASH_H_
