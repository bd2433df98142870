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

#ifndef MESHTRUST_SIM_CONFIG_H_
#define MESHTRUST_SIM_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "meshtrust/core/ids.h"
#include "meshtrust/epidemic/state.h"
#include "meshtrust/messaging/envelope.h"
#include "meshtrust/sim/node.h"
#include "meshtrust/sim/triggers.h"
#include "meshtrust/trust/model.h"
#include "meshtrust/trust/params.h"

namespace meshtrust::sim {

struct ModeFlipRule {
  Tick tick = 0;
  DeviceId device;
  bool airplane_mode = false;
};

struct TriggerConfig {
  std::optional<int> peers_in_proximity_threshold;
  bool no_infrastructure = false;
  std::vector<std::pair<Tick, DeviceId>> user_instructions;
  std::vector<ModeFlipRule> mode_flips;
};

struct MessageSpec {
  Tick tick = 0;
  DeviceId sender;
  DeviceId receiver;
  std::string body;
  std::size_t partitions = 4;
  double tx_threshold = 0.5;
  double rx_threshold = 0.2;
  double theta_full = 0.8;
  messaging::RevealMode mode = messaging::RevealMode::kDeterministic;
  double temperature = 0.05;
  ProfileKey profile = kDefaultProfile;
  bool prefer_internet = false;  // session policy for this message
};

// A scripted, typed interaction applied at a tick in addition to sensed
// proximity contacts (e.g. a handshake or health consult with a
// configured quality).
struct InteractionSpec {
  Tick tick = 0;
  DeviceId a;
  DeviceId b;
  trust::InteractionKind kind = trust::InteractionKind::kHandshake;
  double quality = 0.5;
  Tick duration = 1;
  double distance = 1.0;
  ProfileKey profile = kDefaultProfile;
};

struct NodeGeneratorConfig {
  std::size_t count = 0;
  double radio_range = 30.0;
  double internet_fraction = 0.3;
  double min_speed = 0.0;
  double max_speed = 1.5;
  std::vector<std::string> interest_pool;
  std::vector<std::string> app_pool;
  std::size_t max_interests = 3;
  std::size_t max_apps = 3;
};

struct EpidemicConfig {
  epidemic::EpidemicParams params;
  std::vector<DeviceId> initial_infectious;
  std::size_t seed_count = 0;  // random seeds drawn when no explicit list
};

struct NodeConfig {
  DeviceNode node;
  std::string zone;  // optional registry zone label
};

struct SimConfig {
  std::uint64_t seed = 0;
  Tick ticks_total = 0;
  double tick_length_s = 60.0;
  double arena_width = 0.0;
  double arena_height = 0.0;
  double contact_radius = 0.0;
  trust::TrustModelParams trust;
  TriggerConfig triggers;
  std::vector<NodeConfig> nodes;
  std::optional<NodeGeneratorConfig> node_generator;
  std::map<std::string, std::vector<DeviceId>> registry;
  std::vector<MessageSpec> messages;
  std::vector<InteractionSpec> interactions;
  std::optional<EpidemicConfig> epidemic;
  std::optional<std::string> mobility_trace;  // path relative to the config
};

// Parses and cross-validates a scenario document. Every violated
// constraint produces one diagnostic with its field path; an empty
// diagnostics vector means the returned config is usable.
SimConfig parse_config(const nlohmann::json& doc,
                       std::vector<std::string>& diagnostics);

// Applies one `dotted.path=value` override to the document before
// parsing. Values parse as JSON when possible, else as strings.
// Throws Error on a malformed assignment.
void apply_override(nlohmann::json& doc, const std::string& assignment);

struct LoadedScenario {
  SimConfig config;
  nlohmann::json document;        // post-override
  std::string config_hash;        // FNV-1a of the raw file bytes, hex
  std::filesystem::path base_dir; // for resolving relative paths
};

// Reads, overrides, parses and validates a scenario file. Throws Error on
// I/O or JSON syntax problems and ConfigError listing every violated
// constraint.
LoadedScenario load_scenario(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides);

}  // namespace meshtrust::sim

#endif  // MESHTRUST_SIM_CONFIG_H_
