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

#include "meshtrust/sim/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "meshtrust/core/errors.h"
#include "meshtrust/core/hash.h"

namespace meshtrust::sim {

namespace {

using nlohmann::json;

// Collects diagnostics, prefixing each with its field path.
class Check {
 public:
  explicit Check(std::vector<std::string>& out) : out_(out) {}

  void fail(const std::string& path, const std::string& message) {
    out_.push_back(path + " " + message);
  }

  // Returns the value when present and numeric, recording a diagnostic
  // otherwise.
  std::optional<double> number(const json& obj, const std::string& path,
                               const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_number()) {
      fail(path + "." + key, "must be a number");
      return std::nullopt;
    }
    return obj[key].get<double>();
  }

  std::optional<Tick> integer(const json& obj, const std::string& path,
                              const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_number_integer()) {
      fail(path + "." + key, "must be an integer");
      return std::nullopt;
    }
    return obj[key].get<Tick>();
  }

  std::optional<bool> boolean(const json& obj, const std::string& path,
                              const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_boolean()) {
      fail(path + "." + key, "must be a boolean");
      return std::nullopt;
    }
    return obj[key].get<bool>();
  }

  std::optional<std::string> text(const json& obj, const std::string& path,
                                  const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_string()) {
      fail(path + "." + key, "must be a string");
      return std::nullopt;
    }
    return obj[key].get<std::string>();
  }

 private:
  std::vector<std::string>& out_;
};

std::set<std::string> string_set(Check& check, const json& obj,
                                 const std::string& path,
                                 const std::string& key) {
  std::set<std::string> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array()) {
    check.fail(path + "." + key, "must be an array of strings");
    return out;
  }
  for (const auto& item : obj[key]) {
    if (!item.is_string()) {
      check.fail(path + "." + key, "must contain only strings");
      return out;
    }
    out.insert(item.get<std::string>());
  }
  return out;
}

void parse_trust(Check& check, const json& section,
                 trust::TrustModelParams& params) {
  const std::string p = "trust";
  if (auto v = check.number(section, p, "w_prev")) params.w_prev = *v;
  if (auto v = check.number(section, p, "w_peer")) params.w_peer = *v;
  if (auto v = check.number(section, p, "w_interests")) params.w_interests = *v;
  if (auto v = check.number(section, p, "w_apps")) params.w_apps = *v;
  if (auto v = check.number(section, p, "w_prox")) params.w_prox = *v;
  if (auto v = check.number(section, p, "w_phys")) params.w_phys = *v;
  if (auto v = check.number(section, p, "eta")) params.eta = *v;
  if (auto v = check.integer(section, p, "half_life_ticks")) {
    params.half_life_ticks = *v;
  }
  if (auto v = check.number(section, p, "s_base")) params.s_base = *v;
  if (auto v = check.number(section, p, "tau_peer")) params.tau_peer = *v;
  if (auto v = check.integer(section, p, "session_window_ticks")) {
    params.session_window_ticks = *v;
  }
  if (auto v = check.integer(section, p, "tau_d_ticks")) params.tau_d_ticks = *v;
  if (auto v = check.number(section, p, "rho_m")) params.rho_m = *v;

  for (double w : {params.w_prev, params.w_peer, params.w_interests,
                   params.w_apps, params.w_prox, params.w_phys}) {
    if (w < 0.0) {
      check.fail(p, "factor weights must be >= 0");
      break;
    }
  }
  if (params.w_prev + params.w_peer + params.w_interests + params.w_apps +
          params.w_prox + params.w_phys <=
      0.0) {
    check.fail(p, "factor weights must not all be zero");
  }
  if (params.eta <= 0.0 || params.eta > 1.0) {
    check.fail(p + ".eta", "must be in (0, 1]");
  }
  if (params.half_life_ticks < 1) {
    check.fail(p + ".half_life_ticks", "must be >= 1");
  }
  if (params.s_base < 0.0 || params.s_base > 1.0) {
    check.fail(p + ".s_base", "must be in [0, 1]");
  }
  if (params.tau_peer < 0.0 || params.tau_peer > 1.0) {
    check.fail(p + ".tau_peer", "must be in [0, 1]");
  }
  if (params.session_window_ticks < 0) {
    check.fail(p + ".session_window_ticks", "must be >= 0");
  }
  if (params.tau_d_ticks < 1) check.fail(p + ".tau_d_ticks", "must be >= 1");
  if (params.rho_m <= 0.0) check.fail(p + ".rho_m", "must be > 0");
}

void parse_nodes(Check& check, const json& array, SimConfig& cfg) {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const std::string p = "nodes[" + std::to_string(i) + "]";
    const json& entry = array[i];
    if (!entry.is_object()) {
      check.fail(p, "must be an object");
      continue;
    }
    NodeConfig nc;
    if (!entry.contains("id") || !entry["id"].is_number_unsigned()) {
      check.fail(p + ".id", "required unsigned integer");
      continue;
    }
    nc.node.id = DeviceId{entry["id"].get<std::uint64_t>()};
    if (!seen.insert(nc.node.id.value).second) {
      check.fail(p + ".id", "duplicate device id " +
                                std::to_string(nc.node.id.value));
    }
    const auto x = check.number(entry, p, "x");
    const auto y = check.number(entry, p, "y");
    if (!x || !y) {
      if (!entry.contains("x")) check.fail(p + ".x", "required");
      if (!entry.contains("y")) check.fail(p + ".y", "required");
    } else {
      nc.node.position = {*x, *y};
      if (*x < 0 || *x > cfg.arena_width || *y < 0 || *y > cfg.arena_height) {
        check.fail(p, "position must lie inside the arena");
      }
    }
    nc.node.radio_range = check.number(entry, p, "radio_range").value_or(30.0);
    if (nc.node.radio_range <= 0.0) {
      check.fail(p + ".radio_range", "must be > 0");
    }
    nc.node.has_internet = check.boolean(entry, p, "has_internet").value_or(false);
    nc.node.airplane_mode =
        check.boolean(entry, p, "airplane_mode").value_or(false);
    nc.node.interests = string_set(check, entry, p, "interests");
    nc.node.apps = string_set(check, entry, p, "apps");
    nc.node.mobility.speed = check.number(entry, p, "speed").value_or(0.0);
    if (nc.node.mobility.speed < 0.0) check.fail(p + ".speed", "must be >= 0");
    nc.node.mobility.target = nc.node.position;
    nc.zone = check.text(entry, p, "zone").value_or("");
    cfg.nodes.push_back(std::move(nc));
  }
}

void parse_node_generator(Check& check, const json& section, SimConfig& cfg) {
  const std::string p = "node_generator";
  NodeGeneratorConfig gen;
  if (!section.contains("count") || !section["count"].is_number_unsigned() ||
      section["count"].get<std::uint64_t>() == 0) {
    check.fail(p + ".count", "required positive integer");
  } else {
    gen.count = section["count"].get<std::size_t>();
  }
  gen.radio_range = check.number(section, p, "radio_range").value_or(30.0);
  if (gen.radio_range <= 0.0) check.fail(p + ".radio_range", "must be > 0");
  gen.internet_fraction =
      check.number(section, p, "internet_fraction").value_or(0.3);
  if (gen.internet_fraction < 0.0 || gen.internet_fraction > 1.0) {
    check.fail(p + ".internet_fraction", "must be in [0, 1]");
  }
  gen.min_speed = check.number(section, p, "min_speed").value_or(0.0);
  gen.max_speed = check.number(section, p, "max_speed").value_or(1.5);
  if (gen.min_speed < 0.0 || gen.max_speed < gen.min_speed) {
    check.fail(p, "speeds must satisfy 0 <= min_speed <= max_speed");
  }
  for (const auto& [key, target] :
       {std::pair{"interest_pool", &gen.interest_pool},
        std::pair{"app_pool", &gen.app_pool}}) {
    if (!section.contains(key)) continue;
    if (!section[key].is_array()) {
      check.fail(p + "." + key, "must be an array of strings");
      continue;
    }
    for (const auto& item : section[key]) {
      if (!item.is_string()) {
        check.fail(p + "." + key, "must contain only strings");
        break;
      }
      target->push_back(item.get<std::string>());
    }
  }
  if (auto v = check.integer(section, p, "max_interests")) {
    gen.max_interests = static_cast<std::size_t>(std::max<Tick>(0, *v));
  }
  if (auto v = check.integer(section, p, "max_apps")) {
    gen.max_apps = static_cast<std::size_t>(std::max<Tick>(0, *v));
  }
  cfg.node_generator = std::move(gen);
}

void parse_epidemic(Check& check, const json& section, SimConfig& cfg,
                    const std::set<std::uint64_t>& known_ids) {
  const std::string p = "epidemic";
  EpidemicConfig epi;
  auto& params = epi.params;
  if (auto v = check.number(section, p, "beta")) params.beta = *v;
  if (auto v = check.integer(section, p, "incubation")) params.incubation = *v;
  if (auto v = check.integer(section, p, "infectious_period")) {
    params.infectious_period = *v;
  }
  if (auto mode = check.text(section, p, "mode")) {
    if (*mode == "contact") {
      params.mode = epidemic::TransmissionMode::kContactBased;
    } else if (*mode == "trust_proxy") {
      params.mode = epidemic::TransmissionMode::kTrustProxy;
    } else {
      check.fail(p + ".mode", "must be \"contact\" or \"trust_proxy\"");
    }
  }
  if (auto v = check.integer(section, p, "trace_window")) {
    params.trace_window = *v;
  }
  if (auto v = check.number(section, p, "trace_threshold")) {
    params.trace_threshold = *v;
  }
  if (auto v = check.number(section, p, "adoption_rate")) {
    params.adoption_rate = *v;
  }
  if (auto v = check.number(section, p, "theta_individual")) {
    params.theta_individual = *v;
  }
  if (auto v = check.number(section, p, "theta_locality")) {
    params.theta_locality = *v;
  }
  params.confirm_delay =
      check.integer(section, p, "confirm_delay").value_or(params.infectious_period);

  if (params.beta < 0.0) check.fail(p + ".beta", "must be >= 0");
  if (params.incubation < 1) check.fail(p + ".incubation", "must be >= 1");
  if (params.infectious_period < 1) {
    check.fail(p + ".infectious_period", "must be >= 1");
  }
  if (params.trace_window < 1) check.fail(p + ".trace_window", "must be >= 1");
  if (params.trace_threshold < 0.0 || params.trace_threshold > 1.0) {
    check.fail(p + ".trace_threshold", "must be in [0, 1]");
  }
  if (params.adoption_rate < 0.0 || params.adoption_rate > 1.0) {
    check.fail(p + ".adoption_rate", "must be in [0, 1]");
  }
  if (params.theta_individual < 0.0 || params.theta_individual > 1.0) {
    check.fail(p + ".theta_individual", "must be in [0, 1]");
  }
  if (params.theta_locality < 0.0 || params.theta_locality > 1.0) {
    check.fail(p + ".theta_locality", "must be in [0, 1]");
  }
  if (!(params.theta_locality < params.theta_individual)) {
    check.fail(p, "theta_locality must be < theta_individual");
  }
  if (params.confirm_delay < 0) check.fail(p + ".confirm_delay", "must be >= 0");

  if (section.contains("initial_infectious")) {
    if (!section["initial_infectious"].is_array()) {
      check.fail(p + ".initial_infectious", "must be an array of device ids");
    } else {
      for (const auto& item : section["initial_infectious"]) {
        if (!item.is_number_unsigned()) {
          check.fail(p + ".initial_infectious", "must contain device ids");
          break;
        }
        const auto id = item.get<std::uint64_t>();
        if (!known_ids.contains(id)) {
          check.fail(p + ".initial_infectious",
                     "unknown device " + std::to_string(id));
        }
        epi.initial_infectious.push_back(DeviceId{id});
      }
    }
  }
  if (auto v = check.integer(section, p, "seed_count")) {
    if (*v < 0 || static_cast<std::size_t>(*v) > known_ids.size()) {
      check.fail(p + ".seed_count", "must be in [0, population]");
    } else {
      epi.seed_count = static_cast<std::size_t>(*v);
    }
  }
  cfg.epidemic = std::move(epi);
}

}  // namespace

SimConfig parse_config(const json& doc, std::vector<std::string>& diagnostics) {
  SimConfig cfg;
  Check check(diagnostics);
  if (!doc.is_object()) {
    check.fail("document", "must be a JSON object");
    return cfg;
  }

  const json sim = doc.value("sim", json::object());
  if (!doc.contains("sim")) {
    check.fail("sim", "section required");
  }
  if (!sim.contains("seed")) {
    check.fail("sim.seed", "required");
  } else if (!sim["seed"].is_number_unsigned()) {
    check.fail("sim.seed", "must be an unsigned integer");
  } else {
    cfg.seed = sim["seed"].get<std::uint64_t>();
  }
  if (!sim.contains("ticks_total")) {
    check.fail("sim.ticks_total", "required");
  } else if (auto v = check.integer(sim, "sim", "ticks_total")) {
    if (*v < 0) {
      check.fail("sim.ticks_total", "must be >= 0");
    } else {
      cfg.ticks_total = *v;
    }
  }
  cfg.tick_length_s = check.number(sim, "sim", "tick_length_s").value_or(60.0);
  if (cfg.tick_length_s <= 0.0) check.fail("sim.tick_length_s", "must be > 0");
  const json arena = sim.value("arena", json::object());
  if (!sim.contains("arena")) {
    check.fail("sim.arena", "required");
  } else {
    cfg.arena_width = check.number(arena, "sim.arena", "width").value_or(0.0);
    cfg.arena_height = check.number(arena, "sim.arena", "height").value_or(0.0);
    if (cfg.arena_width <= 0.0) check.fail("sim.arena.width", "must be > 0");
    if (cfg.arena_height <= 0.0) check.fail("sim.arena.height", "must be > 0");
  }
  cfg.contact_radius = check.number(sim, "sim", "contact_radius").value_or(0.0);
  if (!sim.contains("contact_radius")) {
    check.fail("sim.contact_radius", "required");
  } else if (cfg.contact_radius <= 0.0) {
    check.fail("sim.contact_radius", "must be > 0");
  }

  if (doc.contains("trust")) {
    if (!doc["trust"].is_object()) {
      check.fail("trust", "must be an object");
    } else {
      parse_trust(check, doc["trust"], cfg.trust);
    }
  } else {
    trust::TrustModelParams defaults;
    cfg.trust = defaults;
  }

  const bool has_nodes = doc.contains("nodes");
  const bool has_generator = doc.contains("node_generator");
  if (has_nodes == has_generator) {
    check.fail("nodes", has_nodes ? "and node_generator are mutually exclusive"
                                  : "or node_generator required");
  }
  if (has_nodes) {
    if (!doc["nodes"].is_array()) {
      check.fail("nodes", "must be an array");
    } else {
      parse_nodes(check, doc["nodes"], cfg);
    }
  }
  if (has_generator && !has_nodes) {
    if (!doc["node_generator"].is_object()) {
      check.fail("node_generator", "must be an object");
    } else {
      parse_node_generator(check, doc["node_generator"], cfg);
    }
  }

  // Ids resolvable by the other sections.
  std::set<std::uint64_t> known_ids;
  for (const auto& nc : cfg.nodes) known_ids.insert(nc.node.id.value);
  if (cfg.node_generator) {
    for (std::size_t i = 0; i < cfg.node_generator->count; ++i) {
      known_ids.insert(i);
    }
  }
  const auto known = [&](std::uint64_t id) { return known_ids.contains(id); };

  if (doc.contains("registry")) {
    if (!doc["registry"].is_object()) {
      check.fail("registry", "must map zone names to device id arrays");
    } else {
      for (const auto& [zone, members] : doc["registry"].items()) {
        const std::string p = "registry." + zone;
        if (!members.is_array()) {
          check.fail(p, "must be an array of device ids");
          continue;
        }
        for (const auto& item : members) {
          if (!item.is_number_unsigned()) {
            check.fail(p, "must contain device ids");
            break;
          }
          const auto id = item.get<std::uint64_t>();
          if (!known(id)) check.fail(p, "unknown device " + std::to_string(id));
          cfg.registry[zone].push_back(DeviceId{id});
        }
      }
    }
  }

  if (doc.contains("triggers")) {
    const json& trig = doc["triggers"];
    const std::string p = "triggers";
    if (!trig.is_object()) {
      check.fail(p, "must be an object");
    } else {
      if (auto v = check.integer(trig, p, "peers_in_proximity_threshold")) {
        if (*v < 1) {
          check.fail(p + ".peers_in_proximity_threshold", "must be >= 1");
        } else {
          cfg.triggers.peers_in_proximity_threshold = static_cast<int>(*v);
        }
      }
      cfg.triggers.no_infrastructure =
          check.boolean(trig, p, "no_infrastructure").value_or(false);
      if (trig.contains("user_instructions")) {
        for (std::size_t i = 0; i < trig["user_instructions"].size(); ++i) {
          const std::string q = p + ".user_instructions[" + std::to_string(i) + "]";
          const json& rule = trig["user_instructions"][i];
          const auto tick = check.integer(rule, q, "tick");
          std::uint64_t device = 0;
          bool device_ok = rule.contains("device") &&
                           rule["device"].is_number_unsigned();
          if (device_ok) device = rule["device"].get<std::uint64_t>();
          device_ok = device_ok && known(device);
          if (!tick || *tick < 0 || *tick >= cfg.ticks_total) {
            check.fail(q + ".tick", "must be in [0, ticks_total)");
          }
          if (!device_ok) check.fail(q + ".device", "must name a known device");
          if (tick && device_ok) {
            cfg.triggers.user_instructions.emplace_back(*tick,
                                                        DeviceId{device});
          }
        }
      }
      if (trig.contains("mode_flips")) {
        for (std::size_t i = 0; i < trig["mode_flips"].size(); ++i) {
          const std::string q = p + ".mode_flips[" + std::to_string(i) + "]";
          const json& rule = trig["mode_flips"][i];
          const auto tick = check.integer(rule, q, "tick");
          const auto airplane = check.boolean(rule, q, "airplane_mode");
          std::uint64_t device = 0;
          bool device_ok = rule.contains("device") &&
                           rule["device"].is_number_unsigned();
          if (device_ok) device = rule["device"].get<std::uint64_t>();
          device_ok = device_ok && known(device);
          if (!tick || *tick < 0 || *tick >= cfg.ticks_total) {
            check.fail(q + ".tick", "must be in [0, ticks_total)");
          }
          if (!device_ok) check.fail(q + ".device", "must name a known device");
          if (!airplane) check.fail(q + ".airplane_mode", "required boolean");
          if (tick && device_ok && airplane) {
            cfg.triggers.mode_flips.push_back(
                ModeFlipRule{*tick, DeviceId{device}, *airplane});
          }
        }
      }
    }
  }

  if (doc.contains("messages")) {
    if (!doc["messages"].is_array()) {
      check.fail("messages", "must be an array");
    } else {
      for (std::size_t i = 0; i < doc["messages"].size(); ++i) {
        const std::string p = "messages[" + std::to_string(i) + "]";
        const json& entry = doc["messages"][i];
        MessageSpec spec;
        const auto tick = check.integer(entry, p, "tick");
        if (!tick || *tick < 0 || *tick >= cfg.ticks_total) {
          check.fail(p + ".tick", "must be in [0, ticks_total)");
        } else {
          spec.tick = *tick;
        }
        bool endpoints_ok = true;
        for (const auto& [key, target] :
             {std::pair{"sender", &spec.sender},
              std::pair{"receiver", &spec.receiver}}) {
          if (!entry.contains(key) || !entry[key].is_number_unsigned() ||
              !known(entry[key].get<std::uint64_t>())) {
            check.fail(p + "." + key, "must name a known device");
            endpoints_ok = false;
          } else {
            *target = DeviceId{entry[key].get<std::uint64_t>()};
          }
        }
        if (endpoints_ok && spec.sender == spec.receiver) {
          check.fail(p, "sender and receiver must differ");
        }
        spec.body = check.text(entry, p, "body").value_or("");
        if (spec.body.empty()) check.fail(p + ".body", "must be non-empty");
        if (auto v = check.integer(entry, p, "partitions")) {
          if (*v < 1) {
            check.fail(p + ".partitions", "must be >= 1");
          } else {
            spec.partitions = static_cast<std::size_t>(*v);
          }
        }
        spec.tx_threshold = check.number(entry, p, "tx_threshold").value_or(0.5);
        spec.rx_threshold = check.number(entry, p, "rx_threshold").value_or(0.2);
        spec.theta_full = check.number(entry, p, "theta_full").value_or(0.8);
        for (const auto& [key, value] :
             {std::pair{"tx_threshold", spec.tx_threshold},
              std::pair{"rx_threshold", spec.rx_threshold},
              std::pair{"theta_full", spec.theta_full}}) {
          if (value < 0.0 || value > 1.0) {
            check.fail(p + "." + key, "must be in [0, 1]");
          }
        }
        if (spec.rx_threshold > spec.theta_full) {
          check.fail(p, "rx_threshold must be <= theta_full");
        }
        if (auto mode = check.text(entry, p, "mode")) {
          if (*mode == "deterministic") {
            spec.mode = messaging::RevealMode::kDeterministic;
          } else if (*mode == "probabilistic") {
            spec.mode = messaging::RevealMode::kProbabilistic;
          } else {
            check.fail(p + ".mode",
                       "must be \"deterministic\" or \"probabilistic\"");
          }
        }
        spec.temperature = check.number(entry, p, "temperature").value_or(0.05);
        if (spec.temperature <= 0.0) {
          check.fail(p + ".temperature", "must be > 0");
        }
        spec.profile = check.text(entry, p, "profile").value_or(kDefaultProfile);
        if (spec.profile.empty()) check.fail(p + ".profile", "must be non-empty");
        spec.prefer_internet =
            check.boolean(entry, p, "prefer_internet").value_or(false);
        cfg.messages.push_back(std::move(spec));
      }
    }
  }

  if (doc.contains("interactions")) {
    if (!doc["interactions"].is_array()) {
      check.fail("interactions", "must be an array");
    } else {
      for (std::size_t i = 0; i < doc["interactions"].size(); ++i) {
        const std::string p = "interactions[" + std::to_string(i) + "]";
        const json& entry = doc["interactions"][i];
        InteractionSpec spec;
        const auto tick = check.integer(entry, p, "tick");
        if (!tick || *tick < 0 || *tick >= cfg.ticks_total) {
          check.fail(p + ".tick", "must be in [0, ticks_total)");
        } else {
          spec.tick = *tick;
        }
        for (const auto& [key, target] :
             {std::pair{"a", &spec.a}, std::pair{"b", &spec.b}}) {
          if (!entry.contains(key) || !entry[key].is_number_unsigned() ||
              !known(entry[key].get<std::uint64_t>())) {
            check.fail(p + "." + key, "must name a known device");
          } else {
            *target = DeviceId{entry[key].get<std::uint64_t>()};
          }
        }
        if (spec.a == spec.b) check.fail(p, "a and b must differ");
        if (auto kind = check.text(entry, p, "kind")) {
          if (auto parsed = trust::interaction_kind_from_name(*kind)) {
            spec.kind = *parsed;
          } else {
            check.fail(p + ".kind", "unknown interaction kind \"" + *kind + "\"");
          }
        }
        spec.quality = check.number(entry, p, "quality").value_or(0.5);
        if (spec.quality < 0.0 || spec.quality > 1.0) {
          check.fail(p + ".quality", "must be in [0, 1]");
        }
        if (auto v = check.integer(entry, p, "duration")) {
          if (*v < 1) {
            check.fail(p + ".duration", "must be >= 1");
          } else {
            spec.duration = *v;
          }
        }
        spec.distance = check.number(entry, p, "distance").value_or(1.0);
        if (spec.distance < 0.0) check.fail(p + ".distance", "must be >= 0");
        spec.profile = check.text(entry, p, "profile").value_or(kDefaultProfile);
        if (spec.profile.empty()) check.fail(p + ".profile", "must be non-empty");
        cfg.interactions.push_back(std::move(spec));
      }
    }
  }

  if (doc.contains("epidemic")) {
    if (!doc["epidemic"].is_object()) {
      check.fail("epidemic", "must be an object");
    } else {
      parse_epidemic(check, doc["epidemic"], cfg, known_ids);
    }
  }

  if (doc.contains("mobility_trace")) {
    if (!doc["mobility_trace"].is_string()) {
      check.fail("mobility_trace", "must be a path string");
    } else {
      cfg.mobility_trace = doc["mobility_trace"].get<std::string>();
    }
  }

  return cfg;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error("override must have the form dotted.path=value: " + assignment);
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // unquoted strings pass through verbatim
  }

  json* cursor = &doc;
  std::size_t begin = 0;
  while (true) {
    const auto dot = path.find('.', begin);
    const std::string key = path.substr(begin, dot - begin);
    if (key.empty()) throw Error("override path has an empty segment: " + path);
    if (dot == std::string::npos) {
      (*cursor)[key] = value;
      return;
    }
    if (!cursor->contains(key) || !(*cursor)[key].is_object()) {
      (*cursor)[key] = json::object();
    }
    cursor = &(*cursor)[key];
    begin = dot + 1;
  }
}

LoadedScenario load_scenario(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string raw = buffer.str();

  LoadedScenario scenario;
  scenario.config_hash = to_hex(fnv1a64(raw));
  scenario.base_dir = path.parent_path();
  try {
    scenario.document = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw Error("config parse error: " + std::string(e.what()));
  }
  for (const auto& assignment : overrides) {
    apply_override(scenario.document, assignment);
  }
  std::vector<std::string> diagnostics;
  scenario.config = parse_config(scenario.document, diagnostics);
  if (!diagnostics.empty()) throw ConfigError(std::move(diagnostics));
  return scenario;
}

}  // namespace meshtrust::sim
