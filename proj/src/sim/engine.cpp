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

#include "meshtrust/sim/engine.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include "meshtrust/core/hash.h"
#include "meshtrust/discovery/discovery.h"
#include "meshtrust/routing/mesh.h"

namespace meshtrust::sim {

namespace {

using nlohmann::json;

// Substream tags; any fixed distinct values work, these spell their use.
constexpr std::uint64_t kMobilityStream = 0x6d6f62696cULL;
constexpr std::uint64_t kAdoptionStream = 0x61646f7074ULL;
constexpr std::uint64_t kEpidemicStream = 0x65706964ULL;
constexpr std::uint64_t kMessagingStream = 0x6d736773ULL;
constexpr std::uint64_t kNodegenStream = 0x6e6f6465ULL;

const char* compartment_name(epidemic::Compartment c) {
  switch (c) {
    case epidemic::Compartment::kSusceptible: return "s";
    case epidemic::Compartment::kExposed: return "e";
    case epidemic::Compartment::kInfectious: return "i";
    case epidemic::Compartment::kRecovered: return "r";
  }
  return "?";
}

const char* session_name(routing::SessionKind kind) {
  switch (kind) {
    case routing::SessionKind::kOffline: return "offline";
    case routing::SessionKind::kOnlineProximity: return "online_proximity";
    case routing::SessionKind::kHybrid: return "hybrid";
  }
  return "?";
}

std::set<std::string> draw_tokens(const std::vector<std::string>& pool,
                                  std::size_t max_count, Rng& rng) {
  std::set<std::string> out;
  if (pool.empty() || max_count == 0) return out;
  const auto count = rng.uniform_int(max_count + 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.insert(pool[rng.uniform_int(pool.size())]);
  }
  return out;
}

}  // namespace

Engine::Engine(SimConfig config, json resolved_config, std::string config_hash,
               std::optional<MobilityTrace> trace)
    : config_(std::move(config)),
      resolved_config_(std::move(resolved_config)),
      config_hash_(std::move(config_hash)),
      trace_(std::move(trace)),
      triggers_(TriggerRules{config_.triggers.peers_in_proximity_threshold,
                             config_.triggers.no_infrastructure,
                             config_.triggers.user_instructions}),
      mobility_rng_(derive_seed(config_.seed, kMobilityStream)),
      adoption_rng_(derive_seed(config_.seed, kAdoptionStream)),
      epidemic_rng_(derive_seed(config_.seed, kEpidemicStream)),
      messaging_rng_(derive_seed(config_.seed, kMessagingStream)),
      nodegen_rng_(derive_seed(config_.seed, kNodegenStream)) {
  build_population();
}

void Engine::build_population() {
  if (config_.node_generator) {
    const auto& gen = *config_.node_generator;
    const Arena arena{config_.arena_width, config_.arena_height};
    for (std::size_t i = 0; i < gen.count; ++i) {
      DeviceNode node;
      node.id = DeviceId{i};
      node.position.x = nodegen_rng_.uniform(0.0, arena.width);
      node.position.y = nodegen_rng_.uniform(0.0, arena.height);
      node.radio_range = gen.radio_range;
      node.has_internet = nodegen_rng_.bernoulli(gen.internet_fraction);
      node.mobility.speed = nodegen_rng_.uniform(gen.min_speed, gen.max_speed);
      node.mobility.target.x = nodegen_rng_.uniform(0.0, arena.width);
      node.mobility.target.y = nodegen_rng_.uniform(0.0, arena.height);
      node.interests = draw_tokens(gen.interest_pool, gen.max_interests,
                                   nodegen_rng_);
      node.apps = draw_tokens(gen.app_pool, gen.max_apps, nodegen_rng_);
      nodes_.push_back(std::move(node));
    }
  } else {
    for (const auto& nc : config_.nodes) {
      nodes_.push_back(nc.node);
      if (!nc.zone.empty()) zones_[nc.node.id] = nc.zone;
    }
    std::sort(nodes_.begin(), nodes_.end(),
              [](const DeviceNode& a, const DeviceNode& b) {
                return a.id < b.id;
              });
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_of_[nodes_[i].id] = i;
  // Registry membership is the authoritative zone assignment.
  for (const auto& [zone, members] : config_.registry) {
    for (DeviceId id : members) zones_[id] = zone;
  }
}

std::string Engine::zone_of(DeviceId id) const {
  const auto it = zones_.find(id);
  return it == zones_.end() ? "arena" : it->second;
}

void Engine::tick_phase_flips(Tick now, EventLog& log) {
  for (const auto& rule : config_.triggers.mode_flips) {
    if (rule.tick != now) continue;
    const auto it = index_of_.find(rule.device);
    if (it == index_of_.end()) continue;
    nodes_[it->second].airplane_mode = rule.airplane_mode;
    log.emit({{"type", "mode_flip"},
              {"tick", now},
              {"device", rule.device.value},
              {"airplane_mode", rule.airplane_mode}});
  }
}

void Engine::tick_phase_mobility(Tick now) {
  std::set<DeviceId> placed;
  if (trace_ && !trace_->empty()) {
    for (const auto& placement : trace_->at(now)) {
      const auto it = index_of_.find(placement.device);
      if (it == index_of_.end()) continue;
      nodes_[it->second].position = placement.position;
      placed.insert(placement.device);
    }
  }
  const Arena arena{config_.arena_width, config_.arena_height};
  for (auto& node : nodes_) {
    if (placed.contains(node.id)) continue;
    step_mobility(node, arena, mobility_rng_);
  }
}

Engine::PairScan Engine::scan_pairs() const {
  PairScan scan;
  const std::size_t n = nodes_.size();
  scan.observation.peers_in_range.assign(n, 0);
  scan.observation.infrastructure_reachable.assign(n, false);

  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance_m(nodes_[i].position, nodes_[j].position);
      if (d <= config_.contact_radius) {
        scan.active.push_back({nodes_[i].id, nodes_[j].id, d});
      }
      if (d <= std::min(nodes_[i].radio_range, nodes_[j].radio_range)) {
        scan.mesh_edges.emplace_back(nodes_[i].id, nodes_[j].id);
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }
      if (d <= nodes_[i].radio_range) ++scan.observation.peers_in_range[i];
      if (d <= nodes_[j].radio_range) ++scan.observation.peers_in_range[j];
    }
  }

  // A node reaches infrastructure when its mesh component holds any
  // internet-reachable member.
  std::vector<int> component(n, -1);
  int next_component = 0;
  std::vector<bool> component_has_internet;
  for (std::size_t start = 0; start < n; ++start) {
    if (component[start] != -1) continue;
    const int c = next_component++;
    bool has_internet = false;
    std::deque<std::size_t> queue{start};
    component[start] = c;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      if (nodes_[i].internet_reachable()) has_internet = true;
      for (std::size_t j : adjacency[i]) {
        if (component[j] == -1) {
          component[j] = c;
          queue.push_back(j);
        }
      }
    }
    component_has_internet.push_back(has_internet);
  }
  for (std::size_t i = 0; i < n; ++i) {
    scan.observation.infrastructure_reachable[i] =
        component_has_internet[static_cast<std::size_t>(component[i])];
  }
  return scan;
}

void Engine::apply_direction(DeviceId from, DeviceId to,
                             const ProfileKey& profile,
                             const trust::InteractionEvent& event, Tick now,
                             EventLog& log) {
  double score = 0.0;
  bool initial = false;
  if (store_.find(from, to, profile).has_value()) {
    score = store_.apply_interaction(from, to, profile, event, now,
                                     config_.trust);
  } else {
    const auto& nf = nodes_[index_of_.at(from)];
    const auto& nt = nodes_[index_of_.at(to)];
    const auto inputs = trust::gather_factor_inputs(
        store_, from, to, profile, nf.interests, nt.interests, nf.apps,
        nt.apps, event, now, config_.trust);
    score = trust::initial_trust(inputs, config_.trust);
    store_.set_score(from, to, profile, score, now);
    initial = true;
  }
  log.emit({{"type", "trust_update"},
            {"tick", now},
            {"from", from.value},
            {"to", to.value},
            {"profile", profile},
            {"score", score},
            {"initial", initial}});
}

void Engine::process_record(const ContactRecord& record, Tick now,
                            EventLog& log) {
  trust::InteractionEvent event;
  event.a = record.a;
  event.b = record.b;
  event.time = now;
  event.duration = record.duration;
  event.distance = record.mean_distance;
  event.kind = record.kind;
  // Passive co-presence carries no content signal; its quality is the
  // proximity score itself.
  event.quality = trust::proximity_score(record.duration,
                                         record.mean_distance, config_.trust);
  apply_direction(record.a, record.b, kDefaultProfile, event, now, log);
  apply_direction(record.b, record.a, kDefaultProfile, event, now, log);
}

void Engine::process_messages(Tick now, const routing::MeshGraph& graph,
                              EventLog& log, RunReport& report) {
  for (const auto& spec : config_.messages) {
    if (spec.tick != now) continue;
    const std::uint64_t key_id = messaging_rng_.next_u64();
    const messaging::SecurityKey key{key_id, messaging_rng_.next_u64()};
    messaging::EncodeParams params;
    params.sender = spec.sender;
    params.receiver = spec.receiver;
    params.profile = spec.profile;
    params.sent_at = now;
    params.temperature = spec.temperature;
    const auto envelope = messaging::encode_text(
        spec.body, spec.partitions, spec.tx_threshold, spec.rx_threshold,
        spec.theta_full, key, spec.mode, params);

    const auto decision = messaging::send(store_, envelope, now, config_.trust);
    log.emit({{"type", "message_send"},
              {"tick", now},
              {"key_id", key_id},
              {"sender", spec.sender.value},
              {"receiver", spec.receiver.value},
              {"permitted", decision.permitted},
              {"score", decision.score},
              {"required", decision.required}});
    if (!decision.permitted) continue;
    ++report.messages_sent;

    const bool in_proximity = graph.has_edge(spec.sender, spec.receiver);
    const auto policy = spec.prefer_internet
                            ? routing::RoutePolicy::kPreferInternet
                            : routing::RoutePolicy::kPreferOffline;
    const auto kind = routing::classify_session(graph, spec.sender,
                                                spec.receiver, in_proximity,
                                                policy);
    if (!kind) {
      log.emit({{"type", "message_route"},
                {"tick", now},
                {"key_id", key_id},
                {"session", "none"},
                {"hops", json::array()},
                {"delivered", false}});
      continue;
    }
    const auto route =
        *kind == routing::SessionKind::kOnlineProximity
            ? routing::make_online_proximity_route(spec.sender, spec.receiver)
            : *routing::find_route(graph, spec.sender, spec.receiver);
    const auto record = routing::relay(graph, route, envelope);
    for (const auto& hop : record.relay_hops) {
      log.emit({{"type", "relay_hop"},
                {"tick", now},
                {"key_id", key_id},
                {"node", hop.node.value},
                {"hop_index", hop.hop_index}});
    }
    json hops = json::array();
    for (DeviceId id : route.hops) hops.push_back(id.value);
    json route_event{{"type", "message_route"},
                     {"tick", now},
                     {"key_id", key_id},
                     {"session", session_name(route.kind)},
                     {"hops", hops},
                     {"delivered",
                      record.status == routing::DeliveryStatus::kDelivered}};
    if (route.bridge_index) route_event["bridge_index"] = *route.bridge_index;
    log.emit(route_event);
    if (record.status != routing::DeliveryStatus::kDelivered) continue;
    ++report.messages_delivered;

    const auto result =
        messaging::attempt_decode(store_, reveal_ledger_, record.delivered,
                                  key, now, config_.trust, messaging_rng_);
    json revealed = json::array();
    for (std::size_t index : result.revealed_partitions) {
      revealed.push_back(index);
    }
    log.emit({{"type", "decode_attempt"},
              {"tick", now},
              {"key_id", key_id},
              {"receiver", spec.receiver.value},
              {"trust", store_.get_score(spec.receiver, spec.sender,
                                         spec.profile, now, config_.trust)},
              {"revealed", revealed},
              {"complete", result.complete}});
  }
}

RunReport Engine::run(EventLog& log, std::ostream* compartments_csv) {
  RunReport report;
  report.end_tick = config_.ticks_total;

  log.emit({{"type", "run_header"},
            {"artifact_version", std::string(kArtifactVersion)},
            {"config_hash", config_hash_},
            {"seed", config_.seed},
            {"ticks_total", config_.ticks_total},
            {"tick_length_s", config_.tick_length_s},
            {"population", nodes_.size()},
            {"config", resolved_config_}});

  epidemic_ = config_.epidemic.has_value();
  if (epidemic_) {
    const auto& epi = *config_.epidemic;
    for (const auto& node : nodes_) {
      auto& health = state_.health[node.id];
      health.adopting = adoption_rng_.uniform01() < epi.params.adoption_rate;
      log.emit({{"type", "adoption"},
                {"tick", 0},
                {"device", node.id.value},
                {"adopting", health.adopting}});
    }
    std::vector<DeviceId> seeds = epi.initial_infectious;
    if (seeds.empty() && epi.seed_count > 0) {
      std::vector<DeviceId> ids;
      ids.reserve(nodes_.size());
      for (const auto& node : nodes_) ids.push_back(node.id);
      for (std::size_t i = 0; i < epi.seed_count && i < ids.size(); ++i) {
        const auto j = i + epidemic_rng_.uniform_int(ids.size() - i);
        std::swap(ids[i], ids[j]);
        seeds.push_back(ids[i]);
      }
      std::sort(seeds.begin(), seeds.end());
    }
    for (DeviceId id : seeds) {
      state_.seed_infectious(id, 0);
      log.emit({{"type", "compartment"},
                {"tick", 0},
                {"device", id.value},
                {"from", "s"},
                {"to", "i"}});
    }
    if (compartments_csv) *compartments_csv << "tick,s,e,i,r\n";
  }

  for (Tick now = 0; now < config_.ticks_total; ++now) {
    tick_phase_flips(now, log);
    tick_phase_mobility(now);
    const PairScan scan = scan_pairs();

    const auto tick_result = tracker_.observe(scan.active, now);
    for (const auto& [a, b] : tick_result.opened) {
      log.emit({{"type", "contact_open"},
                {"tick", now},
                {"a", a.value},
                {"b", b.value}});
    }
    for (const auto& record : tick_result.closed) {
      log.emit({{"type", "contact_close"},
                {"tick", now},
                {"a", record.a.value},
                {"b", record.b.value},
                {"start", record.start},
                {"duration", record.duration},
                {"mean_distance", record.mean_distance},
                {"kind", trust::interaction_kind_name(record.kind)}});
    }

    const auto firings = triggers_.evaluate(nodes_, scan.observation, now);
    for (const auto& firing : firings) {
      log.emit({{"type", "trigger"},
                {"tick", now},
                {"device", firing.device.value},
                {"kind", trigger_name(firing.kind)}});
      const auto& scanner = nodes_[index_of_.at(firing.device)];
      const auto results = discovery::scan(scanner, nodes_, store_);
      json peers = json::array();
      for (const auto& result : results) peers.push_back(result.peer.value);
      json event{{"type", "discovery"},
                 {"tick", now},
                 {"device", firing.device.value},
                 {"peers", peers}};
      const std::string zone = zone_of(firing.device);
      const auto members = config_.registry.find(zone);
      if (scanner.internet_reachable() && members != config_.registry.end()) {
        json registry_peers = json::array();
        for (DeviceId id : members->second) {
          if (id != firing.device) registry_peers.push_back(id.value);
        }
        event["registry_peers"] = registry_peers;
      }
      log.emit(event);
    }

    for (const auto& record : tick_result.closed) {
      contacts_.push_back(record);
      process_record(record, now, log);
    }
    for (const auto& spec : config_.interactions) {
      if (spec.tick != now) continue;
      trust::InteractionEvent event;
      event.a = spec.a;
      event.b = spec.b;
      event.time = now;
      event.duration = spec.duration;
      event.distance = spec.distance;
      event.kind = spec.kind;
      event.quality = spec.quality;
      log.emit({{"type", "interaction"},
                {"tick", now},
                {"a", spec.a.value},
                {"b", spec.b.value},
                {"kind", trust::interaction_kind_name(spec.kind)},
                {"quality", spec.quality},
                {"duration", spec.duration},
                {"distance", spec.distance},
                {"profile", spec.profile}});
      apply_direction(spec.a, spec.b, spec.profile, event, now, log);
      apply_direction(spec.b, spec.a, spec.profile, event, now, log);
    }

    bool needs_graph = false;
    for (const auto& spec : config_.messages) {
      if (spec.tick == now) needs_graph = true;
    }
    if (needs_graph) {
      const auto graph = routing::build_mesh(nodes_);
      process_messages(now, graph, log, report);
    }

    if (epidemic_) {
      const auto step =
          epidemic::infection_step(state_, scan.active, store_,
                                   config_.epidemic->params, config_.trust,
                                   now, epidemic_rng_);
      for (const auto& entry : step.infections) {
        log.emit({{"type", "infection"},
                  {"tick", now},
                  {"infector", entry.infector.value},
                  {"infectee", entry.infectee.value}});
      }
      for (const auto& transition : step.transitions) {
        log.emit({{"type", "compartment"},
                  {"tick", now},
                  {"device", transition.node.value},
                  {"from", compartment_name(transition.from)},
                  {"to", compartment_name(transition.to)}});
      }
      if (compartments_csv) {
        const auto counts = state_.counts();
        *compartments_csv << now << ',' << counts[0] << ',' << counts[1]
                          << ',' << counts[2] << ',' << counts[3] << '\n';
      }
    }
  }

  // End-of-run flush: episodes still open close at the final tick and
  // feed trust like any other closure.
  const Tick last = config_.ticks_total > 0 ? config_.ticks_total - 1 : 0;
  for (const auto& record : tracker_.close_all(last)) {
    log.emit({{"type", "contact_close"},
              {"tick", last},
              {"a", record.a.value},
              {"b", record.b.value},
              {"start", record.start},
              {"duration", record.duration},
              {"mean_distance", record.mean_distance},
              {"kind", trust::interaction_kind_name(record.kind)}});
    contacts_.push_back(record);
    process_record(record, last, log);
  }
  report.contacts_closed = contacts_.size();

  if (epidemic_) finish_epidemic_analysis(report);

  const auto counts =
      epidemic_ ? state_.counts() : std::array<std::size_t, 4>{0, 0, 0, 0};
  report.final_counts = counts;
  log.emit({{"type", "run_footer"},
            {"tick", config_.ticks_total},
            {"end_tick", config_.ticks_total},
            {"s", counts[0]},
            {"e", counts[1]},
            {"i", counts[2]},
            {"r", counts[3]}});
  return report;
}

void Engine::finish_epidemic_analysis(RunReport& report) {
  const auto& params = config_.epidemic->params;
  const Tick now = config_.ticks_total;
  const auto counts = state_.counts();
  const std::size_t population = nodes_.size();
  if (population > 0) {
    report.attack_rate =
        1.0 - static_cast<double>(counts[0]) / static_cast<double>(population);
  }

  epidemic::OnsetMap onsets;
  for (const auto& [id, health] : state_.health) {
    if (health.infectious_at) onsets[id] = *health.infectious_at;
  }
  const auto adopting = state_.adopting_set();

  // Index case: the latest confirmed onset among adopting devices, ties
  // to the smaller id.
  std::optional<DeviceId> index;
  for (const auto& [id, onset] : onsets) {
    if (!adopting.contains(id)) continue;
    if (!index || onset > onsets[*index]) index = id;
  }
  if (!index) return;

  report.trace = epidemic::trace_to_patient_zero(
      contacts_, store_, *index, onsets, state_.infection_ledger, params,
      config_.trust, adopting, now);
  const Tick t_confirmed =
      std::min<Tick>(onsets[*index] + params.confirm_delay, now);
  report.forward_only_coverage = epidemic::forward_only_coverage(
      contacts_, store_, *index, t_confirmed, state_.infection_ledger, params,
      config_.trust, adopting, now);
  report.patient_zero_hit =
      report.trace->patient_zero_estimate ==
      epidemic::ledger_root(state_.infection_ledger, *index);

  epidemic::AlertContext context;
  context.now = now;
  context.window_start = std::max<Tick>(0, t_confirmed - params.trace_window);
  context.window_end = t_confirmed;
  context.ticks_per_day = std::max<Tick>(
      1, static_cast<Tick>(std::lround(86400.0 / config_.tick_length_s)));
  context.zone_of = [this](DeviceId id) { return zone_of(id); };
  report.alerts = epidemic::issue_alerts(*report.trace, store_, params,
                                         config_.trust, context);
}

}  // namespace meshtrust::sim
