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

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "meshtrust/core/errors.h"
#include "meshtrust/sim/config.h"

using namespace meshtrust;
using namespace meshtrust::sim;
using nlohmann::json;

namespace {

json base_doc() {
  return json::parse(R"({
    "sim": {
      "seed": 1,
      "ticks_total": 100,
      "arena": {"width": 100.0, "height": 50.0},
      "contact_radius": 5.0
    },
    "nodes": [
      {"id": 0, "x": 10.0, "y": 10.0},
      {"id": 1, "x": 20.0, "y": 20.0}
    ]
  })");
}

std::vector<std::string> diagnose(const json& doc) {
  std::vector<std::string> diagnostics;
  (void)parse_config(doc, diagnostics);
  return diagnostics;
}

bool has(const std::vector<std::string>& diagnostics,
         const std::string& exact) {
  return std::find(diagnostics.begin(), diagnostics.end(), exact) !=
         diagnostics.end();
}

// Writes a scenario document to a unique temp file and returns its path.
class TempScenario {
 public:
  explicit TempScenario(const std::string& contents) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("scenario_cfg_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".json");
    std::ofstream out(path_, std::ios::binary);
    out << contents;
  }
  ~TempScenario() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("a minimal document parses clean with defaults") {
  std::vector<std::string> diagnostics;
  const auto cfg = parse_config(base_doc(), diagnostics);
  CHECK(diagnostics.empty());
  CHECK(cfg.seed == 1);
  CHECK(cfg.ticks_total == 100);
  CHECK(cfg.tick_length_s == 60.0);
  CHECK(cfg.contact_radius == 5.0);
  REQUIRE(cfg.nodes.size() == 2);
  CHECK(cfg.nodes[0].node.radio_range == 30.0);
  CHECK(cfg.nodes[0].node.mobility.speed == 0.0);
  CHECK(cfg.trust.eta == 0.2);
  CHECK(cfg.trust.half_life_ticks == 43200);
  CHECK_FALSE(cfg.epidemic.has_value());
  CHECK(cfg.messages.empty());
}

TEST_CASE("missing required fields report exact paths") {
  const auto diagnostics = diagnose(json::object());
  CHECK(has(diagnostics, "sim section required"));
  CHECK(has(diagnostics, "sim.seed required"));
  CHECK(has(diagnostics, "sim.ticks_total required"));
  CHECK(has(diagnostics, "sim.arena required"));
  CHECK(has(diagnostics, "sim.contact_radius required"));
  CHECK(has(diagnostics, "nodes or node_generator required"));
}

TEST_CASE("node constraints") {
  SUBCASE("radio range must be positive") {
    auto doc = base_doc();
    doc["nodes"][1]["radio_range"] = 0.0;
    CHECK(has(diagnose(doc), "nodes[1].radio_range must be > 0"));
  }
  SUBCASE("duplicate ids are flagged") {
    auto doc = base_doc();
    doc["nodes"][1]["id"] = 0u;
    CHECK(has(diagnose(doc), "nodes[1].id duplicate device id 0"));
  }
  SUBCASE("positions must sit inside the arena") {
    auto doc = base_doc();
    doc["nodes"][0]["x"] = 200.0;
    CHECK(has(diagnose(doc), "nodes[0] position must lie inside the arena"));
  }
  SUBCASE("negative speed is rejected") {
    auto doc = base_doc();
    doc["nodes"][0]["speed"] = -1.0;
    CHECK(has(diagnose(doc), "nodes[0].speed must be >= 0"));
  }
  SUBCASE("explicit nodes and the generator are mutually exclusive") {
    auto doc = base_doc();
    doc["node_generator"] = {{"count", 5}};
    CHECK(has(diagnose(doc), "nodes and node_generator are mutually exclusive"));
  }
  SUBCASE("the generator needs a positive count") {
    auto doc = base_doc();
    doc.erase("nodes");
    doc["node_generator"] = json::object();
    CHECK(has(diagnose(doc), "node_generator.count required positive integer"));
  }
}

TEST_CASE("trust parameter bounds") {
  auto doc = base_doc();
  SUBCASE("eta must be in (0, 1]") {
    doc["trust"] = {{"eta", 0.0}};
    CHECK(has(diagnose(doc), "trust.eta must be in (0, 1]"));
  }
  SUBCASE("weights must not vanish entirely") {
    doc["trust"] = {{"w_prev", 0.0}, {"w_peer", 0.0}, {"w_interests", 0.0},
                    {"w_apps", 0.0}, {"w_prox", 0.0}, {"w_phys", 0.0}};
    CHECK(has(diagnose(doc), "trust factor weights must not all be zero"));
  }
  SUBCASE("negative weights are rejected") {
    doc["trust"] = {{"w_prox", -0.5}};
    CHECK(has(diagnose(doc), "trust factor weights must be >= 0"));
  }
  SUBCASE("rho must be positive") {
    doc["trust"] = {{"rho_m", 0.0}};
    CHECK(has(diagnose(doc), "trust.rho_m must be > 0"));
  }
}

TEST_CASE("registry members must be known devices") {
  auto doc = base_doc();
  doc["registry"] = {{"west", {0u, 9u}}};
  const auto diagnostics = diagnose(doc);
  CHECK(has(diagnostics, "registry.west unknown device 9"));
}

TEST_CASE("trigger rules validate ticks and devices") {
  auto doc = base_doc();
  SUBCASE("scripted instruction out of range") {
    doc["triggers"] = {
        {"user_instructions", json::array({{{"tick", 100}, {"device", 0u}}})}};
    CHECK(has(diagnose(doc),
              "triggers.user_instructions[0].tick must be in [0, ticks_total)"));
  }
  SUBCASE("scripted instruction for an unknown device") {
    doc["triggers"] = {
        {"user_instructions", json::array({{{"tick", 5}, {"device", 7u}}})}};
    CHECK(has(diagnose(doc),
              "triggers.user_instructions[0].device must name a known device"));
  }
  SUBCASE("mode flips require the airplane flag") {
    doc["triggers"] = {
        {"mode_flips", json::array({{{"tick", 5}, {"device", 0u}}})}};
    CHECK(has(diagnose(doc),
              "triggers.mode_flips[0].airplane_mode required boolean"));
  }
  SUBCASE("peer threshold must be at least one") {
    doc["triggers"] = {{"peers_in_proximity_threshold", 0}};
    CHECK(has(diagnose(doc),
              "triggers.peers_in_proximity_threshold must be >= 1"));
  }
}

TEST_CASE("message specs validate endpoints, body and thresholds") {
  auto doc = base_doc();
  auto message = json{{"tick", 10}, {"sender", 0u}, {"receiver", 1u},
                      {"body", "hello"}};

  SUBCASE("a well-formed message takes defaults") {
    doc["messages"] = json::array({message});
    std::vector<std::string> diagnostics;
    const auto cfg = parse_config(doc, diagnostics);
    CHECK(diagnostics.empty());
    REQUIRE(cfg.messages.size() == 1);
    CHECK(cfg.messages[0].partitions == 4);
    CHECK(cfg.messages[0].tx_threshold == 0.5);
    CHECK(cfg.messages[0].rx_threshold == 0.2);
    CHECK(cfg.messages[0].theta_full == 0.8);
    CHECK(cfg.messages[0].mode == messaging::RevealMode::kDeterministic);
    CHECK(cfg.messages[0].profile == kDefaultProfile);
    CHECK_FALSE(cfg.messages[0].prefer_internet);
  }
  SUBCASE("unknown sender") {
    message["sender"] = 9u;
    doc["messages"] = json::array({message});
    CHECK(has(diagnose(doc), "messages[0].sender must name a known device"));
  }
  SUBCASE("self send") {
    message["receiver"] = 0u;
    doc["messages"] = json::array({message});
    CHECK(has(diagnose(doc), "messages[0] sender and receiver must differ"));
  }
  SUBCASE("reception gate above full-reveal threshold") {
    message["rx_threshold"] = 0.9;
    message["theta_full"] = 0.3;
    doc["messages"] = json::array({message});
    CHECK(has(diagnose(doc), "messages[0] rx_threshold must be <= theta_full"));
  }
  SUBCASE("unknown reveal mode") {
    message["mode"] = "sometimes";
    doc["messages"] = json::array({message});
    CHECK(has(diagnose(doc),
              "messages[0].mode must be \"deterministic\" or \"probabilistic\""));
  }
  SUBCASE("empty body") {
    message.erase("body");
    doc["messages"] = json::array({message});
    CHECK(has(diagnose(doc), "messages[0].body must be non-empty"));
  }
}

TEST_CASE("interaction specs validate kind and ranges") {
  auto doc = base_doc();
  auto interaction = json{{"tick", 10}, {"a", 0u}, {"b", 1u},
                          {"kind", "handshake"}, {"quality", 0.5}};
  SUBCASE("a known kind parses") {
    doc["interactions"] = json::array({interaction});
    std::vector<std::string> diagnostics;
    const auto cfg = parse_config(doc, diagnostics);
    CHECK(diagnostics.empty());
    REQUIRE(cfg.interactions.size() == 1);
    CHECK(cfg.interactions[0].kind == trust::InteractionKind::kHandshake);
  }
  SUBCASE("unknown kinds are flagged with the offending name") {
    interaction["kind"] = "hug";
    doc["interactions"] = json::array({interaction});
    CHECK(has(diagnose(doc),
              "interactions[0].kind unknown interaction kind \"hug\""));
  }
  SUBCASE("quality outside [0, 1]") {
    interaction["quality"] = 1.5;
    doc["interactions"] = json::array({interaction});
    CHECK(has(diagnose(doc), "interactions[0].quality must be in [0, 1]"));
  }
}

TEST_CASE("epidemic section constraints") {
  auto doc = base_doc();
  auto epidemic = json{{"beta", 0.1}, {"incubation", 10},
                       {"infectious_period", 500}, {"mode", "contact"}};
  SUBCASE("confirm_delay defaults to the infectious period") {
    doc["epidemic"] = epidemic;
    std::vector<std::string> diagnostics;
    const auto cfg = parse_config(doc, diagnostics);
    CHECK(diagnostics.empty());
    REQUIRE(cfg.epidemic.has_value());
    CHECK(cfg.epidemic->params.confirm_delay == 500);
    CHECK(cfg.epidemic->params.mode ==
          epidemic::TransmissionMode::kContactBased);
  }
  SUBCASE("unknown transmission mode") {
    epidemic["mode"] = "airborne";
    doc["epidemic"] = epidemic;
    CHECK(has(diagnose(doc),
              "epidemic.mode must be \"contact\" or \"trust_proxy\""));
  }
  SUBCASE("alert thresholds must be ordered") {
    epidemic["theta_individual"] = 0.7;
    epidemic["theta_locality"] = 0.8;
    doc["epidemic"] = epidemic;
    CHECK(has(diagnose(doc),
              "epidemic theta_locality must be < theta_individual"));
  }
  SUBCASE("seed devices must exist") {
    epidemic["initial_infectious"] = {5u};
    doc["epidemic"] = epidemic;
    CHECK(has(diagnose(doc), "epidemic.initial_infectious unknown device 5"));
  }
  SUBCASE("seed count cannot exceed the population") {
    epidemic["seed_count"] = 3;
    doc["epidemic"] = epidemic;
    CHECK(has(diagnose(doc), "epidemic.seed_count must be in [0, population]"));
  }
}

TEST_CASE("overrides rewrite dotted paths before validation") {
  auto doc = base_doc();

  SUBCASE("numbers parse as JSON") {
    apply_override(doc, "sim.seed=7");
    CHECK(doc["sim"]["seed"] == 7);
  }
  SUBCASE("unquoted words fall back to strings") {
    apply_override(doc, "epidemic.mode=trust_proxy");
    CHECK(doc["epidemic"]["mode"] == "trust_proxy");
  }
  SUBCASE("intermediate objects are created on demand") {
    apply_override(doc, "a.b.c=3.5");
    CHECK(doc["a"]["b"]["c"] == 3.5);
  }
  SUBCASE("booleans and arrays parse as JSON") {
    apply_override(doc, "triggers.no_infrastructure=true");
    CHECK(doc["triggers"]["no_infrastructure"] == true);
    apply_override(doc, "epidemic.initial_infectious=[0,1]");
    CHECK(doc["epidemic"]["initial_infectious"] == json::array({0, 1}));
  }
  SUBCASE("assignments need an equals sign") {
    CHECK_THROWS_AS(apply_override(doc, "sim.seed"), Error);
    CHECK_THROWS_AS(apply_override(doc, "=5"), Error);
  }
}

TEST_CASE("scenario files load, hash and validate") {
  const std::string valid = base_doc().dump(2);

  SUBCASE("the hash is a stable fingerprint of the bytes") {
    TempScenario file(valid);
    const auto first = load_scenario(file.path(), {});
    const auto second = load_scenario(file.path(), {});
    CHECK(first.config_hash == second.config_hash);
    CHECK(first.config_hash.size() == 16);  // 64-bit hex
    CHECK(first.config.seed == 1);

    TempScenario other(base_doc().dump());  // different whitespace
    CHECK(load_scenario(other.path(), {}).config_hash != first.config_hash);
  }
  SUBCASE("overrides apply before validation") {
    TempScenario file(valid);
    const auto loaded = load_scenario(file.path(), {"sim.seed=99"});
    CHECK(loaded.config.seed == 99);
    // An override can also break the config; that must be caught.
    CHECK_THROWS_AS(
        (void)load_scenario(file.path(), {"sim.contact_radius=-1"}),
        ConfigError);
  }
  SUBCASE("validation failures carry the diagnostics") {
    auto doc = base_doc();
    doc["nodes"][1]["radio_range"] = 0.0;
    TempScenario file(doc.dump());
    try {
      (void)load_scenario(file.path(), {});
      FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
      REQUIRE(err.diagnostics().size() == 1);
      CHECK(err.diagnostics()[0] == "nodes[1].radio_range must be > 0");
    }
  }
  SUBCASE("missing files and bad JSON are I/O errors") {
    CHECK_THROWS_AS(
        (void)load_scenario("/nonexistent/scenario.json", {}), Error);
    TempScenario file("{ not json");
    CHECK_THROWS_AS((void)load_scenario(file.path(), {}), Error);
  }
}
