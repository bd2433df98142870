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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meshtrust/core/errors.h"
#include "meshtrust/core/hash.h"
#include "meshtrust/sim/engine.h"
#include "meshtrust/sim/replay.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace meshtrust;

// Exit codes are a stable contract.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kConfigInvalid = 2;
constexpr int kRuntime = 3;

struct NullBuffer : std::streambuf {
  int overflow(int c) override { return c; }
};

std::optional<sim::MobilityTrace> load_trace(
    const sim::LoadedScenario& scenario) {
  if (!scenario.config.mobility_trace) return std::nullopt;
  const fs::path path = scenario.base_dir / *scenario.config.mobility_trace;
  std::ifstream in(path);
  if (!in) throw Error("cannot open mobility trace: " + path.string());
  return sim::MobilityTrace::load_csv(in);
}

json trace_to_json(const epidemic::TraceReport& report, bool include_backward) {
  json chain = json::array();
  for (DeviceId id : report.inferred_chain) chain.push_back(id.value);
  json forward = json::array();
  for (DeviceId id : report.forward_set) forward.push_back(id.value);
  json out{{"index_case", report.index_case.value},
           {"patient_zero_estimate", report.patient_zero_estimate.value},
           {"inferred_chain", chain},
           {"forward_set", forward},
           {"coverage", report.coverage},
           {"cycle_detected", report.cycle_detected}};
  if (include_backward) {
    json backward = json::array();
    for (DeviceId id : report.backward_set) backward.push_back(id.value);
    out["backward_set"] = backward;
  }
  return out;
}

int run_validate(const std::string& config_path,
                 const std::vector<std::string>& overrides) {
  try {
    (void)sim::load_scenario(config_path, overrides);
  } catch (const ConfigError& e) {
    for (const auto& diagnostic : e.diagnostics()) {
      std::cerr << diagnostic << '\n';
    }
    return kConfigInvalid;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kConfigInvalid;
  }
  std::cout << "OK\n";
  return kOk;
}

int run_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& overrides) {
  sim::LoadedScenario scenario;
  try {
    scenario = sim::load_scenario(config_path, overrides);
  } catch (const ConfigError& e) {
    for (const auto& diagnostic : e.diagnostics()) {
      std::cerr << diagnostic << '\n';
    }
    return kConfigInvalid;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kConfigInvalid;
  }

  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);

  const bool epidemic = scenario.config.epidemic.has_value();
  sim::Engine engine(scenario.config, scenario.document, scenario.config_hash,
                     load_trace(scenario));

  std::ofstream events(dir / "events.jsonl", std::ios::binary);
  if (!events) {
    std::cerr << "cannot write to " << (dir / "events.jsonl").string() << '\n';
    return kRuntime;
  }
  sim::EventLog log(events);

  std::ofstream compartments;
  if (epidemic) compartments.open(dir / "compartments.csv", std::ios::binary);

  const auto report = engine.run(log, epidemic ? &compartments : nullptr);

  {
    std::ofstream snapshot(dir / "trust_snapshot.jsonl", std::ios::binary);
    engine.store().export_jsonl(snapshot);
  }

  json outputs{{"events", "events.jsonl"},
               {"trust_snapshot", "trust_snapshot.jsonl"}};
  if (epidemic) {
    outputs["compartments"] = "compartments.csv";
    outputs["trace_report"] = "trace_report.json";
    outputs["alerts"] = "alerts.jsonl";

    json trace = json(nullptr);
    if (report.trace) {
      trace = trace_to_json(*report.trace, true);
      trace["forward_only_coverage"] = report.forward_only_coverage;
      trace["patient_zero_hit"] = report.patient_zero_hit;
      const auto* state = engine.epidemic_state();
      json truth = json::array();
      for (const auto& score :
           epidemic::find_super_spreaders(state->infection_ledger, 5)) {
        truth.push_back({{"id", score.id.value}, {"count", score.count}});
      }
      json inferred = json::array();
      for (const auto& score : epidemic::find_super_spreaders(
               engine.contacts(), engine.store(),
               scenario.config.epidemic->params, scenario.config.trust,
               state->adopting_set(), 5, report.end_tick)) {
        inferred.push_back({{"id", score.id.value}, {"count", score.count}});
      }
      trace["super_spreaders_truth"] = truth;
      trace["super_spreaders_inferred"] = inferred;
    }
    std::ofstream trace_file(dir / "trace_report.json", std::ios::binary);
    trace_file << trace.dump(2) << '\n';

    std::ofstream alerts(dir / "alerts.jsonl", std::ios::binary);
    for (const auto& alert : report.alerts) {
      json row{{"recipient", alert.recipient.value},
               {"tier", epidemic::tier_name(alert.tier)},
               {"trust", alert.trust},
               {"rx_threshold", alert.rx_threshold},
               {"payload", alert.payload}};
      if (alert.tier != epidemic::AlertTier::kNoAlert) {
        row["key_id"] = alert.envelope.key_id;
      }
      alerts << row.dump() << '\n';
    }
  }

  {
    json manifest{{"artifact_version", std::string(kArtifactVersion)},
                  {"config_hash", scenario.config_hash},
                  {"seed", scenario.config.seed},
                  {"start_tick", 0},
                  {"end_tick", report.end_tick},
                  {"outputs", outputs}};
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
  }

  std::cout << "run complete: " << report.end_tick << " ticks, population "
            << engine.nodes().size() << '\n'
            << "contacts closed: " << report.contacts_closed
            << ", messages sent: " << report.messages_sent
            << ", delivered: " << report.messages_delivered << '\n';
  if (epidemic) {
    const auto& c = report.final_counts;
    std::cout << "epidemic: s=" << c[0] << " e=" << c[1] << " i=" << c[2]
              << " r=" << c[3] << " attack_rate=" << report.attack_rate
              << '\n';
    if (report.trace) {
      std::cout << "trace: index=" << report.trace->index_case.value
                << " patient_zero=" << report.trace->patient_zero_estimate.value
                << " coverage=" << report.trace->coverage
                << " forward_only=" << report.forward_only_coverage
                << " hit=" << (report.patient_zero_hit ? "yes" : "no") << '\n';
    }
    std::size_t individual = 0;
    std::size_t locality = 0;
    for (const auto& alert : report.alerts) {
      individual += alert.tier == epidemic::AlertTier::kIndividual;
      locality += alert.tier == epidemic::AlertTier::kLocality;
    }
    std::cout << "alerts: individual=" << individual
              << " locality=" << locality
              << " none=" << (report.alerts.size() - individual - locality)
              << '\n';
  }
  std::cout << "artifacts: " << dir.string() << '\n';
  return kOk;
}

int run_trace(const std::string& log_path, std::optional<std::uint64_t> index,
              const std::string& mode, bool forward_only,
              const std::string& out_path) {
  std::ifstream in(log_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open log: " << log_path << '\n';
    return kRuntime;
  }
  const auto run = sim::replay_log(in);

  sim::TraceOptions options;
  options.forward_only = forward_only;
  if (index) options.index = DeviceId{*index};
  if (mode == "contact") {
    options.mode_override = epidemic::TransmissionMode::kContactBased;
  } else if (mode == "trust-proxy") {
    options.mode_override = epidemic::TransmissionMode::kTrustProxy;
  }

  const auto report = sim::analyze_trace(run, options);
  const json rendered = trace_to_json(report, !forward_only);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << rendered.dump(2) << '\n';
  }
  std::cout << rendered.dump(2) << '\n';
  return kOk;
}

int run_sweep(const std::string& config_path, const std::string& out_dir,
              const std::vector<std::string>& overrides,
              const std::string& parameter,
              const std::vector<std::string>& values, std::size_t runs) {
  sim::LoadedScenario base;
  try {
    base = sim::load_scenario(config_path, overrides);
  } catch (const ConfigError& e) {
    for (const auto& diagnostic : e.diagnostics()) {
      std::cerr << diagnostic << '\n';
    }
    return kConfigInvalid;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kConfigInvalid;
  }
  const std::uint64_t base_seed = base.config.seed;

  std::ostringstream csv;
  csv << "parameter,value,run,seed,attack_rate,coverage,"
         "forward_only_coverage,patient_zero_hit\n";
  for (const auto& value : values) {
    for (std::size_t r = 0; r < runs; ++r) {
      auto run_overrides = overrides;
      run_overrides.push_back(parameter + "=" + value);
      run_overrides.push_back("sim.seed=" +
                              std::to_string(base_seed + r));
      sim::LoadedScenario scenario;
      try {
        scenario = sim::load_scenario(config_path, run_overrides);
      } catch (const ConfigError& e) {
        for (const auto& diagnostic : e.diagnostics()) {
          std::cerr << diagnostic << '\n';
        }
        return kConfigInvalid;
      }
      sim::Engine engine(scenario.config, scenario.document,
                         scenario.config_hash, load_trace(scenario));
      NullBuffer null_buffer;
      std::ostream null_stream(&null_buffer);
      sim::EventLog log(null_stream);
      const auto report = engine.run(log, nullptr);
      csv << parameter << ',' << value << ',' << r << ','
          << (base_seed + r) << ',' << report.attack_rate << ','
          << (report.trace ? report.trace->coverage : 0.0) << ','
          << report.forward_only_coverage << ','
          << (report.patient_zero_hit ? 1 : 0) << '\n';
    }
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "sweep.csv", std::ios::binary);
    out << csv.str();
  }
  std::cout << csv.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximity-trust mesh simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::string log_path;
  std::optional<std::uint64_t> index;
  std::string mode;
  bool forward_only = false;
  std::string trace_out;
  std::string parameter;
  std::vector<std::string> values;
  std::size_t runs = 1;

  auto* validate = app.add_subcommand("validate", "check a scenario config");
  validate->add_option("--config", config_path, "scenario file")->required();
  validate->add_option("--set", overrides, "dotted.path=value override");

  auto* run = app.add_subcommand("run", "execute a scenario");
  run->add_option("--config", config_path, "scenario file")->required();
  run->add_option("--out", out_dir, "output directory")
      ->envname("MESHTRUST_OUT");
  run->add_option("--set", overrides, "dotted.path=value override");

  auto* trace = app.add_subcommand("trace", "trace an outbreak from a log");
  trace->add_option("log", log_path, "events.jsonl path")->required();
  trace->add_option("--index", index, "index case device id");
  trace->add_option("--mode", mode, "contact weighting")
      ->check(CLI::IsMember({"contact", "trust-proxy"}));
  trace->add_flag("--forward-only", forward_only,
                  "skip backward tracing and patient-zero search");
  trace->add_option("--out", trace_out, "also write the report here");

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("--config", config_path, "scenario file")->required();
  sweep->add_option("--out", out_dir, "output directory")
      ->envname("MESHTRUST_OUT");
  sweep->add_option("--set", overrides, "dotted.path=value override");
  sweep->add_option("--parameter", parameter, "dotted path to sweep")
      ->required();
  sweep->add_option("--values", values, "values to sweep over")
      ->required()
      ->delimiter(',');
  sweep->add_option("--runs", runs, "seeds per value (seed+0..seed+runs-1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return run_validate(config_path, overrides);
    if (run->parsed()) return run_run(config_path, out_dir, overrides);
    if (trace->parsed()) {
      return run_trace(log_path, index, mode, forward_only, trace_out);
    }
    if (sweep->parsed()) {
      if (values.empty() || runs == 0) {
        std::cerr << "sweep needs at least one value and one run\n";
        return kUsage;
      }
      return run_sweep(config_path, out_dir, overrides, parameter, values,
                       runs);
    }
  } catch (const ConfigError& e) {
    for (const auto& diagnostic : e.diagnostics()) {
      std::cerr << diagnostic << '\n';
    }
    return kConfigInvalid;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
