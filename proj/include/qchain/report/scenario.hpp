#pragma once

// Scenario files drive reports:
//   {
//     "chains": "all" | ["bitcoin", "path/to/chain.json", ...],  // analytic rows
//     "profile": "../profiles/reference.json",                    // or inline
//     "simulation": {...} | "path/to/sim.json",                    // optional event-driven part
//     "runs": 200                                                   // seeds seed .. seed+runs-1
//   }
// At least one of "chains" and "simulation" is required. With a simulation
// and no "chains", the table holds the simulated chain alone.
//
// report.json:
//   {"profile": {...}, "risk": [entry...],
//    "simulation": {"chain", "runs", "first_seed", "attack", "statuses": {status: n},
//                   "success_rate", "mean_window_s", "mean_model_time_s", "mean_loot_tokens",
//                   "median_confirmation_s", "difficulty", "fifty_one_threshold", "shor_window_s",
//                   "all_conserved", "max_audit_delta"}}
// report.txt: the risk table followed by "key: value" lines for the simulation.
// A single-run simulation also leaves events.ndjson and summary.json.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qchain/adversary/attacks.hpp"
#include "qchain/report/risk.hpp"
#include "qchain/sim/config.hpp"

namespace qchain::report {

struct ScenarioSpec {
  std::vector<ledger::ChainSpec> chains;
  adversary::QuantumAdversaryProfile profile;
  std::optional<sim::SimConfig> simulation;
  std::size_t runs{1};
};

namespace detail {

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace detail

inline ScenarioSpec parse_scenario(const nlohmann::json& j, const std::string& base_dir = "") {
  if (!j.is_object()) throw ConfigError("", "scenario must be a JSON object");
  for (const auto& [k, _] : j.items())
    if (k != "chains" && k != "profile" && k != "simulation" && k != "runs") throw ConfigError(k, "unknown key");
  if (!j.contains("chains") && !j.contains("simulation")) throw ConfigError("chains", "need \"chains\" or \"simulation\"");
  ScenarioSpec s;
  if (j.contains("profile")) {
    const auto& p = j["profile"];
    try {
      s.profile = p.is_string() ? adversary::load_profile(sim::detail::resolve_path(p.get<std::string>(), base_dir))
                                : p.get<adversary::QuantumAdversaryProfile>();
    } catch (const ConfigError& e) {
      throw ConfigError(e.field().empty() ? "profile" : "profile." + e.field(), e.detail());
    }
  }
  if (j.contains("chains")) {
    const auto& c = j["chains"];
    if (c == "all") {
      for (const auto& label : ledger::preset_order()) s.chains.push_back(ledger::preset(label));
    } else if (c.is_array()) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_string()) throw ConfigError("chains[" + std::to_string(i) + "]", "must be a preset label or path");
        const auto name = c[i].get<std::string>();
        if (ledger::presets().count(name)) {
          s.chains.push_back(ledger::preset(name));
        } else {
          const auto path = sim::detail::resolve_path(name, base_dir);
          if (!std::filesystem::exists(path))
            throw ConfigError("chains[" + std::to_string(i) + "]", "'" + name + "' is neither a preset nor a chain file");
          s.chains.push_back(ledger::load_chain_spec(path));
        }
      }
    } else {
      throw ConfigError("chains", "must be \"all\" or a list");
    }
  }
  if (j.contains("simulation")) {
    const auto& sj = j["simulation"];
    try {
      if (sj.is_string()) {
        const auto path = sim::detail::resolve_path(sj.get<std::string>(), base_dir);
        s.simulation = sim::parse_sim_config(detail::read_json_file(path), std::filesystem::path(path).parent_path().string());
      } else {
        s.simulation = sim::parse_sim_config(sj, base_dir);
      }
    } catch (const ConfigError& e) {
      throw ConfigError(e.field().empty() ? "simulation" : "simulation." + e.field(), e.detail());
    }
    // the scenario-level profile, when given, governs the simulation too
    if (j.contains("profile")) s.simulation->profile = s.profile;
    else s.profile = s.simulation->profile;
    if (s.chains.empty()) s.chains.push_back(s.simulation->chain);
  }
  if (j.contains("runs")) {
    const auto& r = j["runs"];
    if (!r.is_number_integer() || r.get<long long>() < 1) throw ConfigError("runs", "must be an integer >= 1");
    s.runs = r.get<std::size_t>();
  }
  return s;
}

inline ScenarioSpec load_scenario(const std::string& path) {
  const auto j = detail::read_json_file(path);
  try {
    return parse_scenario(j, std::filesystem::path(path).parent_path().string());
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), e.detail() + " (in " + path + ")");
  }
}

struct ScenarioResult {
  nlohmann::json report;
  std::optional<sim::SimTrace> single_trace;  // set when runs == 1
};

inline nlohmann::json simulate_many(const ScenarioSpec& s, std::optional<sim::SimTrace>* single = nullptr) {
  const auto& base = *s.simulation;
  nlohmann::json out = {{"chain", base.chain.label}, {"runs", s.runs}, {"first_seed", base.seed}};
  out["attack"] = base.attack ? nlohmann::json(*base.attack) : nlohmann::json(nullptr);
  std::map<std::string, int> statuses;
  std::size_t wins = 0, windows = 0;
  double window_sum = 0, model_sum = 0, loot_sum = 0, conf_sum = 0;
  std::size_t conf_runs = 0;
  bool conserved = true;
  long long max_delta = 0;
  for (std::size_t i = 0; i < s.runs; ++i) {
    auto c = base;
    c.seed = base.seed + i;
    c.record_events = s.runs == 1 && base.record_events;
    auto t = sim::run(c);
    conserved = conserved && t.audit.conserved();
    max_delta = std::max<long long>(max_delta, std::llabs(t.audit.delta));
    if (!t.confirmations.empty()) {
      conf_sum += sim::measure_confirmation(t, 50);
      ++conf_runs;
    }
    if (!t.attacks.empty()) {
      const auto& a = t.attacks.front();
      ++statuses[nlohmann::json(a.status).get<std::string>()];
      wins += a.success();
      model_sum += a.elapsed_model_time_s;
      loot_sum += static_cast<double>(a.loot_tokens);
      if (a.window_s) {
        window_sum += *a.window_s;
        ++windows;
      }
    }
    if (single && s.runs == 1) *single = std::move(t);
  }
  if (base.attack) {
    const double n = static_cast<double>(s.runs);
    out["statuses"] = statuses;
    out["success_rate"] = static_cast<double>(wins) / n;
    out["mean_model_time_s"] = model_sum / n;
    out["mean_loot_tokens"] = loot_sum / n;
    out["mean_window_s"] = windows ? nlohmann::json(window_sum / static_cast<double>(windows)) : nlohmann::json(nullptr);
  }
  out["median_confirmation_s"] = conf_runs ? nlohmann::json(conf_sum / static_cast<double>(conf_runs)) : nlohmann::json(nullptr);
  const auto entry = classify_risk(base.chain, base.profile);
  out["difficulty"] = entry.difficulty ? nlohmann::json(*entry.difficulty) : nlohmann::json(nullptr);
  out["fifty_one_threshold"] = entry.threshold.known_advantage ? nlohmann::json(entry.threshold.clock_hz) : nlohmann::json(nullptr);
  out["shor_window_s"] = entry.shor_window_s ? nlohmann::json(*entry.shor_window_s) : nlohmann::json(nullptr);
  out["all_conserved"] = conserved;
  out["max_audit_delta"] = max_delta;
  return out;
}

inline ScenarioResult evaluate(const ScenarioSpec& s) {
  ScenarioResult r;
  auto& rep = r.report;
  rep["profile"] = s.profile;
  auto& risk = rep["risk"] = nlohmann::json::array();
  for (const auto& c : s.chains) risk.push_back(to_json_entry(classify_risk(c, s.profile)));
  if (s.simulation) rep["simulation"] = simulate_many(s, &r.single_trace);
  return r;
}

/// Text rendering of a report document (as written to report.json).
inline std::string render_report(const nlohmann::json& report) {
  std::vector<TableRow> rows;
  for (const auto& e : report.at("risk"))
    rows.push_back({e.at("name"), e.at("risk_level"), e.at("target"), e.at("vulnerabilities")});
  std::string out = render_table(rows);
  if (report.contains("simulation")) {
    out += "\nsimulation\n";
    for (const auto& [k, v] : report["simulation"].items()) out += "  " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  }
  return out;
}

/// Text rendering of a single-run summary.json.
inline std::string render_summary(const nlohmann::json& summary) {
  std::ostringstream os;
  os << "chain: " << summary.at("chain").get<std::string>() << "  seed: " << summary.at("seed")
     << "  end: " << summary.at("end_time_s") << " s  height: " << summary.at("height") << "\n";
  const auto& tx = summary.at("transactions");
  os << "transactions: broadcast " << tx.at("broadcast") << ", accepted " << tx.at("accepted") << ", confirmed "
     << tx.at("confirmed") << "\n";
  if (summary.contains("confirmation_s")) {
    const auto& c = summary["confirmation_s"];
    os << "confirmation: p50 " << c.at("p50") << " s, p95 " << c.at("p95") << " s, mean " << c.at("mean") << " s\n";
  }
  const auto& a = summary.at("audit");
  os << "audit: expected " << a.at("expected") << ", audited " << a.at("audited") << ", delta " << a.at("delta")
     << ", visible anomalies " << a.at("visible_anomalies") << (a.at("conserved").get<bool>() ? " (conserved)" : " (NOT conserved)")
     << "\n";
  for (const auto& at : summary.at("attacks")) {
    os << "attack " << at.at("kind").get<std::string>() << ": " << at.at("status").get<std::string>()
       << ", model time " << at.at("elapsed_model_time_s") << " s, dlog solves " << at.at("dlog_solves") << ", loot "
       << at.at("loot_tokens");
    if (at.contains("window_s")) os << ", window " << at["window_s"] << " s";
    os << "\n";
    for (const auto& n : at.at("notes")) os << "  note: " << n.get<std::string>() << "\n";
  }
  return os.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

/// Runs a scenario file and writes report.json and report.txt (plus the
/// single-run trace files) into out_dir. Returns the report document.
inline nlohmann::json run_scenario(const std::string& config_path, const std::string& out_dir) {
  const auto spec = load_scenario(config_path);
  auto r = evaluate(spec);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_file(dir / "report.json", r.report.dump(2) + "\n");
  write_file(dir / "report.txt", render_report(r.report));
  if (r.single_trace) {
    write_file(dir / "events.ndjson", r.single_trace->ndjson());
    write_file(dir / "summary.json", r.single_trace->summary().dump(2) + "\n");
  }
  return r.report;
}

}  // namespace qchain::report
