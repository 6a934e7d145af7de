// qchain: command-line front end.
//   qchain estimate [--chain X]... [--profile P] [--format json|table] [--out DIR]
//   qchain simulate [CONFIG] [--chain X] [--profile P] [--seed N] [--duration S] [--out DIR] [--format ...]
//   qchain attack --kind K [CONFIG] [--chain X] [--profile P] [--seed N] [--duration S] [--start S] [--out DIR]
//   qchain report PATH [--out DIR] [--format ...]
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qchain/report/scenario.hpp"

namespace fs = std::filesystem;
using namespace qchain;

namespace {

struct Common {
  std::vector<std::string> chains;
  std::string profile;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::string out;
  std::string format = "table";
};

void add_common(CLI::App* cmd, Common& c, bool many_chains = false) {
  if (many_chains) cmd->add_option("--chain", c.chains, "Preset label or chain file (repeatable; default: all presets)");
  else cmd->add_option("--chain", c.chains, "Preset label or chain file")->expected(1);
  cmd->add_option("--profile", c.profile, "Adversary profile file");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", c.out, "Directory for output files");
}

void add_run_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--duration", c.duration, "Simulated seconds")->check(CLI::PositiveNumber);
}

ledger::ChainSpec chain_from(const std::string& arg) {
  if (ledger::presets().count(arg)) return ledger::preset(arg);
  if (!fs::exists(arg)) throw ConfigError("chain", "'" + arg + "' is neither a preset nor a chain file");
  return ledger::load_chain_spec(arg);
}

void emit(const Common& c, const std::string& file, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(c.out);
  report::write_file(fs::path(c.out) / file, text);
}

// A config given on the command line, with flag overrides applied on top.
sim::SimConfig sim_config(const std::string& path, const Common& c) {
  sim::SimConfig cfg = path.empty() ? sim::SimConfig{} : sim::load_sim_config(path);
  if (!c.chains.empty()) cfg.chain = chain_from(c.chains.front());
  if (!c.profile.empty()) cfg.profile = adversary::load_profile(c.profile);
  if (c.seed) cfg.seed = *c.seed;
  if (c.duration) cfg.duration_s = *c.duration;
  sim::validate(cfg);
  return cfg;
}

void write_trace(const Common& c, const sim::SimTrace& t) {
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    report::write_file(fs::path(c.out) / "events.ndjson", t.ndjson());
    report::write_file(fs::path(c.out) / "summary.json", t.summary().dump(2) + "\n");
  }
  if (c.format == "json") std::cout << t.summary().dump(2) << "\n";
  else std::cout << report::render_summary(t.summary());
}

int cmd_estimate(const Common& c) {
  report::ScenarioSpec s;
  if (!c.profile.empty()) s.profile = adversary::load_profile(c.profile);
  if (c.chains.empty())
    for (const auto& label : ledger::preset_order()) s.chains.push_back(ledger::preset(label));
  for (const auto& name : c.chains) s.chains.push_back(chain_from(name));
  const auto r = report::evaluate(s);
  if (c.format == "json") emit(c, "report.json", r.report.dump(2) + "\n");
  else emit(c, "report.txt", report::render_report(r.report));
  return 0;
}

int cmd_simulate(const std::string& config, const Common& c) {
  if (!config.empty()) {
    // a report scenario (several runs, risk rows) rather than a single simulation
    const auto j = report::detail::read_json_file(config);
    if (j.is_object() && (j.contains("chains") || j.contains("simulation"))) {
      const auto out = c.out.empty() ? std::string("qchain-report") : c.out;
      const auto rep = report::run_scenario(config, out);
      std::cout << (c.format == "json" ? rep.dump(2) + "\n" : report::render_report(rep));
      return 0;
    }
  }
  write_trace(c, sim::run(sim_config(config, c)));
  return 0;
}

int cmd_attack(const std::string& config, const std::string& kind, std::optional<double> start,
               std::optional<std::size_t> target, const Common& c) {
  auto cfg = sim_config(config, c);
  if (config.empty()) {
    // something to attack: a little payment traffic and a funded attacker
    cfg.wallets.count = 10;
    cfg.wallets.tx_rate = 0.5 / cfg.chain.block_time_s;
    cfg.attacker_coins = {500};
    if (!c.duration) cfg.duration_s = 400 * cfg.chain.block_time_s;
  }
  adversary::AttackPlan plan = cfg.attack.value_or(adversary::AttackPlan{});
  if (!kind.empty()) plan.kind = nlohmann::json(kind).get<adversary::AttackKind>();
  else if (!cfg.attack) throw ConfigError("attack.kind", "give --kind or an attack block in the config");
  if (start) plan.start_at_s = *start;
  else if (config.empty()) plan.start_at_s = 100 * cfg.chain.block_time_s;  // let keys get exposed first
  if (target) plan.target_wallet = *target;
  adversary::validate(plan);
  cfg.attack = plan;
  sim::validate(cfg);
  auto trace = sim::run(cfg);
  write_trace(c, trace);
  return 0;
}

int cmd_report(const std::string& path, const Common& c) {
  fs::path p(path);
  if (fs::is_directory(p)) {
    if (fs::exists(p / "report.json")) p /= "report.json";
    else if (fs::exists(p / "summary.json")) p /= "summary.json";
    else throw ConfigError("path", "'" + path + "' holds neither report.json nor summary.json");
  }
  const auto j = report::detail::read_json_file(p.string());
  if (j.is_object() && j.contains("risk")) {
    std::cout << (c.format == "json" ? j.dump(2) + "\n" : report::render_report(j));
  } else if (j.is_object() && j.contains("audit") && j.contains("attacks")) {
    std::cout << (c.format == "json" ? j.dump(2) + "\n" : report::render_summary(j));
  } else if (j.is_object() && (j.contains("chains") || j.contains("simulation"))) {
    const auto out = c.out.empty() ? std::string("qchain-report") : c.out;
    const auto rep = report::run_scenario(p.string(), out);
    std::cout << (c.format == "json" ? rep.dump(2) + "\n" : report::render_report(rep));
  } else {
    throw ConfigError("path", "'" + p.string() + "' is not a report, a run summary, or a scenario");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum attack models and an event-driven simulator for toy blockchains"};
  app.require_subcommand(1);

  Common est, simc, atk, rep;
  auto* estimate = app.add_subcommand("estimate", "Risk level, 51% thresholds and Shor timings per chain");
  add_common(estimate, est, true);

  std::string sim_config_path;
  auto* simulate = app.add_subcommand("simulate", "Run the event-driven network simulation");
  simulate->add_option("config", sim_config_path, "Simulation config or report scenario (JSON)");
  add_common(simulate, simc);
  add_run_flags(simulate, simc);

  std::string atk_config, kind;
  std::optional<double> start;
  std::optional<std::size_t> target;
  auto* attack = app.add_subcommand("attack", "Run one attack scenario");
  attack->add_option("config", atk_config, "Simulation config (JSON)");
  attack->add_option("--kind", kind, "Attack kind")
      ->check(CLI::IsMember({"hijack", "takeover", "sweep_p2pk", "forge_supply", "deanonymize", "quantum_mine"}));
  attack->add_option("--start", start, "Attack start time (s)");
  attack->add_option("--target-wallet", target, "Takeover target wallet index");
  add_common(attack, atk);
  add_run_flags(attack, atk);

  std::string report_path;
  auto* rpt = app.add_subcommand("report", "Render a saved report or run summary, or run a report scenario");
  rpt->add_option("path", report_path, "report.json, summary.json, their directory, or a scenario file")->required();
  rpt->add_option("--format", rep.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  rpt->add_option("--out", rep.out, "Output directory when running a scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*estimate) return cmd_estimate(est);
    if (*simulate) return cmd_simulate(sim_config_path, simc);
    if (*attack) return cmd_attack(atk_config, kind, start, target, atk);
    if (*rpt) return cmd_report(report_path, rep);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
