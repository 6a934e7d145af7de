#pragma once

// Simulation configuration and its JSON form. A scenario file looks like
//   {
//     "seed": 7, "duration_s": 86400,
//     "chain": "bitcoin",                        // preset label or path to a chain file
//     "chain_overrides": {"block_capacity": 20}, // any chain-spec keys
//     "profile": "data/profiles/reference.json", // or an inline profile object
//     "wallets": {"count": 60, "tx_rate": 0.0005, "coins": 8, "coin_value": 1000, "fee": 1},
//     "miners": [0.6, 0.4],
//     "latency": {"kind": "constant", "mean_s": 2},
//     "script": [{"at": 10, "from": 0, "to": 1, "amount": 100, "fee": 0}],
//     "attack": {"kind": "hijack", "start_at_s": 21600},
//     "record_events": true, "stop_when_resolved": true
//   }
// Relative paths are resolved against the scenario file's directory first.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qchain/adversary/outcome.hpp"
#include "qchain/adversary/profile.hpp"
#include "qchain/core/error.hpp"
#include "qchain/ledger/chain_spec.hpp"

namespace qchain::sim {

enum class LatencyKind { constant, exponential };
NLOHMANN_JSON_SERIALIZE_ENUM(LatencyKind, {{LatencyKind::constant, "constant"}, {LatencyKind::exponential, "exponential"}})

struct LatencyModel {
  LatencyKind kind{LatencyKind::constant};
  double mean_s{2};
  friend bool operator==(const LatencyModel&, const LatencyModel&) = default;
};

/// Wallets spend at independent Poisson rates to uniformly chosen other
/// wallets; amounts are log-uniform between 1 and the spendable balance.
struct WalletPopulation {
  std::size_t count{10};
  double tx_rate{0};  // per wallet, transactions per second
  std::size_t coins{4};
  std::uint64_t coin_value{1000};
  std::uint64_t fee{1};
  std::vector<std::vector<std::uint64_t>> allocations;  // per-wallet coin list; overrides coins/coin_value
  friend bool operator==(const WalletPopulation&, const WalletPopulation&) = default;
};

/// A payment issued at a fixed time, for scripted scenarios.
struct ScriptedTransfer {
  double at{0};
  std::size_t from{0};
  std::size_t to{0};
  std::uint64_t amount{0};
  std::uint64_t fee{0};
  friend bool operator==(const ScriptedTransfer&, const ScriptedTransfer&) = default;
};

struct SimConfig {
  std::uint64_t seed{1};
  double duration_s{86400};
  ledger::ChainSpec chain = ledger::preset("bitcoin");
  adversary::QuantumAdversaryProfile profile;
  WalletPopulation wallets;
  std::vector<double> miners{1.0};  // relative hash-rate shares of the honest miners
  LatencyModel latency;
  std::vector<ScriptedTransfer> script;
  std::optional<adversary::AttackPlan> attack;
  std::vector<std::uint64_t> attacker_coins;  // genesis funds of the attacker's own wallet
  bool record_events{true};
  bool stop_when_resolved{true};
  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

inline void validate(const SimConfig& c) {
  if (!(c.duration_s > 0) || !std::isfinite(c.duration_s)) throw ConfigError("duration_s", "must be > 0");
  ledger::validate(c.chain);
  adversary::validate(c.profile);
  if (!(c.wallets.tx_rate >= 0) || !std::isfinite(c.wallets.tx_rate)) throw ConfigError("wallets.tx_rate", "must be >= 0");
  if (c.wallets.count < 2 && c.wallets.tx_rate > 0) throw ConfigError("wallets.count", "random payments need >= 2 wallets");
  if (!c.wallets.allocations.empty() && c.wallets.allocations.size() != c.wallets.count)
    throw ConfigError("wallets.allocations", "needs one coin list per wallet");
  if (c.miners.empty()) throw ConfigError("miners", "need at least one miner");
  for (double m : c.miners)
    if (!(m > 0) || !std::isfinite(m)) throw ConfigError("miners", "shares must be > 0");
  if (!(c.latency.mean_s >= 0) || !std::isfinite(c.latency.mean_s)) throw ConfigError("latency.mean_s", "must be >= 0");
  for (std::size_t i = 0; i < c.script.size(); ++i) {
    const auto& s = c.script[i];
    const std::string f = "script[" + std::to_string(i) + "]";
    if (!(s.at >= 0)) throw ConfigError(f + ".at", "must be >= 0");
    if (s.from >= c.wallets.count) throw ConfigError(f + ".from", "no such wallet");
    if (s.to >= c.wallets.count) throw ConfigError(f + ".to", "no such wallet");
    if (s.amount == 0) throw ConfigError(f + ".amount", "must be > 0");
  }
  if (c.attack) {
    adversary::validate(*c.attack);
    if (c.attack->target_wallet && *c.attack->target_wallet >= c.wallets.count)
      throw ConfigError("attack.target_wallet", "no such wallet");
  }
}

inline void to_json(nlohmann::json& j, const SimConfig& c) {
  nlohmann::json script = nlohmann::json::array();
  for (const auto& s : c.script)
    script.push_back({{"at", s.at}, {"from", s.from}, {"to", s.to}, {"amount", s.amount}, {"fee", s.fee}});
  j = {{"seed", c.seed},
       {"duration_s", c.duration_s},
       {"chain", c.chain},
       {"profile", c.profile},
       {"wallets",
        {{"count", c.wallets.count},
         {"tx_rate", c.wallets.tx_rate},
         {"coins", c.wallets.coins},
         {"coin_value", c.wallets.coin_value},
         {"fee", c.wallets.fee},
         {"allocations", c.wallets.allocations}}},
       {"miners", c.miners},
       {"latency", {{"kind", c.latency.kind}, {"mean_s", c.latency.mean_s}}},
       {"script", script},
       {"attacker_coins", c.attacker_coins},
       {"record_events", c.record_events},
       {"stop_when_resolved", c.stop_when_resolved}};
  if (c.attack) j["attack"] = *c.attack;
}

namespace detail {

inline std::string resolve_path(const std::string& p, const std::string& base_dir) {
  if (base_dir.empty() || std::filesystem::path(p).is_absolute()) return p;
  auto candidate = std::filesystem::path(base_dir) / p;
  return std::filesystem::exists(candidate) ? candidate.string() : p;
}

template <class T>
T field(const nlohmann::json& v, const std::string& name) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(name, e.what());
  }
}

}  // namespace detail

/// Parses a scenario document. `base_dir` anchors relative chain and profile paths.
inline SimConfig parse_sim_config(const nlohmann::json& j, const std::string& base_dir = "") {
  if (!j.is_object()) throw ConfigError("", "scenario must be a JSON object");
  using detail::field;
  SimConfig c;
  static const std::vector<std::string> known{"seed",    "duration_s", "chain",  "chain_overrides", "profile",
                                              "wallets", "miners",     "latency", "script",         "attack",
                                              "attacker_coins", "record_events", "stop_when_resolved"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError(key, "unknown key");

  if (j.contains("seed")) c.seed = field<std::uint64_t>(j["seed"], "seed");
  if (j.contains("duration_s")) c.duration_s = field<double>(j["duration_s"], "duration_s");
  if (j.contains("chain")) {
    const auto& ch = j["chain"];
    if (ch.is_string()) {
      const auto name = ch.get<std::string>();
      if (ledger::presets().count(name)) {
        c.chain = ledger::preset(name);
      } else {
        const auto path = detail::resolve_path(name, base_dir);
        if (!std::filesystem::exists(path)) throw ConfigError("chain", "'" + name + "' is neither a preset nor a chain file");
        c.chain = ledger::load_chain_spec(path);
      }
    } else if (ch.is_object()) {
      c.chain = ch.get<ledger::ChainSpec>();
    } else {
      throw ConfigError("chain", "must be a preset label, a path, or a chain object");
    }
  }
  if (j.contains("chain_overrides")) {
    const auto& o = j["chain_overrides"];
    if (!o.is_object()) throw ConfigError("chain_overrides", "must be an object");
    nlohmann::json merged = c.chain;
    for (const auto& [k, v] : o.items()) {
      if (!merged.contains(k)) throw ConfigError("chain_overrides." + k, "unknown chain key");
      merged[k] = v;
    }
    try {
      c.chain = merged.get<ledger::ChainSpec>();
    } catch (const ConfigError& e) {
      throw ConfigError("chain_overrides." + e.field(), e.detail());
    }
  }
  if (j.contains("profile")) {
    const auto& p = j["profile"];
    try {
      c.profile = p.is_string() ? adversary::load_profile(detail::resolve_path(p.get<std::string>(), base_dir))
                                : p.get<adversary::QuantumAdversaryProfile>();
    } catch (const ConfigError& e) {
      throw ConfigError(e.field().empty() ? "profile" : "profile." + e.field(), e.detail());
    }
  }
  if (j.contains("wallets")) {
    const auto& w = j["wallets"];
    if (!w.is_object()) throw ConfigError("wallets", "must be an object");
    for (const auto& [k, v] : w.items()) {
      const std::string f = "wallets." + k;
      if (k == "count") c.wallets.count = field<std::size_t>(v, f);
      else if (k == "tx_rate") c.wallets.tx_rate = field<double>(v, f);
      else if (k == "coins") c.wallets.coins = field<std::size_t>(v, f);
      else if (k == "coin_value") c.wallets.coin_value = field<std::uint64_t>(v, f);
      else if (k == "fee") c.wallets.fee = field<std::uint64_t>(v, f);
      else if (k == "allocations") c.wallets.allocations = field<std::vector<std::vector<std::uint64_t>>>(v, f);
      else throw ConfigError(f, "unknown key");
    }
  }
  if (j.contains("miners")) c.miners = field<std::vector<double>>(j["miners"], "miners");
  if (j.contains("latency")) {
    const auto& l = j["latency"];
    if (!l.is_object()) throw ConfigError("latency", "must be an object");
    for (const auto& [k, v] : l.items()) {
      if (k == "kind") {
        if (!v.is_string() || (v != "constant" && v != "exponential"))
          throw ConfigError("latency.kind", "must be \"constant\" or \"exponential\"");
        c.latency.kind = v.get<LatencyKind>();
      } else if (k == "mean_s") {
        c.latency.mean_s = field<double>(v, "latency.mean_s");
      } else {
        throw ConfigError("latency." + k, "unknown key");
      }
    }
  }
  if (j.contains("script")) {
    const auto& s = j["script"];
    if (!s.is_array()) throw ConfigError("script", "must be an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string f = "script[" + std::to_string(i) + "]";
      ScriptedTransfer t;
      for (const auto& [k, v] : s[i].items()) {
        if (k == "at") t.at = field<double>(v, f + ".at");
        else if (k == "from") t.from = field<std::size_t>(v, f + ".from");
        else if (k == "to") t.to = field<std::size_t>(v, f + ".to");
        else if (k == "amount") t.amount = field<std::uint64_t>(v, f + ".amount");
        else if (k == "fee") t.fee = field<std::uint64_t>(v, f + ".fee");
        else throw ConfigError(f + "." + k, "unknown key");
      }
      c.script.push_back(t);
    }
  }
  if (j.contains("attack")) c.attack = j["attack"].get<adversary::AttackPlan>();
  if (j.contains("attacker_coins")) c.attacker_coins = field<std::vector<std::uint64_t>>(j["attacker_coins"], "attacker_coins");
  if (j.contains("record_events")) c.record_events = field<bool>(j["record_events"], "record_events");
  if (j.contains("stop_when_resolved")) c.stop_when_resolved = field<bool>(j["stop_when_resolved"], "stop_when_resolved");
  validate(c);
  return c;
}

inline SimConfig load_sim_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, "cannot open scenario file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path, std::string("not valid JSON: ") + e.what());
  }
  try {
    return parse_sim_config(j, std::filesystem::path(path).parent_path().string());
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), e.detail() + " (in " + path + ")");
  }
}

}  // namespace qchain::sim
