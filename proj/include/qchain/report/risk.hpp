#pragma once

// Per-chain risk classification. The rules are ordered predicates over chain
// features, first match wins:
//   1. trusted setup present                    -> Very High (the setup key is a dlog instance)
//   2. amounts hidden (ring, Mimblewimble)      -> Medium
//   3. transparent, dlog-based signatures       -> High
//   4. anything else (post-quantum signatures)  -> Low
// The mining column is reported separately: memory-hard PoW with no known
// quantum speedup is "safe", everything else "intermediate" unless the
// configured adversary already clears the 51% threshold.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qchain/adversary/cost.hpp"
#include "qchain/ledger/chain_spec.hpp"

namespace qchain::report {

enum class RiskLevel { low, medium, high, very_high };
enum class GroverStatus { vulnerable, intermediate, safe };

NLOHMANN_JSON_SERIALIZE_ENUM(RiskLevel, {{RiskLevel::low, "Low"},
                                         {RiskLevel::medium, "Medium"},
                                         {RiskLevel::high, "High"},
                                         {RiskLevel::very_high, "Very High"}})
NLOHMANN_JSON_SERIALIZE_ENUM(GroverStatus, {{GroverStatus::vulnerable, "vulnerable"},
                                            {GroverStatus::intermediate, "intermediate"},
                                            {GroverStatus::safe, "safe"}})

inline std::string to_string(RiskLevel l) { return nlohmann::json(l).get<std::string>(); }
inline std::string to_string(GroverStatus g) { return nlohmann::json(g).get<std::string>(); }

namespace target {
inline const std::string kSetup = "Public parameter generated during the Zk-SNARK ceremony";
inline const std::string kHidden = "Obfuscated transactions and transactions declared to the network";
inline const std::string kDeclared = "Transactions declared to the network";
inline const std::string kReuse = "Re-use of public keys";
inline const std::string kConsensus = "Proof-of-work consensus";
}  // namespace target

struct RiskEntry {
  std::string label;
  std::string name;
  RiskLevel level{RiskLevel::low};
  std::string target;
  std::string rule;  // which predicate fired
  bool shor_vulnerable{false};
  GroverStatus grover{GroverStatus::intermediate};
  std::string grover_note;
  std::string vulnerabilities;
  // supporting numbers
  std::optional<std::uint64_t> difficulty;  // hash-based PoW only
  adversary::Threshold threshold;
  std::optional<double> shor_window_s;      // per-key Shor time under the profile; absent if infeasible
  long long qubits_required{0};
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

inline std::string signature_summary(const ledger::ChainSpec& s) {
  switch (s.tx_model) {
    case ledger::TxModel::account:
      return "An account's public key is recoverable from any transaction it has signed, and the key stays in use, "
             "so every account that has ever spent can be drained at leisure once its key is solved.";
    case ledger::TxModel::utxo:
      return "Spending reveals the public key while the transaction waits for a block; solving it before "
             "inclusion lets an attacker publish a higher-fee conflicting spend to itself." +
             std::string(s.legacy_p2pk_fraction > 0 ? " Legacy pay-to-key outputs expose keys with no deadline." : "");
    case ledger::TxModel::confidential_ring:
      return "Signing keys are dlog-based and open to the same mempool race, but hidden amounts and ring decoys "
             "mean an attacker must solve several keys per transaction without knowing what it is worth.";
    case ledger::TxModel::confidential_mw:
      return "Signing keys and blinding factors are dlog-based, so pending transactions can be raced and hidden "
             "amounts revealed; value hiding still leaves the attacker guessing which targets are worth it.";
    case ledger::TxModel::shielded_pool:
      return "Solving the public setup parameter yields the ceremony secret, which lets the holder mint "
             "shielded value that validators accept and cannot detect; signing keys are dlog-based as well.";
  }
  return {};
}

}  // namespace detail

inline RiskEntry classify_risk(const ledger::ChainSpec& spec, const adversary::QuantumAdversaryProfile& profile = {}) {
  ledger::validate(spec);
  RiskEntry e;
  e.label = spec.label;
  e.name = spec.name;
  e.shor_vulnerable = spec.signature_scheme != ledger::SignatureScheme::pq_hash_based || spec.trusted_setup;

  if (spec.trusted_setup) {
    e.level = RiskLevel::very_high;
    e.target = target::kSetup;
    e.rule = "trusted_setup";
  } else if (spec.obfuscates_values()) {
    e.level = RiskLevel::medium;
    e.target = target::kHidden;
    e.rule = "value_obfuscation";
  } else if (e.shor_vulnerable) {
    e.level = RiskLevel::high;
    e.target = spec.key_reuse_policy == ledger::KeyReusePolicy::account_reuse ? target::kReuse : target::kDeclared;
    e.rule = "transparent_dlog_signatures";
  } else {
    e.level = RiskLevel::low;
    e.target = target::kConsensus;
    e.rule = "post_quantum_signatures";
  }

  e.threshold = adversary::fifty_one_threshold(spec, profile);
  if (spec.quantum_pow_speedup == ledger::QuantumSpeedup::grover) e.difficulty = ledger::difficulty(spec);
  if (!e.threshold.known_advantage) {
    e.grover = GroverStatus::safe;
    e.grover_note = e.threshold.note;
  } else {
    e.grover = profile.clock_speed_hz >= e.threshold.clock_hz ? GroverStatus::vulnerable : GroverStatus::intermediate;
    if (spec.quantum_pow_speedup == ledger::QuantumSpeedup::kxor) e.grover_note = e.threshold.note;
  }

  e.qubits_required = adversary::required_qubits(spec.key_bits, profile);
  if (e.shor_vulnerable) {
    try {
      e.shor_window_s = adversary::shor_time(spec.key_bits, adversary::ProblemFamily::ec_dlog, profile);
    } catch (const InfeasibleError&) {
    }
  }

  e.vulnerabilities = e.shor_vulnerable ? detail::signature_summary(spec) : "Signatures are not based on discrete logarithms.";
  if (e.threshold.known_advantage)
    e.vulnerabilities += " A quantum miner out-mines the network above " + detail::sci(e.threshold.clock_hz) + " Hz (" +
                         e.threshold.method + ").";
  else
    e.vulnerabilities += " Mining has no known quantum speedup.";
  return e;
}

inline nlohmann::json to_json_entry(const RiskEntry& e) {
  nlohmann::json j = {{"label", e.label},
                      {"name", e.name},
                      {"risk_level", e.level},
                      {"target", e.target},
                      {"rule", e.rule},
                      {"shor_vulnerable", e.shor_vulnerable},
                      {"grover_status", e.grover},
                      {"vulnerabilities", e.vulnerabilities},
                      {"qubits_required", e.qubits_required},
                      {"fifty_one_threshold",
                       {{"known_advantage", e.threshold.known_advantage},
                        {"method", e.threshold.method},
                        {"clock_hz", e.threshold.clock_hz},
                        {"clock_hz_rest_of_network", e.threshold.clock_hz_rest_of_network}}}};
  if (!e.grover_note.empty()) j["grover_note"] = e.grover_note;
  j["difficulty"] = e.difficulty ? nlohmann::json(*e.difficulty) : nlohmann::json(nullptr);
  j["shor_window_s"] = e.shor_window_s ? nlohmann::json(*e.shor_window_s) : nlohmann::json(nullptr);
  return j;
}

inline std::vector<RiskEntry> classify_presets(const adversary::QuantumAdversaryProfile& profile = {}) {
  std::vector<RiskEntry> out;
  for (const auto& label : ledger::preset_order()) out.push_back(classify_risk(ledger::preset(label), profile));
  return out;
}

/// One line per chain: name, level, target, tab-separated.
inline std::string render_tsv(const std::vector<RiskEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += e.name + '\t' + to_string(e.level) + '\t' + e.target + '\n';
  return out;
}

namespace detail {

inline std::vector<std::string> wrap(const std::string& text, std::size_t width) {
  std::vector<std::string> lines;
  std::istringstream words(text);
  std::string w, line;
  while (words >> w) {
    if (!line.empty() && line.size() + 1 + w.size() > width) {
      lines.push_back(line);
      line.clear();
    }
    line += (line.empty() ? "" : " ") + w;
  }
  if (!line.empty() || lines.empty()) lines.push_back(line);
  return lines;
}

}  // namespace detail

struct TableRow {
  std::string name, level, target, vulnerabilities;
};

/// Fixed-width table with columns Blockchain, Risk Level, Target,
/// Vulnerabilities. Target and Vulnerabilities wrap at fixed widths.
inline std::string render_table(const std::vector<TableRow>& entries) {
  constexpr std::size_t kTarget = 32, kVuln = 60;
  std::size_t name_w = std::string("Blockchain").size(), level_w = std::string("Risk Level").size();
  for (const auto& e : entries) {
    name_w = std::max(name_w, e.name.size());
    level_w = std::max(level_w, e.level.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
    return "| " + pad(a, name_w) + " | " + pad(b, level_w) + " | " + pad(c, kTarget) + " | " + pad(d, kVuln) + " |\n";
  };
  const std::string rule = "+" + std::string(name_w + 2, '-') + "+" + std::string(level_w + 2, '-') + "+" +
                           std::string(kTarget + 2, '-') + "+" + std::string(kVuln + 2, '-') + "+\n";
  std::string out = rule + row("Blockchain", "Risk Level", "Target", "Vulnerabilities") + rule;
  for (const auto& e : entries) {
    const auto t = detail::wrap(e.target, kTarget);
    const auto v = detail::wrap(e.vulnerabilities, kVuln);
    for (std::size_t i = 0; i < std::max(t.size(), v.size()); ++i)
      out += row(i == 0 ? e.name : "", i == 0 ? e.level : "", i < t.size() ? t[i] : "",
                 i < v.size() ? v[i] : "");
    out += rule;
  }
  return out;
}

inline std::string render_table(const std::vector<RiskEntry>& entries) {
  std::vector<TableRow> rows;
  for (const auto& e : entries) rows.push_back({e.name, to_string(e.level), e.target, e.vulnerabilities});
  return render_table(rows);
}

}  // namespace qchain::report
