#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qchain/core/error.hpp"

namespace qchain::adversary {

enum class AttackKind { hijack, takeover, sweep_p2pk, forge_supply, deanonymize, quantum_mine };

NLOHMANN_JSON_SERIALIZE_ENUM(AttackKind, {{AttackKind::hijack, "hijack"},
                                          {AttackKind::takeover, "takeover"},
                                          {AttackKind::sweep_p2pk, "sweep_p2pk"},
                                          {AttackKind::forge_supply, "forge_supply"},
                                          {AttackKind::deanonymize, "deanonymize"},
                                          {AttackKind::quantum_mine, "quantum_mine"}})

/// What the attacker sets out to do in one simulation run.
struct AttackPlan {
  AttackKind kind{AttackKind::hijack};
  double start_at_s{0};                      // hijack: first wallet tx at or after this time is the victim
  std::optional<std::size_t> target_wallet;  // takeover: this wallet's account instead of the richest exposed one
  std::uint64_t mint_amount{1'000'000};      // forge_supply
  int repeats{1};                            // forge_supply
  std::uint64_t payment{100};                // quantum_mine: value of the transaction the attacker double-spends
  friend bool operator==(const AttackPlan&, const AttackPlan&) = default;
};

inline void validate(const AttackPlan& p) {
  if (!(p.start_at_s >= 0)) throw ConfigError("attack.start_at_s", "must be >= 0");
  if (p.repeats < 1) throw ConfigError("attack.repeats", "must be >= 1");
  if (p.kind == AttackKind::forge_supply && p.mint_amount == 0) throw ConfigError("attack.mint_amount", "must be > 0");
  if (p.kind == AttackKind::quantum_mine && p.payment == 0) throw ConfigError("attack.payment", "must be > 0");
}

inline void to_json(nlohmann::json& j, const AttackPlan& p) {
  j = {{"kind", p.kind}, {"start_at_s", p.start_at_s}, {"mint_amount", p.mint_amount}, {"repeats", p.repeats},
       {"payment", p.payment}};
  if (p.target_wallet) j["target_wallet"] = *p.target_wallet;
}

inline void from_json(const nlohmann::json& j, AttackPlan& p) {
  if (!j.is_object()) throw ConfigError("attack", "must be an object");
  p = AttackPlan{};
  for (const auto& [key, v] : j.items()) {
    const std::string field = "attack." + key;
    try {
      if (key == "kind") {
        p.kind = v.get<AttackKind>();
        if (nlohmann::json(p.kind) != v) throw ConfigError(field, "unknown attack kind '" + v.dump() + "'");
      } else if (key == "start_at_s") p.start_at_s = v.get<double>();
      else if (key == "target_wallet") p.target_wallet = v.get<std::size_t>();
      else if (key == "mint_amount") p.mint_amount = v.get<std::uint64_t>();
      else if (key == "repeats") p.repeats = v.get<int>();
      else if (key == "payment") p.payment = v.get<std::uint64_t>();
      else throw ConfigError(field, "unknown key");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(field, e.what());
    }
  }
  if (!j.contains("kind")) throw ConfigError("attack.kind", "required");
  validate(p);
}

enum class AttackStatus {
  success,
  attack_window_expired,  // the victim confirmed before the attacker could act
  outraced,               // attacker transaction or branch submitted but lost
  rejected,               // validators refused the attacker's transaction
  precondition_unmet,
  inapplicable,
  infeasible,             // the profile's device is too small for the key size
  no_known_advantage,
  unresolved,             // simulation ended first
};

NLOHMANN_JSON_SERIALIZE_ENUM(AttackStatus, {{AttackStatus::success, "success"},
                                            {AttackStatus::attack_window_expired, "attack_window_expired"},
                                            {AttackStatus::outraced, "outraced"},
                                            {AttackStatus::rejected, "rejected"},
                                            {AttackStatus::precondition_unmet, "precondition_unmet"},
                                            {AttackStatus::inapplicable, "inapplicable"},
                                            {AttackStatus::infeasible, "infeasible"},
                                            {AttackStatus::no_known_advantage, "no_known_advantage"},
                                            {AttackStatus::unresolved, "unresolved"}})

struct RecoveredOpening {
  std::uint64_t tx{0};
  std::uint32_t index{0};
  std::uint64_t value{0};
  std::uint64_t blinding{0};
};

struct AttackOutcome {
  AttackKind kind{AttackKind::hijack};
  AttackStatus status{AttackStatus::unresolved};
  double started_at_s{0};
  double elapsed_model_time_s{0};  // quantum clock charged to the attack
  double wall_time_s{0};           // classical time the oracle actually spent
  int dlog_solves{0};
  int setup_solves{0};
  long long qubits_required{0};
  std::uint64_t loot_tokens{0};
  std::vector<RecoveredOpening> recovered;  // information loot
  std::optional<double> window_s;           // hijack: victim broadcast to race resolution
  std::vector<std::string> notes;

  bool success() const { return status == AttackStatus::success; }
};

inline void to_json(nlohmann::json& j, const AttackOutcome& o) {
  j = {{"kind", o.kind},
       {"status", o.status},
       {"success", o.success()},
       {"started_at_s", o.started_at_s},
       {"elapsed_model_time_s", o.elapsed_model_time_s},
       {"dlog_solves", o.dlog_solves},
       {"setup_solves", o.setup_solves},
       {"qubits_required", o.qubits_required},
       {"loot_tokens", o.loot_tokens},
       {"notes", o.notes}};
  if (o.window_s) j["window_s"] = *o.window_s;
  if (!o.recovered.empty()) {
    auto& rec = j["recovered"] = nlohmann::json::array();
    for (const auto& r : o.recovered)
      rec.push_back({{"tx", r.tx}, {"index", r.index}, {"value", r.value}, {"blinding", r.blinding}});
  }
}

}  // namespace qchain::adversary
