#pragma once

// Output of a run. Export formats:
//   events.ndjson  one object per processed event, in processing order:
//                  {"t": <model s>, "seq": n, "cause": <seq of scheduling event, 0 = initial>,
//                   "kind": "...", ...kind-specific fields}
//   summary.json   {"seed", "chain", "duration_s", "end_time_s", "height", "events",
//                   "transactions": {"broadcast", "accepted", "confirmed"},
//                   "confirmation_s": {"p50", "p95", "mean"} (absent if nothing confirmed),
//                   "audit": {...}, "attacks": [...]}
// Both are stable for diffing: keys are sorted and no wall-clock values are written.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qchain/adversary/outcome.hpp"
#include "qchain/ledger/audit.hpp"

namespace qchain::sim {

struct ConfirmationRecord {
  std::uint64_t tx{0};
  std::string origin;  // "wallet:<i>", "script", "attacker"
  double declared_at{0};
  double confirmed_at{0};
  std::uint64_t fee{0};
  double latency() const { return confirmed_at - declared_at; }
};

struct SimTrace {
  std::uint64_t seed{0};
  std::string chain;
  double duration_s{0};
  double end_time_s{0};
  std::uint64_t height{0};
  std::uint64_t events_processed{0};
  std::uint64_t txs_broadcast{0};
  std::uint64_t txs_accepted{0};
  std::vector<nlohmann::json> events;
  std::vector<ConfirmationRecord> confirmations;
  std::vector<adversary::AttackOutcome> attacks;
  ledger::SupplyAudit audit;
  std::vector<double> block_intervals;  // gaps between successive block_found events

  std::string ndjson() const {
    std::string out;
    for (const auto& e : events) {
      out += e.dump();
      out += '\n';
    }
    return out;
  }
  nlohmann::json summary() const;
};

/// Percentile (0..100) of confirmation latency, interpolating linearly
/// between order statistics.
inline double measure_confirmation(const SimTrace& trace, double percentile) {
  if (trace.confirmations.empty()) throw std::invalid_argument("measure_confirmation: no confirmed transactions");
  if (!(percentile >= 0 && percentile <= 100)) throw std::invalid_argument("measure_confirmation: percentile outside [0, 100]");
  std::vector<double> xs;
  xs.reserve(trace.confirmations.size());
  for (const auto& c : trace.confirmations) xs.push_back(c.latency());
  std::sort(xs.begin(), xs.end());
  const double pos = percentile / 100.0 * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (xs[hi] - xs[lo]) * (pos - static_cast<double>(lo));
}

inline nlohmann::json audit_json(const ledger::SupplyAudit& a) {
  nlohmann::json j = {{"expected", a.expected},
                      {"audited", a.audited},
                      {"delta", a.delta},
                      {"unaudited_outputs", a.unaudited_outputs},
                      {"visible_anomalies", a.visible_anomalies},
                      {"conserved", a.conserved()}};
  j["visible_supply"] = a.visible_supply ? nlohmann::json(*a.visible_supply) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json SimTrace::summary() const {
  nlohmann::json j = {{"seed", seed},
                      {"chain", chain},
                      {"duration_s", duration_s},
                      {"end_time_s", end_time_s},
                      {"height", height},
                      {"events", events_processed},
                      {"transactions", {{"broadcast", txs_broadcast}, {"accepted", txs_accepted}, {"confirmed", confirmations.size()}}},
                      {"audit", audit_json(audit)}};
  if (!confirmations.empty()) {
    double sum = 0;
    for (const auto& c : confirmations) sum += c.latency();
    j["confirmation_s"] = {{"p50", measure_confirmation(*this, 50)},
                           {"p95", measure_confirmation(*this, 95)},
                           {"mean", sum / static_cast<double>(confirmations.size())}};
  }
  auto& attacks_json = j["attacks"] = nlohmann::json::array();
  for (const auto& a : attacks) attacks_json.push_back(a);
  return j;
}

}  // namespace qchain::sim
