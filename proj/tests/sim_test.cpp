#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "qchain/adversary/attacks.hpp"
#include "test_util.hpp"

using namespace qchain;

namespace {

sim::SimConfig busy(std::uint64_t seed, const std::string& chain = "bitcoin") {
  sim::SimConfig c;
  c.seed = seed;
  c.chain = ledger::preset(chain);
  c.duration_s = 40 * c.chain.block_time_s;
  c.wallets.count = 12;
  c.wallets.tx_rate = 2.0 / c.chain.block_time_s;
  c.miners = {0.5, 0.3, 0.2};
  return c;
}

}  // namespace

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  for (const char* chain : {"bitcoin", "ethereum", "monero", "beam", "zcash"}) {
    auto a = sim::run(busy(11, chain));
    auto b = sim::run(busy(11, chain));
    EXPECT_EQ(a.ndjson(), b.ndjson()) << chain;
    EXPECT_EQ(a.summary().dump(), b.summary().dump()) << chain;
    EXPECT_GT(a.events.size(), 50u) << chain;
  }
}

TEST(Determinism, AttackTracesRepeat) {
  auto c = sim::load_sim_config(qchain::testing::source_path("data/scenarios/hijack_bitcoin.json"));
  c.seed = 4;
  auto a = sim::run(c);
  auto b = sim::run(c);
  EXPECT_EQ(a.ndjson(), b.ndjson());
  EXPECT_EQ(a.summary().dump(), b.summary().dump());
}

TEST(Determinism, SeedsDiffer) { EXPECT_NE(sim::run(busy(1)).ndjson(), sim::run(busy(2)).ndjson()); }

TEST(Engine, ClockNeverRunsBackwards) {
  auto t = sim::run(busy(3));
  double last = 0;
  std::uint64_t last_seq = 0;
  for (const auto& e : t.events) {
    const double at = e["t"];
    const std::uint64_t seq = e["seq"];
    EXPECT_GE(at, last);
    if (at == last) EXPECT_GT(seq, last_seq);
    last = at;
    last_seq = seq;
  }
}

TEST(Engine, CausesPrecedeEffects) {
  auto t = sim::run(busy(5, "ethereum"));
  std::map<std::uint64_t, double> fired;
  for (const auto& e : t.events) {
    const std::uint64_t cause = e["cause"];
    if (cause != 0) {
      ASSERT_TRUE(fired.count(cause)) << e.dump();
      EXPECT_LE(fired[cause], e["t"].get<double>());
    }
    fired[e["seq"]] = e["t"];
  }
}

TEST(Engine, NoActivityMeansCoinbaseOnlyBlocks) {
  auto c = busy(7);
  c.wallets.tx_rate = 0;
  auto t = sim::run(c);
  EXPECT_GT(t.height, 10u);
  EXPECT_EQ(t.txs_broadcast, 0u);
  for (const auto& e : t.events)
    if (e["kind"] == "block_found") EXPECT_EQ(e["txs"], 0);
  EXPECT_TRUE(t.audit.conserved());
}

TEST(Engine, BlockIntervalsMatchTarget) {
  sim::SimConfig c;
  c.chain = ledger::preset("litecoin");
  c.duration_s = 10'000 * c.chain.block_time_s;
  c.wallets.tx_rate = 0;
  c.record_events = false;
  c.miners = {0.4, 0.35, 0.25};
  auto t = sim::run(c);
  ASSERT_GE(t.block_intervals.size(), 9'000u);
  const double mean =
      std::accumulate(t.block_intervals.begin(), t.block_intervals.end(), 0.0) / static_cast<double>(t.block_intervals.size());
  EXPECT_NEAR(mean, c.chain.block_time_s, 0.02 * c.chain.block_time_s);
}

TEST(Engine, SupplyIsConservedOnEveryModel) {
  for (const auto& label : ledger::preset_order()) {
    auto t = sim::run(busy(9, label));
    EXPECT_TRUE(t.audit.conserved()) << label << " " << sim::audit_json(t.audit).dump();
    EXPECT_EQ(t.audit.visible_anomalies, 0u) << label;
    EXPECT_GT(t.txs_accepted, 0u) << label;
  }
}

TEST(Engine, ScriptedTransferArrivesAfterLatency) {
  sim::SimConfig c;
  c.wallets.count = 2;
  c.script = {{100, 0, 1, 10, 3}};
  c.duration_s = 5000;
  c.latency.mean_s = 7;
  auto t = sim::run(c);
  bool seen = false;
  for (const auto& e : t.events)
    if (e["kind"] == "tx_broadcast") {
      EXPECT_DOUBLE_EQ(e["t"].get<double>(), 107.0);
      EXPECT_EQ(e["origin"], "script");
      EXPECT_EQ(e["result"], "accepted");
      seen = true;
    }
  EXPECT_TRUE(seen);
  ASSERT_EQ(t.confirmations.size(), 1u);
  EXPECT_EQ(t.confirmations[0].fee, 3u);
}

TEST(Engine, ConfirmationDepthDelaysRecording) {
  auto shallow = busy(13, "litecoin");
  auto deep = shallow;
  deep.chain.confirmation_depth = 6;
  const auto a = sim::run(shallow), b = sim::run(deep);
  EXPECT_GT(sim::measure_confirmation(b, 50), sim::measure_confirmation(a, 50));
}

TEST(MeasureConfirmation, InterpolatesOrderStatistics) {
  sim::SimTrace t;
  for (double l : {40.0, 10.0, 30.0, 20.0}) t.confirmations.push_back({0, "x", 100, 100 + l, 0});
  EXPECT_DOUBLE_EQ(sim::measure_confirmation(t, 0), 10);
  EXPECT_DOUBLE_EQ(sim::measure_confirmation(t, 100), 40);
  EXPECT_DOUBLE_EQ(sim::measure_confirmation(t, 50), 25);
  EXPECT_THROW(sim::measure_confirmation(t, 101), std::invalid_argument);
  EXPECT_THROW(sim::measure_confirmation(sim::SimTrace{}, 50), std::invalid_argument);
}

TEST(HijackScenario, MedianConfirmationNearThirtyMinutes) {
  auto c = sim::load_sim_config(qchain::testing::source_path("data/scenarios/hijack_bitcoin.json"));
  c.attack.reset();
  c.record_events = false;
  c.duration_s = 172'800;
  std::vector<double> medians;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    c.seed = seed;
    medians.push_back(sim::measure_confirmation(sim::run(c), 50));
  }
  std::sort(medians.begin(), medians.end());
  const double mid = (medians[2] + medians[3]) / 2;
  EXPECT_GT(mid, 1200);
  EXPECT_LT(mid, 2700);
}

TEST(Config, ParsesScenarioFile) {
  auto c = sim::load_sim_config(qchain::testing::source_path("data/scenarios/hijack_bitcoin.json"));
  EXPECT_EQ(c.chain.label, "bitcoin");
  EXPECT_EQ(c.chain.block_capacity, 20u);
  EXPECT_EQ(c.wallets.count, 60u);
  ASSERT_TRUE(c.attack);
  EXPECT_EQ(c.attack->kind, adversary::AttackKind::hijack);
  EXPECT_DOUBLE_EQ(c.profile.clock_speed_hz, 1e10);
}

TEST(Config, RoundTripsThroughJson) {
  auto c = busy(3, "zcash");
  adversary::AttackPlan p;
  p.kind = adversary::AttackKind::forge_supply;
  p.repeats = 3;
  c.attack = p;
  c.script = {{5, 0, 1, 10, 0}};
  auto back = sim::parse_sim_config(nlohmann::json(c));
  EXPECT_EQ(nlohmann::json(back), nlohmann::json(c));
}

namespace {

std::string config_error_field(const std::string& text) {
  try {
    sim::parse_sim_config(nlohmann::json::parse(text));
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(config_error_field(R"({"duration_s": -1})"), "duration_s");
  EXPECT_EQ(config_error_field(R"({"chain": "dogecoin"})"), "chain");
  EXPECT_EQ(config_error_field(R"({"chain_overrides": {"block_capacity": 0}})"), "chain_overrides.block_capacity");
  EXPECT_EQ(config_error_field(R"({"chain_overrides": {"bogus": 1}})"), "chain_overrides.bogus");
  EXPECT_EQ(config_error_field(R"({"wallets": {"count": 1, "tx_rate": 0.1}})"), "wallets.count");
  EXPECT_EQ(config_error_field(R"({"miners": []})"), "miners");
  EXPECT_EQ(config_error_field(R"({"attack": {"kind": "nuke"}})"), "attack.kind");
  EXPECT_EQ(config_error_field(R"({"attack": {"kind": "hijack", "target_wallet": 99}})"), "attack.target_wallet");
  EXPECT_EQ(config_error_field(R"({"script": [{"at": 1, "from": 0, "to": 50, "amount": 1}]})"), "script[0].to");
  EXPECT_EQ(config_error_field(R"({"profile": {"clock_speed_hz": 0}})"), "profile.clock_speed_hz");
  EXPECT_EQ(config_error_field(R"({"colour": "blue"})"), "colour");
}
