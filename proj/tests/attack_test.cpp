#include <gtest/gtest.h>

#include "qchain/adversary/attacks.hpp"
#include "test_util.hpp"

using namespace qchain;
using adversary::AttackKind;
using adversary::AttackPlan;
using adversary::AttackStatus;

namespace {

AttackPlan plan(AttackKind k, double start = 0) {
  AttackPlan p;
  p.kind = k;
  p.start_at_s = start;
  return p;
}

sim::SimConfig quiet(const std::string& chain, std::uint64_t seed = 1) {
  sim::SimConfig c;
  c.seed = seed;
  c.chain = ledger::preset(chain);
  c.duration_s = 50'000;
  c.wallets.count = 4;
  c.wallets.tx_rate = 0;
  c.record_events = false;
  return c;
}

// One account spends 100 of its 1000 to another, at zero fee.
sim::SimConfig takeover_scenario() {
  auto c = quiet("ethereum");
  c.wallets.allocations = {{1000}, {0}, {500}, {0}};
  c.script = {{10, 0, 1, 100, 0}};
  return c;
}

}  // namespace

TEST(Takeover, DrainsExactlyTheRemainingBalance) {
  auto c = takeover_scenario();
  auto p = plan(AttackKind::takeover, 600);
  p.target_wallet = 0;
  c.attack = p;
  sim::Simulation s(c);
  s.add_listener(adversary::make_listener(p));
  auto t = s.run();
  const auto& out = t.attacks.at(0);
  ASSERT_EQ(out.status, AttackStatus::success) << nlohmann::json(out).dump();
  EXPECT_EQ(out.loot_tokens, 900u);
  EXPECT_EQ(out.dlog_solves, 1);
  EXPECT_DOUBLE_EQ(out.elapsed_model_time_s, 1800);
  EXPECT_EQ(s.node().state().account(s.wallet(0).account()).balance, 0u);
  EXPECT_TRUE(t.audit.conserved());
}

TEST(Takeover, PicksRichestExposedAccountByDefault) {
  auto c = takeover_scenario();
  c.script.push_back({20, 2, 3, 10, 0});  // wallet 2 exposes itself with 490 left
  auto r = adversary::run_attack(c, plan(AttackKind::takeover, 600));
  ASSERT_TRUE(r.outcome.success());
  EXPECT_EQ(r.outcome.loot_tokens, 900u);
}

TEST(Takeover, NeverSpentAccountIsOutOfReach) {
  auto p = plan(AttackKind::takeover, 600);
  p.target_wallet = 2;
  auto r = adversary::run_attack(takeover_scenario(), p);
  EXPECT_EQ(r.outcome.status, AttackStatus::precondition_unmet);
  EXPECT_EQ(r.outcome.dlog_solves, 0);
  EXPECT_EQ(r.outcome.loot_tokens, 0u);
}

TEST(Takeover, DrainSurvivesVictimSpendingMeanwhile) {
  // busy victims keep signing; a drain that loses the nonce race is re-signed
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto c = quiet("ethereum", seed);
    c.wallets.count = 10;
    c.wallets.tx_rate = 0.5 / c.chain.block_time_s;
    c.duration_s = 400 * c.chain.block_time_s;
    auto p = plan(AttackKind::takeover, 100 * c.chain.block_time_s);
    auto r = adversary::run_attack(c, p);
    EXPECT_EQ(r.outcome.status, AttackStatus::success) << "seed " << seed << ": " << nlohmann::json(r.outcome).dump();
    EXPECT_TRUE(r.trace.audit.conserved());
  }
}

TEST(Takeover, InapplicableOffAccountChains) {
  EXPECT_EQ(adversary::run_attack(quiet("bitcoin"), plan(AttackKind::takeover)).outcome.status,
            AttackStatus::inapplicable);
}

TEST(Sweep, TakesEveryPayToKeyOutput) {
  auto c = quiet("bitcoin");
  c.chain.legacy_p2pk_fraction = 1.0;
  c.wallets.allocations = {{200}, {}, {}, {}};
  c.script = {{10, 0, 1, 50, 0}, {5000, 0, 2, 50, 0}, {10000, 0, 3, 50, 0}};
  auto r = adversary::run_attack(c, plan(AttackKind::sweep_p2pk, 20000));
  ASSERT_TRUE(r.outcome.success()) << nlohmann::json(r.outcome).dump();
  EXPECT_EQ(r.outcome.loot_tokens, 150u);
  EXPECT_EQ(r.outcome.dlog_solves, 3);
  EXPECT_DOUBLE_EQ(r.outcome.elapsed_model_time_s, 3 * 1800.0);
  EXPECT_TRUE(r.trace.audit.conserved());
}

TEST(Sweep, NothingExposedIsAnEmptySuccess) {
  auto r = adversary::run_attack(quiet("litecoin"), plan(AttackKind::sweep_p2pk));
  EXPECT_TRUE(r.outcome.success());
  EXPECT_EQ(r.outcome.loot_tokens, 0u);
  EXPECT_EQ(r.outcome.dlog_solves, 0);
}

TEST(Sweep, SmallDeviceIsInfeasible) {
  auto c = quiet("bitcoin");
  c.chain.legacy_p2pk_fraction = 1.0;
  c.script = {{10, 0, 1, 50, 0}};
  c.profile = adversary::load_profile(qchain::testing::source_path("data/profiles/small_device.json"));
  auto r = adversary::run_attack(c, plan(AttackKind::sweep_p2pk, 5000));
  EXPECT_EQ(r.outcome.status, AttackStatus::infeasible);
  EXPECT_EQ(r.outcome.qubits_required, 485550);
}

TEST(Forge, MintPassesValidationAndOnlyTheAuditSeesIt) {
  auto r = adversary::run_attack(quiet("zcash"), plan(AttackKind::forge_supply, 100));
  ASSERT_TRUE(r.outcome.success()) << nlohmann::json(r.outcome).dump();
  EXPECT_EQ(r.outcome.loot_tokens, 1'000'000u);
  EXPECT_EQ(r.trace.audit.delta, 1'000'000);
  EXPECT_EQ(r.trace.audit.visible_anomalies, 0u);
  EXPECT_EQ(r.trace.txs_accepted, r.trace.txs_broadcast);
}

TEST(Forge, RepeatedMintsAccumulate) {
  auto p = plan(AttackKind::forge_supply, 100);
  p.repeats = 2;
  auto r = adversary::run_attack(quiet("zcash"), p);
  ASSERT_TRUE(r.outcome.success());
  EXPECT_EQ(r.trace.audit.delta, 2'000'000);
  EXPECT_EQ(r.trace.audit.visible_anomalies, 0u);
}

TEST(Forge, NoTrustedSetupNoForgery) {
  for (const char* chain : {"monero", "bitcoin", "ethereum"})
    EXPECT_EQ(adversary::run_attack(quiet(chain), plan(AttackKind::forge_supply)).outcome.status,
              AttackStatus::inapplicable)
        << chain;
}

namespace {

struct DeanonResult {
  adversary::AttackOutcome outcome;
  bool matches_truth{false};
};

DeanonResult deanonymize(const std::string& chain, std::uint64_t seed) {
  auto c = quiet(chain, seed);
  c.wallets.count = 6;
  c.script = {{10, 0, 1, 300, 0}};
  auto p = plan(AttackKind::deanonymize, 2000);
  c.attack = p;
  sim::Simulation s(c);
  s.add_listener(adversary::make_listener(p));
  auto t = s.run();
  DeanonResult r{t.attacks.at(0)};
  if (!r.outcome.success() || r.outcome.recovered.empty()) return r;
  r.matches_truth = true;
  for (const auto& rec : r.outcome.recovered) {
    auto truth = s.audit_book().opening({rec.tx, rec.index});
    r.matches_truth = r.matches_truth && truth && truth->value == rec.value && truth->blinding == rec.blinding;
  }
  // the recovered output must be the true spend, not a decoy
  const auto& note = r.outcome.notes.back();
  const auto target = std::stoull(note.substr(note.rfind(' ') + 1));
  const auto* audit = s.audit_book().find(target);
  r.matches_truth = r.matches_truth && audit;
  for (const auto& rec : r.outcome.recovered) {
    const ledger::OutputRef ref{rec.tx, rec.index};
    r.matches_truth = r.matches_truth && std::find(audit->true_spends.begin(), audit->true_spends.end(), ref) !=
                                             audit->true_spends.end();
  }
  return r;
}

}  // namespace

TEST(Deanonymize, RingSolvesAverageHalfTheRing) {
  const int runs = 400;
  double solves = 0;
  int matched = 0;
  for (int seed = 1; seed <= runs; ++seed) {
    auto r = deanonymize("monero", static_cast<std::uint64_t>(seed));
    ASSERT_TRUE(r.outcome.success()) << "seed " << seed << ": " << nlohmann::json(r.outcome).dump();
    EXPECT_EQ(r.outcome.setup_solves, 1);
    EXPECT_GE(r.outcome.dlog_solves, 1);
    EXPECT_LE(r.outcome.dlog_solves, 5);
    solves += r.outcome.dlog_solves;
    matched += r.matches_truth;
  }
  const double mean = solves / runs;
  EXPECT_GT(mean, 2.6);
  EXPECT_LT(mean, 3.4);
  EXPECT_EQ(matched, runs);
}

TEST(Deanonymize, MimblewimbleNeedsOneSolvePerInput) {
  auto r = deanonymize("grin", 3);
  ASSERT_TRUE(r.outcome.success()) << nlohmann::json(r.outcome).dump();
  EXPECT_TRUE(r.matches_truth);
  EXPECT_EQ(r.outcome.dlog_solves, static_cast<int>(r.outcome.recovered.size()));
}

TEST(Deanonymize, TransparentChainsAreInapplicable) {
  EXPECT_EQ(adversary::run_attack(quiet("bitcoin"), plan(AttackKind::deanonymize)).outcome.status,
            AttackStatus::inapplicable);
}

TEST(Deanonymize, QuietChainHasNoTarget) {
  EXPECT_EQ(adversary::run_attack(quiet("monero"), plan(AttackKind::deanonymize, 100)).outcome.status,
            AttackStatus::precondition_unmet);
}

namespace {

double mining_success_rate(const std::string& chain, double clock_hz, int runs) {
  int wins = 0;
  for (int seed = 1; seed <= runs; ++seed) {
    auto c = quiet(chain, static_cast<std::uint64_t>(seed));
    c.attacker_coins = {500};
    c.profile.clock_speed_hz = clock_hz;
    c.duration_s = 200 * c.chain.block_time_s;
    wins += adversary::run_attack(c, plan(AttackKind::quantum_mine, 10)).outcome.success();
  }
  return static_cast<double>(wins) / runs;
}

}  // namespace

TEST(QuantumMine, AboveThresholdDoubleSpends) {
  const auto th = adversary::fifty_one_threshold(ledger::preset("ethereum"));
  EXPECT_GT(mining_success_rate("ethereum", 3 * th.clock_hz, 40), 0.5);
}

TEST(QuantumMine, FarBelowThresholdFails) {
  const auto th = adversary::fifty_one_threshold(ledger::preset("ethereum"));
  EXPECT_LT(mining_success_rate("ethereum", th.clock_hz / 100, 40), 0.05);
}

TEST(QuantumMine, SuccessfulRunRevertsMerchantPayment) {
  auto c = quiet("litecoin", 5);
  c.attacker_coins = {500};
  c.profile.clock_speed_hz = 10 * adversary::fifty_one_threshold(c.chain).clock_hz;
  auto r = adversary::run_attack(c, plan(AttackKind::quantum_mine, 10));
  ASSERT_TRUE(r.outcome.success()) << nlohmann::json(r.outcome).dump();
  EXPECT_EQ(r.outcome.loot_tokens, 100u);
  EXPECT_TRUE(r.trace.audit.conserved());
}

TEST(QuantumMine, MemoryHardPowHasNoKnownAdvantage) {
  auto c = quiet("monero");
  c.attacker_coins = {500};
  EXPECT_EQ(adversary::run_attack(c, plan(AttackKind::quantum_mine)).outcome.status, AttackStatus::no_known_advantage);
}

TEST(QuantumMine, UnfundedAttackerCannotDoubleSpend) {
  auto c = quiet("litecoin");
  c.profile.clock_speed_hz = 1e15;
  EXPECT_EQ(adversary::run_attack(c, plan(AttackKind::quantum_mine)).outcome.status, AttackStatus::precondition_unmet);
}

namespace {

sim::SimConfig hijack_scenario(std::uint64_t seed) {
  auto c = sim::load_sim_config(qchain::testing::source_path("data/scenarios/hijack_bitcoin.json"));
  c.seed = seed;
  c.record_events = false;
  return c;
}

}  // namespace

TEST(Hijack, FasterClocksNeverHurt) {
  // same seeds, three clocks: a success at a slow clock stays a success at a faster one
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    bool prev = false;
    for (double hz : {1e9, 1e10, 1.8e13}) {
      auto c = hijack_scenario(seed);
      c.profile.clock_speed_hz = hz;
      const bool ok = adversary::run_attack(c, *c.attack).outcome.success();
      EXPECT_TRUE(ok || !prev) << "seed " << seed << " hz " << hz;
      prev = ok;
    }
  }
}

TEST(Hijack, OutcomeRecordsTheRace) {
  auto c = hijack_scenario(2);
  c.profile.clock_speed_hz = 1.8e13;
  auto r = adversary::run_attack(c, *c.attack);
  ASSERT_TRUE(r.outcome.success());
  EXPECT_GE(r.outcome.dlog_solves, 1);
  EXPECT_GT(r.outcome.loot_tokens, 0u);
  ASSERT_TRUE(r.outcome.window_s);
  EXPECT_GT(*r.outcome.window_s, 0);
  EXPECT_TRUE(r.trace.audit.conserved());
}

TEST(Hijack, InapplicableOnAccountChains) {
  EXPECT_EQ(adversary::run_attack(quiet("ethereum"), plan(AttackKind::hijack)).outcome.status,
            AttackStatus::inapplicable);
}
