#include <gtest/gtest.h>

#include <cmath>
#include <unordered_map>

#include "qchain/adversary/cost.hpp"
#include "qchain/adversary/oracle.hpp"
#include "qchain/adversary/profile.hpp"
#include "qchain/adversary/wagner.hpp"
#include "qchain/core/rng.hpp"
#include "qchain/ec/curve_file.hpp"
#include "test_util.hpp"

using namespace qchain;
using namespace qchain::adversary;

TEST(Shor, CalibrationAnchorsAreExact) {
  QuantumAdversaryProfile p;
  EXPECT_EQ(shor_time(256, ProblemFamily::ec_dlog, p.with_clock(1e10)), 1800.0);
  // one qubit-scaling law for both families: RSA-2048 needs a larger device
  p.qubit_count = required_qubits(2048, p);
  EXPECT_EQ(shor_time(2048, ProblemFamily::rsa_factor, p.with_clock(1e7)), 2520.0);
}

TEST(Shor, ConstantsFollowFromAnchors) {
  QuantumAdversaryProfile p;
  EXPECT_DOUBLE_EQ(shor_constant(ProblemFamily::ec_dlog, p), 1800.0 * 1e10 / (256.0 * 256 * 256));
  EXPECT_DOUBLE_EQ(shor_constant(ProblemFamily::rsa_factor, p), 2520.0 * 1e7 / (2048.0 * 2048 * 2048));
  // c·bits³/s agrees with the anchored form away from the anchor
  auto q = p.with_clock(3e11);
  EXPECT_NEAR(shor_time(200, ProblemFamily::ec_dlog, q), shor_constant(ProblemFamily::ec_dlog, p) * 200.0 * 200 * 200 / 3e11,
              1e-9);
}

TEST(Shor, DoublingClockHalvesTime) {
  QuantumAdversaryProfile p;
  p.qubit_count = 10'000'000;
  for (int bits : {1, 28, 160, 256, 521, 2048}) {
    for (auto fam : {ProblemFamily::ec_dlog, ProblemFamily::rsa_factor}) {
      double t1 = shor_time(bits, fam, p.with_clock(4e9));
      double t2 = shor_time(bits, fam, p.with_clock(8e9));
      EXPECT_DOUBLE_EQ(t1, 2 * t2);
    }
  }
}

TEST(Shor, CubicInBits) {
  QuantumAdversaryProfile p;
  EXPECT_DOUBLE_EQ(shor_time(128, ProblemFamily::ec_dlog, p) * 8, shor_time(256, ProblemFamily::ec_dlog, p));
}

TEST(Shor, InsufficientQubitsCarriesShortfall) {
  QuantumAdversaryProfile p;
  p.qubit_count = 485549;
  try {
    shor_time(256, ProblemFamily::ec_dlog, p);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.shortfall(), 1);
  }
}

TEST(Qubits, LinearScaling) {
  EXPECT_EQ(required_qubits(256), 485550);
  EXPECT_EQ(required_qubits(512), 971100);
  EXPECT_EQ(required_qubits(1), static_cast<long long>(std::ceil(485550.0 / 256)));
  EXPECT_THROW(required_qubits(0), std::invalid_argument);
}

TEST(Grover, Formula) {
  QuantumAdversaryProfile p;
  for (double s : {1.0, 7e9, 1e12}) EXPECT_DOUBLE_EQ(grover_hash_rate(p.with_clock(s), 625), s);
  EXPECT_NEAR(grover_hash_rate(p.with_clock(1e10), 670552) / 3.275e11, 1.0, 1e-3);
  EXPECT_THROW(grover_hash_rate(p, 0), std::invalid_argument);
}

TEST(Grover, QuadraticLaw) {
  QuantumAdversaryProfile p;
  for (std::uint64_t d : {1ull, 17ull, 670552ull, 11175870ull})
    EXPECT_DOUBLE_EQ(grover_hash_rate(p, 4 * d), 2 * grover_hash_rate(p, d));
}

TEST(Grover, Monotone) {
  QuantumAdversaryProfile p;
  EXPECT_LT(grover_hash_rate(p.with_clock(1e9), 100), grover_hash_rate(p.with_clock(2e9), 100));
  EXPECT_LT(grover_hash_rate(p, 100), grover_hash_rate(p, 101));
}

TEST(Threshold, EthereumAndLitecoin) {
  auto eth = fifty_one_threshold(ledger::preset("ethereum"));
  ASSERT_TRUE(eth.known_advantage);
  EXPECT_GE(eth.clock_hz, 5.0e12);
  EXPECT_LE(eth.clock_hz, 6.0e12);
  EXPECT_NEAR(eth.clock_hz / 5.5e12, 1.0, 0.01);
  auto ltc = fifty_one_threshold(ledger::preset("litecoin"));
  EXPECT_GE(ltc.clock_hz, 2.3e12);
  EXPECT_LE(ltc.clock_hz, 2.5e12);
  EXPECT_NEAR(ltc.clock_hz / 2.39e12, 1.0, 0.01);
  EXPECT_DOUBLE_EQ(eth.clock_hz_rest_of_network, eth.clock_hz / 2);
}

TEST(Threshold, GroverAtThresholdMatchesNetwork) {
  const auto& eth = ledger::preset("ethereum");
  auto t = fifty_one_threshold(eth);
  QuantumAdversaryProfile p;
  EXPECT_NEAR(grover_hash_rate(p.with_clock(t.clock_hz), ledger::difficulty(eth)) / eth.network_hash_rate, 1.0, 1e-12);
  EXPECT_NEAR(*attacker_block_rate(eth, p.with_clock(t.clock_hz)) * eth.block_time_s, 1.0, 1e-5);
}

TEST(Threshold, RandomxHasNoKnownAdvantage) {
  auto t = fifty_one_threshold(ledger::preset("monero"));
  EXPECT_FALSE(t.known_advantage);
  EXPECT_EQ(t.method, "none");
  EXPECT_FALSE(attacker_block_rate(ledger::preset("monero"), {}).has_value());
}

TEST(Threshold, EquihashUsesKxor) {
  const auto& z = ledger::preset("zcash");
  auto t = fifty_one_threshold(z);
  EXPECT_EQ(t.method, "kxor");
  EXPECT_DOUBLE_EQ(t.clock_hz, z.network_hash_rate * std::ldexp(1.0, 19));  // (200,9): 2^ceil(200/11)
  EXPECT_NEAR(*attacker_block_rate(z, QuantumAdversaryProfile{}.with_clock(t.clock_hz)) * z.block_time_s, 1.0, 1e-12);
}

TEST(Kxor, Costs) {
  auto c = kxor_costs(96, 2);
  EXPECT_EQ(c.classical_ops, std::ldexp(1.0, 32));
  EXPECT_EQ(c.quantum_ops, std::ldexp(1.0, 24));
  auto small = kxor_costs(3, 1);
  EXPECT_EQ(small.classical_ops, 4.0);
  EXPECT_EQ(small.quantum_ops, 2.0);
  // strictly cheaper in the exponent; rounding up can make the integer costs tie (n=4, k_log=1)
  for (int n = 3; n <= 200; ++n)
    for (int k = 1; k <= 9; ++k) {
      EXPECT_LT(double(n) / (2 + k), double(n) / (1 + k));
      EXPECT_LE(kxor_costs(n, k).quantum_ops, kxor_costs(n, k).classical_ops) << n << "," << k;
    }
  for (int n = 5; n <= 200; ++n) EXPECT_LT(kxor_costs(n, 1).quantum_ops, kxor_costs(n, 1).classical_ops) << n;
}

TEST(Wagner, DuplicatePair) {
  std::vector<std::uint64_t> xs{5, 9, 12, 9, 3};
  auto sol = wagner_solve(4, 1, xs);
  ASSERT_TRUE(sol);
  EXPECT_EQ(*sol, (std::vector<std::size_t>{1, 3}));
}

TEST(Wagner, ToyEquihashInstance) {
  Rng rng(2024);
  std::vector<std::uint64_t> xs(512);
  for (auto& x : xs) x = rng.uniform(0, 0xffff);

  // independent oracle: two index-disjoint pairs with equal XOR
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> seen;
  bool exists = false;
  for (std::size_t i = 0; i < xs.size() && !exists; ++i)
    for (std::size_t j = i + 1; j < xs.size() && !exists; ++j) {
      auto [it, fresh] = seen.emplace(xs[i] ^ xs[j], std::make_pair(i, j));
      if (!fresh) {
        auto [a, b] = it->second;
        exists = a != i && a != j && b != i && b != j;
      }
    }
  ASSERT_TRUE(exists);

  auto sol = wagner_solve(16, 2, xs);
  ASSERT_TRUE(sol);
  EXPECT_TRUE(verify_kxor(2, xs, *sol));
}

TEST(Wagner, ShortAdversarialListHasNoSolution) {
  // four distinct strings whose XOR is non-zero: no 4-subset exists
  std::vector<std::uint64_t> xs{1, 2, 4, 8};
  std::uint64_t all = 0;
  for (auto x : xs) all ^= x;
  ASSERT_NE(all, 0u);
  EXPECT_FALSE(wagner_solve(16, 2, xs));
  EXPECT_FALSE(wagner_solve(16, 2, {}));
}

TEST(Wagner, WitnessesAlwaysValid) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    int k_log = 1 + static_cast<int>(seed % 3);
    int n = 12 + static_cast<int>(seed % 7);
    std::vector<std::uint64_t> xs(256);
    for (auto& x : xs) x = rng.uniform(0, (1u << n) - 1);
    if (auto sol = wagner_solve(n, k_log, xs)) EXPECT_TRUE(verify_kxor(k_log, xs, *sol)) << seed;
  }
}

TEST(Wagner, RejectsBadParameters) {
  EXPECT_THROW(wagner_solve(16, 0, {1, 1}), std::invalid_argument);
  EXPECT_THROW(wagner_solve(2, 2, {1, 1}), std::invalid_argument);
  EXPECT_THROW(wagner_solve(4, 1, {17}), std::invalid_argument);
}

TEST(Oracle, SmallKnownScalar) {
  for (const auto* g : {&ec::toy_weierstrass(), &ec::toy_edwards()})
    EXPECT_EQ(dlog_oracle(g->mul_base(7), *g), 7u);
}

TEST(Oracle, RecoversRandomScalars) {
  for (const auto* g : {&ec::toy_weierstrass(), &ec::toy_edwards()}) {
    Rng rng(g->order());
    for (int i = 0; i < 100; ++i) {
      auto x = rng.uniform(0, g->order() - 1);
      ASSERT_EQ(dlog_oracle(g->mul_base(x), *g), x);
    }
  }
}

TEST(Oracle, RefusesFullSizeGroups) {
  EXPECT_THROW(dlog_oracle(ec::secp256k1().generator(), ec::secp256k1()), OracleRefusal);
  EXPECT_THROW(dlog_oracle(ec::ed25519().generator(), ec::ed25519()), OracleRefusal);
}

TEST(Oracle, ChargesModelTime) {
  QuantumAdversaryProfile p;
  auto s = timed_dlog(ec::toy_weierstrass().mul_base(99), ec::toy_weierstrass(), p);
  EXPECT_EQ(s.scalar, 99u);
  EXPECT_DOUBLE_EQ(s.model_time_s, shor_time(ec::toy_weierstrass().order_bits(), ProblemFamily::ec_dlog, p));
  auto charged = timed_dlog(ec::toy_weierstrass().mul_base(99), ec::toy_weierstrass(), p, 256);
  EXPECT_EQ(charged.model_time_s, 1800.0);
}

TEST(Profile, ShippedFilesLoad) {
  auto ref = load_profile(qchain::testing::source_path("data/profiles/reference.json"));
  EXPECT_EQ(ref, QuantumAdversaryProfile{});
  EXPECT_DOUBLE_EQ(shor_time(256, ProblemFamily::ec_dlog, load_profile(qchain::testing::source_path("data/profiles/fast_clock.json"))),
                   1.0);
  EXPECT_DOUBLE_EQ(shor_time(256, ProblemFamily::ec_dlog, load_profile(qchain::testing::source_path("data/profiles/slow_clock.json"))),
                   18000.0);
  auto small = load_profile(qchain::testing::source_path("data/profiles/small_device.json"));
  EXPECT_THROW(shor_time(256, ProblemFamily::ec_dlog, small), InfeasibleError);
}

TEST(Profile, RoundTripsThroughJson) {
  QuantumAdversaryProfile p;
  p.clock_speed_hz = 3e11;
  p.shor_calibration[ProblemFamily::rsa_factor] = {1024, 1e8, 60};
  nlohmann::json j = p;
  EXPECT_EQ(j.get<QuantumAdversaryProfile>(), p);
}

TEST(Profile, ErrorsNameTheField) {
  auto field_of = [](const std::string& text) {
    try {
      parse_profile(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(R"({"qubit_count": 5})"), "clock_speed_hz");
  EXPECT_EQ(field_of(R"({"clock_speed_hz": -1})"), "clock_speed_hz");
  EXPECT_EQ(field_of(R"({"clock_speed_hz": 1, "qubit_count": -3})"), "qubit_count");
  EXPECT_EQ(field_of(R"({"clock_speed_hz": 1, "bogus": 1})"), "bogus");
  EXPECT_EQ(field_of(R"({"clock_speed_hz": 1, "shor_calibration": {"ec_dlog": {"bits": 256}}})"),
            "shor_calibration.ec_dlog");
  EXPECT_EQ(field_of(R"({"clock_speed_hz": 1, "shor_calibration": {"ec_dlog": {"bits": 256, "clock_hz": 1, "seconds": 0}}})"),
            "shor_calibration.ec_dlog");
  EXPECT_EQ(field_of("{"), "");
}
