#include <gtest/gtest.h>

#include "qchain/ec/bsgs.hpp"
#include "qchain/ec/curve_file.hpp"
#include "qchain/ec/keys.hpp"
#include "test_util.hpp"

using namespace qchain;
using namespace qchain::ec;
using qchain::testing::parse_point;

namespace {

const std::vector<sig::GoldenRecord>& golden() {
  static const auto records = sig::load_golden_vectors(qchain::testing::source_path("tests/golden/signatures.txt"));
  return records;
}

template <FieldInt Int>
void replay_arith(const CurveGroup<Int>& g) {
  int seen = 0;
  for (const auto& rec : golden()) {
    const auto& kind = rec.at("kind");
    if ((kind != "double" && kind != "mul") || rec.at("curve") != g.label()) continue;
    if (kind == "double") {
      EXPECT_EQ(point_add(g.generator(), g.generator(), g), parse_point<Int>(rec.at("out"))) << "line " << rec.line;
      ++seen;
    } else if (kind == "mul") {
      EXPECT_EQ(scalar_mul(parse_int<Int>(rec.at("k")), g.generator(), g), parse_point<Int>(rec.at("out")))
          << "line " << rec.line;
      ++seen;
    }
  }
  EXPECT_EQ(seen, 10) << g.label();
}

template <FieldInt Int>
void check_group_laws(const CurveGroup<Int>& g, int cases, std::uint64_t seed) {
  Rng rng(seed);
  const auto O = GroupPoint<Int>::identity();
  for (int i = 0; i < cases; ++i) {
    auto P = g.mul_base(uniform_below(rng, g.order()));
    auto Q = g.mul_base(uniform_below(rng, g.order()));
    auto R = g.mul_base(uniform_below(rng, g.order()));
    ASSERT_TRUE(g.contains(P) && g.contains(Q) && g.contains(R));
    ASSERT_EQ(g.add(g.add(P, Q), R), g.add(P, g.add(Q, R)));
    ASSERT_EQ(g.add(P, Q), g.add(Q, P));
    ASSERT_EQ(g.add(P, O), P);
    ASSERT_EQ(g.add(P, g.negate(P)), O);
    ASSERT_TRUE(g.contains(g.add(P, Q)));
  }
}

}  // namespace

TEST(Curve, BuiltinsConstruct) {
  EXPECT_EQ(toy_weierstrass().order(), 268407199u);
  EXPECT_EQ(toy_edwards().cofactor(), 4u);
  EXPECT_TRUE(toy_weierstrass().attackable());
  EXPECT_FALSE(secp256k1().attackable());
  EXPECT_FALSE(ed25519().attackable());
  EXPECT_LE(toy_edwards().order_bits(), kMaxAttackableOrderBits);
}

TEST(Curve, DataFilesMatchBuiltins) {
  EXPECT_EQ(load_curve<ToyInt>(qchain::testing::source_path("data/curves/toy_weierstrass_28.curve")).params(),
            toy_weierstrass().params());
  EXPECT_EQ(load_curve<ToyInt>(qchain::testing::source_path("data/curves/toy_edwards_28.curve")).params(),
            toy_edwards().params());
  EXPECT_EQ(load_curve<u256>(qchain::testing::source_path("data/curves/secp256k1.curve")).params(),
            secp256k1().params());
  EXPECT_EQ(load_curve<u256>(qchain::testing::source_path("data/curves/ed25519.curve")).params(), ed25519().params());
}

TEST(Curve, ReferenceVectorsToy) {
  replay_arith(toy_weierstrass());
  replay_arith(toy_edwards());
}

TEST(Curve, ReferenceVectorsFullSize) {
  replay_arith(secp256k1());
  replay_arith(ed25519());
}

TEST(Curve, IdentityAndInverse) {
  for (const ToyGroup* g : {&toy_weierstrass(), &toy_edwards()}) {
    auto P = g->mul_base(12345);
    EXPECT_EQ(point_add(P, ToyPoint::identity(), *g), P);
    EXPECT_EQ(point_add(P, g->negate(P), *g), ToyPoint::identity());
    EXPECT_EQ(scalar_mul<ToyInt>(0, P, *g), ToyPoint::identity());
  }
}

TEST(Curve, GroupLawsToy) {
  check_group_laws(toy_weierstrass(), 1000, 1);
  check_group_laws(toy_edwards(), 1000, 2);
}

TEST(Curve, GroupLawsFullSize) {
  check_group_laws(secp256k1(), 20, 3);
  check_group_laws(ed25519(), 20, 4);
}

TEST(Curve, ScalarReducedModOrder) {
  const auto& g = toy_weierstrass();
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    ToyInt k = uniform_below(rng, g.order());
    EXPECT_EQ(g.mul_base(k), g.mul_base(k + g.order()));
  }
  EXPECT_TRUE(g.mul_unreduced(g.order(), g.generator()).is_identity());
}

TEST(Curve, MixedGroupOperandsRejected) {
  auto P = toy_weierstrass().mul_base(5);
  auto Q = toy_edwards().mul_base(5);
  EXPECT_THROW(point_add(P, Q, toy_edwards()), std::invalid_argument);
  EXPECT_THROW(point_add(Q, P, toy_weierstrass()), std::invalid_argument);
  EXPECT_THROW(scalar_mul<ToyInt>(3, P, toy_edwards()), std::invalid_argument);
  EXPECT_FALSE(toy_weierstrass().same_group(toy_edwards()));
}

TEST(CurveFile, RejectsMalformed) {
  const std::string good =
      "label = t\nform = weierstrass\nprime = 268435399\na = 268435396\nb = 3\ngx = 1\ngy = 1\n"
      "order = 268407199\ncofactor = 1\nattackable = true\n";
  EXPECT_NO_THROW(ToyGroup(parse_curve_params<ToyInt>(good)));
  try {
    parse_curve_params<ToyInt>(good + "colour = blue\n");
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "colour");
  }
  EXPECT_THROW(parse_curve_params<ToyInt>(good + "b = 4\n"), ConfigError);
  auto off_curve = good;
  off_curve.replace(off_curve.find("gy = 1"), 6, "gy = 2");
  EXPECT_THROW(ToyGroup(parse_curve_params<ToyInt>(off_curve)), std::invalid_argument);
  auto wrong_order = good;
  wrong_order.replace(wrong_order.find("268407199"), 9, "268407197");
  EXPECT_THROW(ToyGroup(parse_curve_params<ToyInt>(wrong_order)), std::invalid_argument);
}

TEST(Keys, PublicMatchesPrivate) {
  Rng rng(77);
  for (const ToyGroup* g : {&toy_weierstrass(), &toy_edwards()}) {
    for (int i = 0; i < 100; ++i) {
      auto kp = generate_keypair(*g, rng);
      ASSERT_GE(kp.private_scalar, 1u);
      ASSERT_LT(kp.private_scalar, g->order());
      ASSERT_EQ(kp.public_point, g->mul_base(kp.private_scalar));
    }
  }
  auto full = generate_keypair(secp256k1(), 5);
  EXPECT_EQ(full.public_point, secp256k1().mul_base(full.private_scalar));
  EXPECT_EQ(generate_keypair(secp256k1(), 5), full);
}

TEST(Keys, HashToScalarReference) {
  int seen = 0;
  for (const auto& rec : golden()) {
    if (rec.at("kind") != "h2s") continue;
    std::vector<Bytes> parts;
    std::string list = rec.at("parts");
    for (std::size_t pos = 0;;) {
      auto comma = list.find(',', pos);
      parts.push_back(qchain::testing::parse_hex(list.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    auto m = parse_int<u256>(rec.at("modulus"));
    EXPECT_EQ(hash_to_scalar(rec.at("tag"), std::span<const Bytes>(parts), m), parse_int<u256>(rec.at("out")))
        << "line " << rec.line;
    ++seen;
  }
  EXPECT_EQ(seen, 4);
}

TEST(Keys, HashToPointInPrimeSubgroup) {
  for (const ToyGroup* g : {&toy_weierstrass(), &toy_edwards()}) {
    auto H = hash_to_point(*g, "test/H", to_bytes("seed"));
    EXPECT_FALSE(H.is_identity());
    EXPECT_TRUE(g->contains(H));
    EXPECT_TRUE(g->mul_unreduced(g->order(), H).is_identity());
    EXPECT_EQ(H, hash_to_point(*g, "test/H", to_bytes("seed")));
    EXPECT_NE(H, hash_to_point(*g, "test/H", to_bytes("seed2")));
  }
  auto H = hash_to_point(ed25519(), "test/H", to_bytes("seed"));
  EXPECT_TRUE(ed25519().mul_unreduced(ed25519().order(), H).is_identity());
}

TEST(ModArith, SqrtInverseAndPrimality) {
  const ToyInt p = toy_edwards().prime();  // p = 1 mod 4 exercises Tonelli-Shanks
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    ToyInt a = rng.uniform(1, p - 1);
    EXPECT_EQ(mul_mod(a, inv_mod(a, p), p), 1u);
    auto r = sqrt_mod(mul_mod(a, a, p), p);
    ASSERT_TRUE(r);
    EXPECT_EQ(mul_mod(*r, *r, p), mul_mod(a, a, p));
  }
  EXPECT_THROW(inv_mod<ToyInt>(0, p), std::domain_error);
  EXPECT_TRUE(is_probable_prime<ToyInt>(268407199));
  EXPECT_FALSE(is_probable_prime<ToyInt>(268407197ULL * 3));
  EXPECT_TRUE(is_probable_prime(secp256k1().order()));
}

TEST(Bsgs, SmallAndRandomScalars) {
  for (const ToyGroup* g : {&toy_weierstrass(), &toy_edwards()}) {
    const auto& solver = bsgs_for(*g);
    EXPECT_EQ(solver.solve(g->mul_base(7)), std::optional<std::uint64_t>(7));
    EXPECT_EQ(solver.solve(ToyPoint::identity()), std::optional<std::uint64_t>(0));
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
      ToyInt x = uniform_below(rng, g->order());
      EXPECT_EQ(solver.solve(g->mul_base(x)), std::optional<std::uint64_t>(x));
    }
  }
}

TEST(Bsgs, CacheReturnsSameSolver) {
  EXPECT_EQ(&bsgs_for(toy_weierstrass()), &bsgs_for(toy_weierstrass()));
  EXPECT_NE(&bsgs_for(toy_weierstrass()), &bsgs_for(toy_edwards()));
}

TEST(Bsgs, PointOutsideSubgroup) {
  // The Edwards curve has cofactor 4; a lifted point not multiplied by the
  // cofactor generally lies outside <G>.
  const auto& g = toy_edwards();
  for (ToyInt y = 2;; ++y) {
    auto pt = g.lift_y(y, false);
    if (!pt || g.mul_unreduced(g.order(), *pt).is_identity()) continue;
    EXPECT_FALSE(bsgs_for(g).solve(*pt).has_value());
    break;
  }
}
