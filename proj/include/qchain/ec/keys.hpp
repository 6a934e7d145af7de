#pragma once

#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "qchain/core/bytes.hpp"
#include "qchain/core/rng.hpp"
#include "qchain/ec/curve.hpp"

namespace qchain::ec {

template <FieldInt Int>
struct KeyPair {
  Int private_scalar{0};
  GroupPoint<Int> public_point;

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

/// Uniform integer in [0, n) by rejection sampling on bit_length(n) bits.
template <FieldInt Int>
Int uniform_below(Rng& rng, const Int& n) {
  if constexpr (std::is_same_v<Int, std::uint64_t>) {
    return rng.uniform(0, n - 1);
  } else {
    const int bits = bit_length(n);
    for (;;) {
      Int v = 0;
      for (int filled = 0; filled < bits; filled += 64) v = (v << 64) | Int(rng.next());
      if (bits % 64 != 0) v &= (Int(1) << bits) - 1;
      if (v < n) return v;
    }
  }
}

template <FieldInt Int>
KeyPair<Int> keypair_from_scalar(const Int& secret, const CurveGroup<Int>& group) {
  return {secret, group.mul_base(secret)};
}

/// Private scalar uniform in [1, order - 1] from a seeded stream.
template <FieldInt Int>
KeyPair<Int> generate_keypair(const CurveGroup<Int>& group, Rng& rng) {
  Int d = uniform_below(rng, Int(group.order() - 1)) + 1;
  return keypair_from_scalar(d, group);
}

template <FieldInt Int>
KeyPair<Int> generate_keypair(const CurveGroup<Int>& group, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return generate_keypair(group, rng);
}

/// Domain-separated hash to [0, modulus). The tag and every part are length
/// prefixed, so (tag, parts) pairs never share an encoding; two SHA-256
/// blocks give 512 bits before reduction to keep the bias negligible.
template <FieldInt Int>
Int hash_to_scalar(std::string_view tag, std::span<const Bytes> parts, const Int& modulus) {
  if (modulus < 2) throw std::invalid_argument("hash_to_scalar: modulus must be >= 2");
  Bytes wide;
  for (std::uint8_t block = 0; block < 2; ++block) {
    ByteWriter w;
    w.str("qchain/h2s").str(tag).u64(parts.size());
    for (const auto& p : parts) w.bytes(p);
    w.u8(block);
    auto d = sha256(w.data());
    wide.insert(wide.end(), d.begin(), d.end());
  }
  return reduce_bytes(std::span<const std::uint8_t>(wide), modulus);
}

template <FieldInt Int>
Int hash_to_scalar(std::string_view tag, std::initializer_list<Bytes> parts, const Int& modulus) {
  return hash_to_scalar(tag, std::span<const Bytes>(parts.begin(), parts.size()), modulus);
}

/// Try-and-increment hash onto the prime-order subgroup (cofactor cleared).
/// Nobody learns the discrete log of the result.
template <FieldInt Int>
GroupPoint<Int> hash_to_point(const CurveGroup<Int>& group, std::string_view tag, const Bytes& seed) {
  for (std::uint64_t counter = 0;; ++counter) {
    ByteWriter ctr;
    ctr.u64(counter);
    Int coord = hash_to_scalar(tag, {seed, ctr.data()}, group.prime());
    std::optional<GroupPoint<Int>> pt = group.form() == CurveForm::weierstrass ? group.lift_x(coord, false)
                                                                               : group.lift_y(coord, false);
    if (!pt) continue;
    auto cleared = group.mul_unreduced(group.cofactor(), *pt);
    if (!cleared.is_identity()) return cleared;
  }
}

}  // namespace qchain::ec
