#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qchain/core/rng.hpp"
#include "qchain/ec/keys.hpp"

namespace qchain::privacy {

/// Harness-side ring: the members as published plus the position of the
/// real input. Validators only ever receive the member list.
template <class Ref>
struct RingInput {
  std::vector<Ref> members;
  std::size_t true_index{0};
};

/// Pads `true_ref` with ring_size - 1 distinct decoys drawn uniformly from
/// the pool and places it at a uniformly random slot.
template <class Ref>
RingInput<Ref> build_ring(const Ref& true_ref, std::span<const Ref> decoy_pool, std::size_t ring_size, Rng& rng) {
  if (ring_size == 0) throw std::invalid_argument("build_ring: ring size must be >= 1");
  std::vector<Ref> pool;
  pool.reserve(decoy_pool.size());
  for (const auto& r : decoy_pool)
    if (!(r == true_ref)) pool.push_back(r);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const std::size_t need = ring_size - 1;
  if (pool.size() < need)
    throw std::invalid_argument("build_ring: " + std::to_string(pool.size()) + " distinct decoys, need " +
                                std::to_string(need));
  // Partial Fisher-Yates over the pool.
  for (std::size_t i = 0; i < need; ++i) {
    auto j = static_cast<std::size_t>(rng.uniform(i, pool.size() - 1));
    std::swap(pool[i], pool[j]);
  }
  RingInput<Ref> ring;
  ring.true_index = static_cast<std::size_t>(rng.uniform(0, ring_size - 1));
  ring.members.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(need));
  ring.members.insert(ring.members.begin() + static_cast<std::ptrdiff_t>(ring.true_index), true_ref);
  return ring;
}

/// Linkable ring signature (two-column MLSAG). Column one proves knowledge
/// of the secret key of one member and carries the key image
/// I = x * Hp(P), which is the same whichever ring the key signs in, so
/// validators reject double spends without learning the signer. The optional
/// column two proves that, for the same member, the difference between the
/// member's commitment and the spend's pseudo commitment is a commitment to
/// zero (z * H), which ties the hidden input value to the balance check.
template <ec::FieldInt Int>
struct RingSignature {
  ec::GroupPoint<Int> key_image;
  Int c0{0};
  std::vector<Int> responses;
  std::vector<Int> commitment_responses;  // empty when column two is absent
  friend bool operator==(const RingSignature&, const RingSignature&) = default;
};

/// Column two: per-member commitment differences C_i - pseudo over base H.
template <ec::FieldInt Int>
struct CommitmentColumn {
  std::span<const ec::GroupPoint<Int>> differences;
  ec::GroupPoint<Int> base;
};

template <ec::FieldInt Int>
ec::GroupPoint<Int> key_image_base(const ec::GroupPoint<Int>& member, const ec::CurveGroup<Int>& group) {
  return ec::hash_to_point(group, "ring/key-image-base", group.encode(member));
}

template <ec::FieldInt Int>
ec::GroupPoint<Int> key_image(const Int& secret, const ec::CurveGroup<Int>& group) {
  return group.mul(secret, key_image_base(group.mul_base(secret), group));
}

namespace detail {

template <ec::FieldInt Int>
Int ring_challenge(std::span<const std::uint8_t> message, const ec::GroupPoint<Int>& L, const ec::GroupPoint<Int>& R,
                   const std::optional<ec::GroupPoint<Int>>& L2, const ec::CurveGroup<Int>& group) {
  std::vector<Bytes> parts{Bytes(message.begin(), message.end()), group.encode(L), group.encode(R)};
  if (L2) parts.push_back(group.encode(*L2));
  return ec::hash_to_scalar("ring/challenge", std::span<const Bytes>(parts), group.order());
}

}  // namespace detail

template <ec::FieldInt Int>
RingSignature<Int> ring_sign(std::span<const std::uint8_t> message, std::span<const ec::GroupPoint<Int>> ring,
                             std::size_t signer, const Int& secret, const ec::CurveGroup<Int>& group, Rng& rng,
                             const std::optional<CommitmentColumn<Int>>& column = std::nullopt,
                             const Int& column_secret = Int(0)) {
  const std::size_t n = ring.size();
  if (signer >= n || group.mul_base(secret) != ring[signer])
    throw std::invalid_argument("ring_sign: secret does not match the ring member at the signer index");
  if (column && (column->differences.size() != n ||
                 group.mul(column_secret, column->base) != column->differences[signer]))
    throw std::invalid_argument("ring_sign: commitment difference of the signer does not open to zero");
  const Int& q = group.order();
  std::vector<ec::GroupPoint<Int>> bases(n);
  for (std::size_t i = 0; i < n; ++i) bases[i] = key_image_base(ring[i], group);
  RingSignature<Int> sig;
  sig.key_image = group.mul(secret, bases[signer]);
  sig.responses.assign(n, Int(0));
  if (column) sig.commitment_responses.assign(n, Int(0));
  std::vector<Int> c(n);

  const Int alpha = ec::uniform_below(rng, q);
  const Int beta = column ? ec::uniform_below(rng, q) : Int(0);
  std::optional<ec::GroupPoint<Int>> L2;
  if (column) L2 = group.mul(beta, column->base);
  c[(signer + 1) % n] =
      detail::ring_challenge(message, group.mul_base(alpha), group.mul(alpha, bases[signer]), L2, group);
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t i = (signer + step) % n;
    sig.responses[i] = ec::uniform_below(rng, q);
    auto L = group.add(group.mul_base(sig.responses[i]), group.mul(c[i], ring[i]));
    auto R = group.add(group.mul(sig.responses[i], bases[i]), group.mul(c[i], sig.key_image));
    if (column) {
      sig.commitment_responses[i] = ec::uniform_below(rng, q);
      L2 = group.add(group.mul(sig.commitment_responses[i], column->base), group.mul(c[i], column->differences[i]));
    }
    c[(i + 1) % n] = detail::ring_challenge(message, L, R, L2, group);
  }
  sig.responses[signer] = ec::sub_mod(alpha, ec::mul_mod(c[signer], Int(secret % q), q), q);
  if (column)
    sig.commitment_responses[signer] = ec::sub_mod(beta, ec::mul_mod(c[signer], Int(column_secret % q), q), q);
  sig.c0 = c[0];
  return sig;
}

template <ec::FieldInt Int>
bool ring_verify(std::span<const std::uint8_t> message, std::span<const ec::GroupPoint<Int>> ring,
                 const RingSignature<Int>& sig, const ec::CurveGroup<Int>& group,
                 const std::optional<CommitmentColumn<Int>>& column = std::nullopt) {
  const std::size_t n = ring.size();
  const Int& q = group.order();
  if (n == 0 || sig.responses.size() != n || sig.c0 >= q) return false;
  if (column.has_value() != !sig.commitment_responses.empty()) return false;
  if (column && (column->differences.size() != n || sig.commitment_responses.size() != n)) return false;
  if (sig.key_image.is_identity() || !group.contains(sig.key_image)) return false;
  // Reject key images outside the prime-order subgroup (cofactor tricks).
  if (!group.mul_unreduced(q, sig.key_image).is_identity()) return false;
  Int c = sig.c0;
  std::optional<ec::GroupPoint<Int>> L2;
  for (std::size_t i = 0; i < n; ++i) {
    if (!group.contains(ring[i]) || sig.responses[i] >= q) return false;
    auto L = group.add(group.mul_base(sig.responses[i]), group.mul(c, ring[i]));
    auto R = group.add(group.mul(sig.responses[i], key_image_base(ring[i], group)), group.mul(c, sig.key_image));
    if (column) {
      if (sig.commitment_responses[i] >= q || !group.contains(column->differences[i])) return false;
      L2 = group.add(group.mul(sig.commitment_responses[i], column->base), group.mul(c, column->differences[i]));
    }
    c = detail::ring_challenge(message, L, R, L2, group);
  }
  return c == sig.c0;
}

}  // namespace qchain::privacy
