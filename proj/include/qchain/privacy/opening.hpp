#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "qchain/ec/keys.hpp"
#include "qchain/privacy/pedersen.hpp"

namespace qchain::privacy {

/// A commitment opening (value, blinding) on a toy group.
struct Opening {
  std::uint64_t value{0};
  ec::ToyInt blinding{0};
  friend bool operator==(const Opening&, const Opening&) = default;
};

/// Opening encrypted to an output key P by ECDH: the sender picks e, publishes
/// E = e*G and XORs the opening with a keystream derived from e*P. Whoever
/// knows p with P = p*G recomputes p*E; so does anyone who solves P's log.
struct SealedOpening {
  ec::ToyPoint ephemeral;
  std::array<std::uint8_t, 16> ciphertext{};
  friend bool operator==(const SealedOpening&, const SealedOpening&) = default;
};

namespace detail {

inline std::array<std::uint8_t, 16> opening_keystream(const ec::ToyGroup& group, const ec::ToyPoint& shared) {
  auto d = sha256(ByteWriter().str("opening/keystream").bytes(group.encode(shared)).data());
  std::array<std::uint8_t, 16> ks{};
  std::copy_n(d.begin(), 16, ks.begin());
  return ks;
}

inline std::array<std::uint8_t, 16> xor_opening(const Opening& o, const std::array<std::uint8_t, 16>& ks) {
  std::array<std::uint8_t, 16> out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<std::uint8_t>(o.value >> (56 - 8 * i)) ^ ks[i];
    out[8 + i] = static_cast<std::uint8_t>(o.blinding >> (56 - 8 * i)) ^ ks[8 + i];
  }
  return out;
}

}  // namespace detail

inline SealedOpening seal_opening(const Opening& opening, const ec::ToyPoint& recipient, const ec::ToyGroup& group,
                                  Rng& rng) {
  auto e = ec::generate_keypair(group, rng);
  auto ks = detail::opening_keystream(group, group.mul(e.private_scalar, recipient));
  return {e.public_point, detail::xor_opening(opening, ks)};
}

inline Opening unseal_opening(const SealedOpening& sealed, const ec::ToyInt& recipient_secret,
                              const ec::ToyGroup& group) {
  auto ks = detail::opening_keystream(group, group.mul(recipient_secret, sealed.ephemeral));
  Opening o;
  for (int i = 0; i < 8; ++i) {
    o.value = o.value << 8 | static_cast<std::uint8_t>(sealed.ciphertext[i] ^ ks[i]);
    o.blinding = o.blinding << 8 | static_cast<std::uint8_t>(sealed.ciphertext[8 + i] ^ ks[8 + i]);
  }
  return o;
}

/// True when the opening reproduces the commitment.
inline bool opens(const PedersenCommitment<ec::ToyInt>& c, const Opening& o,
                  const PedersenParams<ec::ToyInt>& params) {
  if (o.value >= kMaxCommittedValue) return false;
  return commit(o.value, o.blinding, params) == c;
}

}  // namespace qchain::privacy
