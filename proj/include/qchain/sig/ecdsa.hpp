#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "qchain/core/error.hpp"
#include "qchain/core/rng.hpp"
#include "qchain/ec/keys.hpp"

namespace qchain::sig {

using ec::CurveGroup;
using ec::FieldInt;
using ec::GroupPoint;
using ec::KeyPair;

/// (R, S): R is the abscissa of the ephemeral point k*G reduced modulo the
/// group order, S = k^-1 (e + d*R) mod order where e is the tagged SHA-256 of
/// the message. The modulus is the group order, not the field prime.
template <FieldInt Int>
struct EcdsaSignature {
  Int r{0};
  Int s{0};
  friend bool operator==(const EcdsaSignature&, const EcdsaSignature&) = default;
};

/// recovery_hint bit 0: parity of the ephemeral point's y; bit 1: its
/// abscissa was >= order (so x = R + order).
template <FieldInt Int>
struct RecoverableSignature {
  EcdsaSignature<Int> base;
  int recovery_hint{0};
  friend bool operator==(const RecoverableSignature&, const RecoverableSignature&) = default;
};

template <FieldInt Int>
Int ecdsa_message_scalar(std::span<const std::uint8_t> message, const CurveGroup<Int>& group) {
  return ec::hash_to_scalar("ecdsa/message", {Bytes(message.begin(), message.end())}, group.order());
}

namespace detail {
template <FieldInt Int>
void require_weierstrass(const CurveGroup<Int>& group) {
  if (group.form() != ec::CurveForm::weierstrass)
    throw std::invalid_argument("ECDSA needs a short-Weierstrass group, got " + group.label());
}
}  // namespace detail

/// Signs with an explicit ephemeral scalar. Returns nullopt for degenerate
/// nonces (k = 0 mod order, R = 0 or S = 0).
template <FieldInt Int>
std::optional<RecoverableSignature<Int>> ecdsa_sign_with_nonce(std::span<const std::uint8_t> message,
                                                               const KeyPair<Int>& signer, const Int& k,
                                                               const CurveGroup<Int>& group) {
  detail::require_weierstrass(group);
  const Int& n = group.order();
  if (k % n == 0) return std::nullopt;
  const auto eph = group.mul_base(k);
  const Int r = eph.x % n;
  if (r == 0) return std::nullopt;
  const Int e = ecdsa_message_scalar(message, group);
  const Int s = ec::mul_mod(ec::inv_mod(Int(k % n), n),
                            ec::add_mod(e, ec::mul_mod(Int(signer.private_scalar % n), r, n), n), n);
  if (s == 0) return std::nullopt;
  int hint = (ec::is_odd(eph.y) ? 1 : 0) | (eph.x >= n ? 2 : 0);
  return RecoverableSignature<Int>{{r, s}, hint};
}

/// Ephemeral scalar drawn from `ephemeral_seed`; degenerate draws retry with
/// seed + 1, seed + 2, ...
template <FieldInt Int>
RecoverableSignature<Int> ecdsa_sign_recoverable(std::span<const std::uint8_t> message, const KeyPair<Int>& signer,
                                                 std::uint64_t ephemeral_seed, const CurveGroup<Int>& group) {
  for (std::uint64_t seed = ephemeral_seed;; ++seed) {
    Rng rng(seed);
    Int k = ec::uniform_below(rng, Int(group.order() - 1)) + 1;
    if (auto sig = ecdsa_sign_with_nonce(message, signer, k, group)) return *sig;
  }
}

template <FieldInt Int>
EcdsaSignature<Int> ecdsa_sign(std::span<const std::uint8_t> message, const KeyPair<Int>& signer,
                               std::uint64_t ephemeral_seed, const CurveGroup<Int>& group) {
  return ecdsa_sign_recoverable(message, signer, ephemeral_seed, group).base;
}

/// Reconstructs K = u1*G + u2*Q and compares its abscissa with R.
/// Malformed inputs return false. (R, order - S) verifies as well: no low-S
/// rule is imposed.
template <FieldInt Int>
bool ecdsa_verify(std::span<const std::uint8_t> message, const EcdsaSignature<Int>& sig,
                  const GroupPoint<Int>& public_key, const CurveGroup<Int>& group) {
  if (group.form() != ec::CurveForm::weierstrass) return false;
  const Int& n = group.order();
  if (sig.r == 0 || sig.r >= n || sig.s == 0 || sig.s >= n) return false;
  if (public_key.is_identity() || !group.contains(public_key)) return false;
  const Int e = ecdsa_message_scalar(message, group);
  const Int w = ec::inv_mod(sig.s, n);
  const Int u1 = ec::mul_mod(e, w, n);
  const Int u2 = ec::mul_mod(sig.r, w, n);
  const auto k = group.add(group.mul_base(u1), group.mul(u2, public_key));
  if (k.is_identity()) return false;
  return k.x % n == sig.r;
}

/// Public-key recovery: Q = R^-1 (S*K - e*G) where K is the ephemeral point
/// selected by the hint. Throws RecoveryError when no such point exists.
template <FieldInt Int>
GroupPoint<Int> ecdsa_recover(std::span<const std::uint8_t> message, const RecoverableSignature<Int>& sig,
                              const CurveGroup<Int>& group) {
  detail::require_weierstrass(group);
  const Int& n = group.order();
  const auto& [r, s] = sig.base;
  if (sig.recovery_hint < 0 || sig.recovery_hint > 3) throw RecoveryError("recovery hint must be in [0, 3]");
  if (r == 0 || r >= n || s == 0 || s >= n) throw RecoveryError("signature components out of range");
  Int x = r;
  if (sig.recovery_hint & 2) {
    if (r >= group.prime() - n) throw RecoveryError("abscissa R + order exceeds the field");
    x = r + n;
  }
  auto k = group.lift_x(x, (sig.recovery_hint & 1) != 0);
  if (!k) throw RecoveryError("no curve point has abscissa " + ec::to_string(x));
  const Int e = ecdsa_message_scalar(message, group);
  const Int r_inv = ec::inv_mod(r, n);
  auto q = group.mul(r_inv, group.sub(group.mul(s, *k), group.mul_base(e)));
  if (q.is_identity()) throw RecoveryError("recovered the identity");
  return q;
}

}  // namespace qchain::sig
