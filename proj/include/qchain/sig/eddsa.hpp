#pragma once

// Edwards-curve signatures in the two shapes used by privacy chains.
//
// Monero shape (as published):
//   h_k = H(k),  r = H(h_k, m),  R = rG,  s = (r + H(R, K, m)) * k
// Verification: multiplying out gives s*G = (r + h) * K = k * (R + h*G), i.e.
// (G, K, R + hG, sG) must be a Diffie-Hellman tuple. No combination of group
// operations on the public values decides that, so the verifier needs the
// ephemeral scalar r. On attackable toy groups it takes the discrete log of R
// and checks s*G == (r + h) * K; on full-size groups the as-published shape
// cannot be verified and MoneroVariant::standard must be used.
//
// Monero shape (standard, for comparison):
//   s = r + H(R, K, m) * k,  verify s*G == R + h*K
//
// ZCash shape:
//   r = H(a, M),  R = rB,  S = (r + H(R, A, M) * a) mod L
// Verification: S*B = r*B + h*a*B, so accept iff S*B == R + h*A.
//
// The two shapes hash under different domain tags, so a signature produced
// under one never verifies under the other except by chance.

#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>

#include "qchain/ec/bsgs.hpp"
#include "qchain/ec/keys.hpp"

namespace qchain::sig {

using ec::CurveGroup;
using ec::FieldInt;
using ec::GroupPoint;
using ec::KeyPair;

template <FieldInt Int>
struct EddsaSignature {
  GroupPoint<Int> R;
  Int s{0};
  friend bool operator==(const EddsaSignature&, const EddsaSignature&) = default;
};

enum class MoneroVariant { as_published, standard };

namespace detail {

template <FieldInt Int>
void require_edwards(const CurveGroup<Int>& group) {
  if (group.form() != ec::CurveForm::twisted_edwards)
    throw std::invalid_argument("EdDSA needs a twisted-Edwards group, got " + group.label());
}

inline Bytes span_bytes(std::span<const std::uint8_t> s) { return Bytes(s.begin(), s.end()); }

// Deterministic nonce; the counter only participates if the first draw is 0.
template <FieldInt Int>
Int nonzero_nonce(std::string_view tag, const Bytes& key_part, const Bytes& msg, const Int& order) {
  Int r = ec::hash_to_scalar(tag, {key_part, msg}, order);
  for (std::uint8_t ctr = 1; r == 0; ++ctr) r = ec::hash_to_scalar(tag, {key_part, msg, Bytes{ctr}}, order);
  return r;
}

}  // namespace detail

template <FieldInt Int>
Int monero_challenge(const GroupPoint<Int>& R, const GroupPoint<Int>& K, std::span<const std::uint8_t> message,
                     const CurveGroup<Int>& group) {
  return ec::hash_to_scalar("monero/challenge", {group.encode(R), group.encode(K), detail::span_bytes(message)},
                            group.order());
}

template <FieldInt Int>
EddsaSignature<Int> eddsa_sign_monero(std::span<const std::uint8_t> message, const KeyPair<Int>& signer,
                                      const CurveGroup<Int>& group,
                                      MoneroVariant variant = MoneroVariant::as_published) {
  detail::require_edwards(group);
  const Int& n = group.order();
  const Int k = signer.private_scalar % n;
  const Digest hk_digest = sha256(ByteWriter().str("monero/hk").bytes(group.encode_scalar(k)).data());
  const Bytes hk(hk_digest.begin(), hk_digest.end());
  const Int r = detail::nonzero_nonce("monero/nonce", hk, detail::span_bytes(message), n);
  const auto R = group.mul_base(r);
  const Int h = monero_challenge(R, signer.public_point, message, group);
  const Int s = variant == MoneroVariant::as_published ? ec::mul_mod(ec::add_mod(r, h, n), k, n)
                                                       : ec::add_mod(r, ec::mul_mod(h, k, n), n);
  return {R, s};
}

template <FieldInt Int>
bool eddsa_verify_monero(std::span<const std::uint8_t> message, const EddsaSignature<Int>& sig,
                         const GroupPoint<Int>& public_key, const CurveGroup<Int>& group,
                         MoneroVariant variant = MoneroVariant::as_published) {
  if (group.form() != ec::CurveForm::twisted_edwards) return false;
  const Int& n = group.order();
  if (sig.s >= n || !group.contains(sig.R) || !group.contains(public_key) || public_key.is_identity()) return false;
  const Int h = monero_challenge(sig.R, public_key, message, group);
  const auto lhs = group.mul_base(sig.s);
  if (variant == MoneroVariant::standard) return lhs == group.add(sig.R, group.mul(h, public_key));

  if constexpr (std::is_same_v<Int, ec::ToyInt>) {
    if (!group.attackable())
      throw std::domain_error("as-published Monero verification needs an attackable group");
    auto r = ec::bsgs_for(group).solve(sig.R);
    if (!r) return false;
    return lhs == group.mul(ec::add_mod(*r, h, n), public_key);
  } else {
    throw std::domain_error("as-published Monero verification needs an attackable group");
  }
}

template <FieldInt Int>
Int zcash_challenge(const GroupPoint<Int>& R, const GroupPoint<Int>& A, std::span<const std::uint8_t> message,
                    const CurveGroup<Int>& group) {
  return ec::hash_to_scalar("zcash/challenge", {group.encode(R), group.encode(A), detail::span_bytes(message)},
                            group.order());
}

template <FieldInt Int>
EddsaSignature<Int> eddsa_sign_zcash(std::span<const std::uint8_t> message, const KeyPair<Int>& signer,
                                     const CurveGroup<Int>& group) {
  detail::require_edwards(group);
  const Int& n = group.order();
  const Int a = signer.private_scalar % n;
  const Int r = detail::nonzero_nonce("zcash/nonce", group.encode_scalar(a), detail::span_bytes(message), n);
  const auto R = group.mul_base(r);
  const Int h = zcash_challenge(R, signer.public_point, message, group);
  return {R, ec::add_mod(r, ec::mul_mod(h, a, n), n)};
}

template <FieldInt Int>
bool eddsa_verify_zcash(std::span<const std::uint8_t> message, const EddsaSignature<Int>& sig,
                        const GroupPoint<Int>& public_key, const CurveGroup<Int>& group) {
  if (group.form() != ec::CurveForm::twisted_edwards) return false;
  if (sig.s >= group.order() || !group.contains(sig.R) || !group.contains(public_key) || public_key.is_identity())
    return false;
  const Int h = zcash_challenge(sig.R, public_key, message, group);
  return group.mul_base(sig.s) == group.add(sig.R, group.mul(h, public_key));
}

}  // namespace qchain::sig
