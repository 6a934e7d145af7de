#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qchain/privacy/opening.hpp"
#include "qchain/privacy/pedersen.hpp"
#include "qchain/privacy/setup.hpp"

namespace qchain::ledger {
class HonestProver;
}

namespace qchain::privacy {

// Shielded-pool transfers. The proof system is not implemented; a proof is
// accepted if it is either
//   * an attestation tag from the honest prover, which only issues one after
//     checking the witness against the pool (ledger::HonestProver), or
//   * a Schnorr proof of knowledge of the setup secret bound to the statement.
// The second branch is the trapdoor: whoever holds the ceremony secret can
// "prove" any statement, in particular spends of notes that never existed.

using ToyCommitment = PedersenCommitment<ec::ToyInt>;

struct ShieldedSpend {
  std::uint64_t nullifier{0};
  ToyCommitment value_commitment;
};

struct ShieldedOutput {
  ToyCommitment note_commitment;
  ec::ToyPoint owner;
  SealedOpening sealed;
};

struct ShieldedProof {
  enum class Kind : std::uint8_t { attestation, schnorr };
  Kind kind{Kind::attestation};
  Digest attestation{};
  ec::ToyPoint nonce_point;
  ec::ToyInt response{0};
};

/// Public part of a shielded transfer. `public_in` is transparent value
/// entering the pool (coinbase), `fee` leaves it.
struct ShieldedTransfer {
  std::vector<ShieldedSpend> spends;
  std::vector<ShieldedOutput> outputs;
  std::uint64_t public_in{0};
  std::uint64_t fee{0};
  ec::ToyInt excess{0};
  ShieldedProof proof;
};

inline Digest shielded_statement(const ShieldedTransfer& t, const ec::ToyGroup& group) {
  ByteWriter w;
  w.str("shielded/statement").u64(t.spends.size());
  for (const auto& s : t.spends) w.u64(s.nullifier).bytes(group.encode(s.value_commitment.point));
  w.u64(t.outputs.size());
  for (const auto& o : t.outputs)
    w.bytes(group.encode(o.note_commitment.point)).bytes(group.encode(o.owner)).bytes(group.encode(o.sealed.ephemeral))
        .bytes(o.sealed.ciphertext);
  w.u64(t.public_in).u64(t.fee).bytes(group.encode_scalar(t.excess));
  return sha256(w.data());
}


inline ec::ToyInt trapdoor_challenge(const Digest& statement, const ec::ToyPoint& nonce_point,
                                     const ec::ToyGroup& group) {
  return ec::hash_to_scalar("snark/challenge", {Bytes(statement.begin(), statement.end()), group.encode(nonce_point)},
                            group.order());
}

/// Proof produced with a claimed setup secret. Whether it verifies depends
/// on whether the claim is right.
inline ShieldedProof prove_with_trapdoor(const Digest& statement, const ec::ToyInt& claimed_secret,
                                         const ec::ToyGroup& group, Rng& rng) {
  auto nonce = ec::generate_keypair(group, rng);
  auto e = trapdoor_challenge(statement, nonce.public_point, group);
  const auto& n = group.order();
  ShieldedProof p;
  p.kind = ShieldedProof::Kind::schnorr;
  p.nonce_point = nonce.public_point;
  p.response = ec::add_mod(nonce.private_scalar, ec::mul_mod(e, claimed_secret % n, n), n);
  return p;
}

/// Verifier side of the stubbed proof system. The attestation key is private
/// and only the honest prover may tag statements, so validators can check
/// proofs without being able to mint them.
class ProofSystem {
 public:
  ProofSystem(SetupKey<ec::ToyInt> setup, std::uint64_t seed)
      : setup_(std::move(setup)), tag_key_(sha256(ByteWriter().str("snark/tag-key").u64(seed).data())) {}

  const SetupKey<ec::ToyInt>& setup_key() const noexcept { return setup_; }

  bool verify(const Digest& statement, const ShieldedProof& proof, const ec::ToyGroup& group) const {
    if (proof.kind == ShieldedProof::Kind::attestation) return proof.attestation == tag(statement);
    if (!group.contains(proof.nonce_point) || proof.response >= group.order()) return false;
    auto e = trapdoor_challenge(statement, proof.nonce_point, group);
    return group.mul_base(proof.response) == group.add(proof.nonce_point, group.mul(e, setup_.greater_public_key));
  }

 private:
  friend class ::qchain::ledger::HonestProver;

  Digest tag(const Digest& statement) const {
    return sha256(ByteWriter().str("snark/attest").bytes(tag_key_).bytes(statement).data());
  }

  SetupKey<ec::ToyInt> setup_;
  Digest tag_key_;
};

inline bool shielded_balance(const ShieldedTransfer& t, const PedersenParams<ec::ToyInt>& params) {
  const auto& g = params.group;
  auto lhs = g.mul(ec::ToyInt(t.public_in), params.G);
  for (const auto& s : t.spends) lhs = g.add(lhs, s.value_commitment.point);
  for (const auto& o : t.outputs) lhs = g.sub(lhs, o.note_commitment.point);
  lhs = g.sub(lhs, g.mul(ec::ToyInt(t.fee), params.G));
  return lhs == g.mul(t.excess, params.H);
}

/// A forged mint: spends a fabricated note worth `amount` (fresh nullifier,
/// commitment nobody ever created) into a real note owned by `recipient`,
/// and covers the missing membership witness with a trapdoor proof.
struct ForgedMint {
  ShieldedTransfer transfer;
  Opening minted;
};

inline ForgedMint mint_with_setup_key(const ec::ToyInt& secret, std::uint64_t amount,
                                      const SetupKey<ec::ToyInt>& setup, const PedersenParams<ec::ToyInt>& params,
                                      const ec::ToyPoint& recipient, Rng& rng) {
  (void)setup;  // the key is only needed by whoever checks the proof
  const auto& g = params.group;
  auto r_in = ec::uniform_below(rng, g.order());
  auto r_out = ec::uniform_below(rng, g.order());
  Opening minted{amount, r_out};
  ForgedMint f;
  f.minted = minted;
  f.transfer.spends.push_back({rng.next(), commit(amount, r_in, params)});
  f.transfer.outputs.push_back({commit(amount, r_out, params), recipient, seal_opening(minted, recipient, g, rng)});
  f.transfer.excess = ec::sub_mod(r_in, r_out, g.order());
  f.transfer.proof = prove_with_trapdoor(shielded_statement(f.transfer, g), secret, g, rng);
  return f;
}

}  // namespace qchain::privacy
