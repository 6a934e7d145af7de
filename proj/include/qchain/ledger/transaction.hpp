#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qchain/core/bytes.hpp"
#include "qchain/ec/curve.hpp"
#include "qchain/privacy/opening.hpp"
#include "qchain/privacy/ring.hpp"
#include "qchain/privacy/shielded.hpp"
#include "qchain/sig/ecdsa.hpp"
#include "qchain/sig/eddsa.hpp"

namespace qchain::ledger {

using ec::ToyGroup;
using ec::ToyInt;
using ec::ToyPoint;
using TxId = std::uint64_t;
using BlockId = std::uint64_t;
using AccountId = std::uint64_t;
using Commitment = privacy::PedersenCommitment<ToyInt>;

struct OutputRef {
  TxId tx{0};
  std::uint32_t index{0};
  friend auto operator<=>(const OutputRef&, const OutputRef&) = default;
};

struct OutputRefHash {
  std::size_t operator()(const OutputRef& r) const noexcept { return std::hash<std::uint64_t>()(r.tx * 31 + r.index); }
};

/// Hashable key for a point (toy coordinates fit in 31 bits each).
inline std::uint64_t point_key(const ToyPoint& p) { return p.is_identity() ? UINT64_MAX : (p.x << 32) ^ p.y; }

inline std::uint64_t key_hash(const ToyPoint& key, const ToyGroup& group) {
  return digest_prefix64(sha256(ByteWriter().str("key-hash").bytes(group.encode(key)).data()));
}

/// Account address: the hash of the account key. Transactions carry no
/// sender field; validators recover the key from the signature.
inline AccountId account_address(const ToyPoint& key, const ToyGroup& group) {
  return digest_prefix64(sha256(ByteWriter().str("address").bytes(group.encode(key)).data()));
}

// --- transparent UTXO --------------------------------------------------------

/// Pay-to-key-hash keeps the key private until it is spent; pay-to-key
/// (legacy) publishes it in the output itself.
enum class LockKind : std::uint8_t { key_hash, raw_key };

struct Lock {
  LockKind kind{LockKind::key_hash};
  std::uint64_t hash{0};  // key_hash of the key, for both kinds
  ToyPoint key;           // set for raw_key only
  friend bool operator==(const Lock&, const Lock&) = default;
};

struct TxOutput {
  std::uint64_t amount{0};
  Lock lock;
  friend bool operator==(const TxOutput&, const TxOutput&) = default;
};

struct UtxoInput {
  OutputRef prev;
  ToyPoint public_key;  // declared when spending
  sig::EcdsaSignature<ToyInt> signature;
};

struct UtxoBody {
  std::vector<UtxoInput> inputs;
  std::vector<TxOutput> outputs;
};

// --- account -----------------------------------------------------------------

struct AccountBody {
  AccountId to{0};
  std::uint64_t amount{0};
  std::uint64_t nonce{0};
  sig::RecoverableSignature<ToyInt> signature;
};

// --- confidential (ring and Mimblewimble) --------------------------------------

/// Output of a value-hiding chain: an owner key (one-time for ring chains),
/// a Pedersen commitment, and the opening sealed to the owner key.
struct ConfOutput {
  ToyPoint owner_key;
  Commitment commitment;
  privacy::SealedOpening sealed;
};

/// What a validator sees of a ring input. The true member is not recorded
/// anywhere on-chain.
struct RingView {
  std::vector<OutputRef> members;
  Commitment pseudo;
  privacy::RingSignature<ToyInt> proof;
};

struct ConfidentialBody {
  std::vector<RingView> inputs;
  std::vector<ConfOutput> outputs;
  ToyInt excess{0};
};

struct MwInput {
  OutputRef prev;
  sig::EddsaSignature<ToyInt> signature;  // by the owner key of `prev`
};

struct MwBody {
  std::vector<MwInput> inputs;
  std::vector<ConfOutput> outputs;
  ToyInt excess{0};
};

// --- shielded pool -------------------------------------------------------------

struct ShieldedBody {
  privacy::ShieldedTransfer transfer;
};

// --- coinbase ----------------------------------------------------------------

/// Block reward plus fees (or, in the genesis block, an initial allocation).
/// The payout shape follows the chain's model; confidential payouts commit
/// with blinding 0 so the amount is checkable.
struct CoinbaseBody {
  std::uint64_t height{0};
  std::uint64_t amount{0};
  std::uint32_t slot{0};  // distinguishes several genesis allocations
  std::variant<TxOutput, AccountId, ConfOutput, privacy::ShieldedTransfer> payout;
};

using TxBody = std::variant<UtxoBody, AccountBody, ConfidentialBody, MwBody, ShieldedBody, CoinbaseBody>;

struct Transaction {
  TxId id{0};
  std::uint64_t fee{0};
  double declared_at{0};
  TxBody body;

  bool is_coinbase() const { return std::holds_alternative<CoinbaseBody>(body); }
};

// --- serialization -------------------------------------------------------------

namespace detail {

struct Writer {
  ByteWriter& w;
  const ToyGroup& g;
  bool with_signatures;

  void point(const ToyPoint& p) { w.bytes(g.encode(p)); }
  void scalar(ToyInt s) { w.u64(s); }
  void ref(const OutputRef& r) { w.u64(r.tx).u32(r.index); }
  void output(const TxOutput& o) {
    w.u64(o.amount).u8(static_cast<std::uint8_t>(o.lock.kind)).u64(o.lock.hash);
    point(o.lock.key);
  }
  void conf(const ConfOutput& o) {
    point(o.owner_key);
    point(o.commitment.point);
    point(o.sealed.ephemeral);
    w.bytes(o.sealed.ciphertext);
  }
  void ecdsa(const sig::EcdsaSignature<ToyInt>& s) {
    if (with_signatures) w.u64(s.r).u64(s.s);
  }
  void eddsa(const sig::EddsaSignature<ToyInt>& s) {
    if (!with_signatures) return;
    point(s.R);
    w.u64(s.s);
  }
  void ring(const privacy::RingSignature<ToyInt>& s) {
    // The key image is part of the signed statement; the responses are not.
    point(s.key_image);
    if (!with_signatures) return;
    w.u64(s.c0).u64(s.responses.size());
    for (auto r : s.responses) w.u64(r);
    w.u64(s.commitment_responses.size());
    for (auto r : s.commitment_responses) w.u64(r);
  }
  void shielded(const privacy::ShieldedTransfer& t) {
    w.bytes(privacy::shielded_statement(t, g));
    if (!with_signatures) return;
    const auto& p = t.proof;
    w.u8(static_cast<std::uint8_t>(p.kind)).bytes(p.attestation);
    point(p.nonce_point);
    w.u64(p.response);
  }

  void operator()(const UtxoBody& b) {
    w.u8(0).u64(b.inputs.size());
    for (const auto& in : b.inputs) {
      ref(in.prev);
      point(in.public_key);
      ecdsa(in.signature);
    }
    w.u64(b.outputs.size());
    for (const auto& o : b.outputs) output(o);
  }
  void operator()(const AccountBody& b) {
    w.u8(1).u64(b.to).u64(b.amount).u64(b.nonce);
    ecdsa(b.signature.base);
    if (with_signatures) w.u8(static_cast<std::uint8_t>(b.signature.recovery_hint));
  }
  void operator()(const ConfidentialBody& b) {
    w.u8(2).u64(b.inputs.size());
    for (const auto& in : b.inputs) {
      w.u64(in.members.size());
      for (const auto& m : in.members) ref(m);
      point(in.pseudo.point);
      ring(in.proof);
    }
    w.u64(b.outputs.size());
    for (const auto& o : b.outputs) conf(o);
    scalar(b.excess);
  }
  void operator()(const MwBody& b) {
    w.u8(3).u64(b.inputs.size());
    for (const auto& in : b.inputs) {
      ref(in.prev);
      eddsa(in.signature);
    }
    w.u64(b.outputs.size());
    for (const auto& o : b.outputs) conf(o);
    scalar(b.excess);
  }
  void operator()(const ShieldedBody& b) {
    w.u8(4);
    shielded(b.transfer);
  }
  void operator()(const CoinbaseBody& b) {
    w.u8(5).u64(b.height).u64(b.amount).u32(b.slot).u8(static_cast<std::uint8_t>(b.payout.index()));
    std::visit(
        [this](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, TxOutput>) output(p);
          else if constexpr (std::is_same_v<P, AccountId>) w.u64(p);
          else if constexpr (std::is_same_v<P, ConfOutput>) conf(p);
          else shielded(p);
        },
        b.payout);
  }
};

}  // namespace detail

/// The bytes every signature in the transaction commits to: everything
/// except the signatures themselves.
inline Bytes signing_payload(const Transaction& tx, const ToyGroup& group) {
  ByteWriter w;
  w.str("tx/sighash").u64(tx.fee);
  detail::Writer wr{w, group, false};
  std::visit(wr, tx.body);
  return w.take();
}

inline TxId compute_tx_id(const Transaction& tx, const ToyGroup& group) {
  ByteWriter w;
  w.str("tx/id").u64(tx.fee);
  detail::Writer wr{w, group, true};
  std::visit(wr, tx.body);
  return digest_prefix64(sha256(w.data()));
}

inline Transaction finalize(Transaction tx, const ToyGroup& group) {
  tx.id = compute_tx_id(tx, group);
  return tx;
}

struct Block {
  BlockId id{0};
  BlockId parent{0};
  std::uint64_t height{0};
  std::vector<Transaction> txs;
  std::string miner;
  double timestamp{0};
  Bytes pow_witness;
};

inline BlockId compute_block_id(const Block& b) {
  ByteWriter w;
  w.str("block").u64(b.parent).u64(b.height).str(b.miner).u64(static_cast<std::uint64_t>(b.timestamp * 1000.0));
  w.u64(b.txs.size());
  for (const auto& tx : b.txs) w.u64(tx.id);
  w.bytes(b.pow_witness);
  return digest_prefix64(sha256(w.data()));
}

}  // namespace qchain::ledger
