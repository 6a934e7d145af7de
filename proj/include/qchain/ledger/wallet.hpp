#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qchain/ledger/node.hpp"

namespace qchain::ledger {

using ToyKeyPair = ec::KeyPair<ToyInt>;

struct WalletSpend {
  Transaction tx;
  TxAudit audit;
};

struct SpendSource {
  OutputRef ref;
  ToyKeyPair key;
};

/// Signs a transparent spend of `inputs` into `outputs`.
inline Transaction sign_utxo_spend(const std::vector<SpendSource>& inputs, std::vector<TxOutput> outputs,
                                   std::uint64_t fee, double now, const ToyGroup& g, Rng& rng) {
  Transaction tx;
  tx.fee = fee;
  tx.declared_at = now;
  UtxoBody body;
  for (const auto& in : inputs) body.inputs.push_back({in.ref, in.key.public_point, {}});
  body.outputs = std::move(outputs);
  tx.body = body;
  const Bytes payload = signing_payload(tx, g);
  auto& signed_body = std::get<UtxoBody>(tx.body);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    signed_body.inputs[i].signature = sig::ecdsa_sign(payload, inputs[i].key, rng.next(), g);
  return finalize(std::move(tx), g);
}

inline Transaction sign_account_transfer(const ToyKeyPair& key, AccountId to, std::uint64_t amount,
                                         std::uint64_t nonce, std::uint64_t fee, double now, const ToyGroup& g,
                                         Rng& rng) {
  Transaction tx;
  tx.fee = fee;
  tx.declared_at = now;
  tx.body = AccountBody{to, amount, nonce, {}};
  const Bytes payload = signing_payload(tx, g);
  std::get<AccountBody>(tx.body).signature = sig::ecdsa_sign_recoverable(payload, key, rng.next(), g);
  return finalize(std::move(tx), g);
}

/// Owner signature on Mimblewimble-style inputs, in the chain's EdDSA form.
inline sig::EddsaSignature<ToyInt> sign_owner(std::span<const std::uint8_t> payload, const ToyKeyPair& key,
                                             const ChainContext& ctx) {
  if (ctx.spec.signature_scheme == SignatureScheme::eddsa_zcash) return sig::eddsa_sign_zcash(payload, key, ctx.g());
  return sig::eddsa_sign_monero(payload, key, ctx.g());
}

/// A simulated user. Receiving always uses a fresh key except on account
/// chains, where the one account key is reused for everything. Spends only
/// use confirmed outputs that no pending transaction of this wallet already
/// consumes.
class Wallet {
 public:
  Wallet(std::string name, std::shared_ptr<const ChainContext> ctx, Rng rng)
      : name_(std::move(name)), ctx_(std::move(ctx)), rng_(std::move(rng)) {
    if (ctx_->spec.tx_model == TxModel::account) new_key();
  }

  const std::string& name() const { return name_; }
  const std::vector<ToyKeyPair>& keys() const { return keys_; }

  /// Key to pay this wallet. Account wallets return their account key.
  ToyPoint receive_key() {
    if (ctx_->spec.tx_model == TxModel::account) return keys_.front().public_point;
    return new_key().public_point;
  }
  Payee payee(bool raw_key = false) { return {receive_key(), raw_key}; }

  AccountId account() const { return account_address(keys_.front().public_point, ctx_->g()); }

  /// Spendable value: confirmed and not consumed by this wallet's pending
  /// transactions.
  std::uint64_t balance(const Node& node) const {
    if (ctx_->spec.tx_model == TxModel::account) {
      const auto acct = node.state().account(account());
      const auto pending = node.mempool().allowance(account()).pending_outflow;
      return acct.balance > pending ? acct.balance - pending : 0;
    }
    std::uint64_t total = 0;
    for (const auto& c : coins(node)) total += c.value;
    return total;
  }

  /// Builds (but does not submit) a payment. nullopt when funds are short.
  std::optional<WalletSpend> spend(const Node& node, const ToyPoint& recipient, std::uint64_t amount,
                                   std::uint64_t fee, double now) {
    if (amount == 0) return std::nullopt;
    std::optional<WalletSpend> out;
    switch (ctx_->spec.tx_model) {
      case TxModel::utxo: out = spend_utxo(node, recipient, amount, fee, now); break;
      case TxModel::account: out = spend_account(node, recipient, amount, fee, now); break;
      case TxModel::confidential_ring: out = spend_ring(node, recipient, amount, fee, now); break;
      case TxModel::confidential_mw: out = spend_mw(node, recipient, amount, fee, now); break;
      case TxModel::shielded_pool: out = spend_shielded(node, recipient, amount, fee, now); break;
    }
    if (out)
      for (const auto& ref : out->audit.true_spends) pending_[ref] = out->tx.id;
    return out;
  }

  /// Secret for one of this wallet's keys.
  std::optional<ToyKeyPair> key_for(const ToyPoint& pub) const {
    auto it = by_point_.find(point_key(pub));
    if (it == by_point_.end()) return std::nullopt;
    return keys_[it->second];
  }

 private:
  struct Coin {
    OutputRef ref;
    std::uint64_t value;
    ToyKeyPair key;
    privacy::Opening opening;
  };

  const ToyKeyPair& new_key() {
    keys_.push_back(ec::generate_keypair(ctx_->g(), rng_));
    by_point_[point_key(keys_.back().public_point)] = keys_.size() - 1;
    by_hash_[key_hash(keys_.back().public_point, ctx_->g())] = keys_.size() - 1;
    if (ctx_->spec.tx_model == TxModel::confidential_ring)
      key_images_.push_back(privacy::key_image(keys_.back().private_scalar, ctx_->g()));
    return keys_.back();
  }

  bool reserved(const Node& node, const OutputRef& ref) const {
    auto it = pending_.find(ref);
    return it != pending_.end() && node.mempool().contains(it->second);
  }

  // outputs are immutable, so each opening is decrypted once
  privacy::Opening opening_of(const OutputRef& ref, const privacy::SealedOpening& sealed, const ToyKeyPair& k) const {
    auto it = openings_.find(ref);
    if (it == openings_.end()) it = openings_.emplace(ref, privacy::unseal_opening(sealed, k.private_scalar, ctx_->g())).first;
    return it->second;
  }

  std::vector<Coin> coins(const Node& node) const {
    const auto& st = node.state();
    const auto& g = ctx_->g();
    std::vector<Coin> out;
    switch (ctx_->spec.tx_model) {
      case TxModel::utxo:
        for (const auto& [hash, idx] : by_hash_)
          for (const auto& ref : st.outputs_locked_to(hash))
            if (!reserved(node, ref)) out.push_back({ref, st.utxo(ref)->amount, keys_[idx], {}});
        break;
      case TxModel::confidential_ring:
      case TxModel::confidential_mw:
        for (std::size_t i = 0; i < keys_.size(); ++i) {
          const auto& k = keys_[i];
          auto ref = st.conf_output_owned_by(k.public_point);
          if (!ref || reserved(node, *ref)) continue;
          if (ctx_->spec.tx_model == TxModel::confidential_ring && st.key_image_spent(key_images_[i])) continue;
          auto o = opening_of(*ref, st.conf_output(*ref)->sealed, k);
          out.push_back({*ref, o.value, k, o});
        }
        break;
      case TxModel::shielded_pool:
        for (const auto& k : keys_) {
          auto ref = st.note_owned_by(k.public_point);
          if (!ref || reserved(node, *ref)) continue;
          const auto& note = st.note(*ref)->output;
          if (st.nullifier_spent(note_nullifier(k.private_scalar, note.note_commitment, g))) continue;
          auto o = opening_of(*ref, note.sealed, k);
          out.push_back({*ref, o.value, k, o});
        }
        break;
      case TxModel::account:
        break;
    }
    std::sort(out.begin(), out.end(), [](const Coin& a, const Coin& b) { return a.ref < b.ref; });
    return out;
  }

  /// Smallest single coin that covers the target, else largest-first.
  static std::optional<std::vector<Coin>> select(std::vector<Coin> coins, std::uint64_t target) {
    std::sort(coins.begin(), coins.end(), [](const Coin& a, const Coin& b) {
      return a.value != b.value ? a.value < b.value : a.ref < b.ref;
    });
    for (const auto& c : coins)
      if (c.value >= target) return std::vector<Coin>{c};
    std::vector<Coin> picked;
    std::uint64_t sum = 0;
    for (auto it = coins.rbegin(); it != coins.rend() && sum < target; ++it) {
      picked.push_back(*it);
      sum += it->value;
    }
    if (sum < target) return std::nullopt;
    return picked;
  }

  static std::uint64_t total(const std::vector<Coin>& cs) {
    std::uint64_t s = 0;
    for (const auto& c : cs) s += c.value;
    return s;
  }

  std::optional<WalletSpend> spend_utxo(const Node& node, const ToyPoint& recipient, std::uint64_t amount,
                                        std::uint64_t fee, double now) {
    const auto& g = ctx_->g();
    auto picked = select(coins(node), amount + fee);
    if (!picked) return std::nullopt;
    const bool legacy = rng_.bernoulli(ctx_->spec.legacy_p2pk_fraction);
    std::vector<TxOutput> outputs{{amount, lock_for(recipient, legacy, g)}};
    const std::uint64_t change = total(*picked) - amount - fee;
    if (change > 0) outputs.push_back({change, lock_for(new_key().public_point, false, g)});
    std::vector<SpendSource> inputs;
    WalletSpend ws;
    for (const auto& c : *picked) {
      inputs.push_back({c.ref, c.key});
      ws.audit.true_spends.push_back(c.ref);
    }
    ws.tx = sign_utxo_spend(inputs, std::move(outputs), fee, now, g, rng_);
    return ws;
  }

  std::optional<WalletSpend> spend_account(const Node& node, const ToyPoint& recipient, std::uint64_t amount,
                                           std::uint64_t fee, double now) {
    if (balance(node) < amount + fee) return std::nullopt;
    const auto& g = ctx_->g();
    const auto nonce = node.state().account(account()).nonce + node.mempool().allowance(account()).nonce_offset;
    WalletSpend ws;
    ws.tx = sign_account_transfer(keys_.front(), account_address(recipient, g), amount, nonce, fee, now, g, rng_);
    return ws;
  }

  /// Recipient and change outputs with sealed openings; returns the output
  /// blindings.
  std::vector<ToyInt> confidential_outputs(std::vector<ConfOutput>& outputs, TxAudit& audit,
                                           const ToyPoint& recipient, std::uint64_t amount, std::uint64_t change) {
    const auto& g = ctx_->g();
    std::vector<ToyInt> blindings;
    auto add = [&](const ToyPoint& owner, std::uint64_t value) {
      privacy::Opening o{value, ec::uniform_below(rng_, g.order())};
      outputs.push_back({owner, privacy::commit(value, o.blinding, ctx_->pedersen), privacy::seal_opening(o, owner, g, rng_)});
      audit.openings[static_cast<std::uint32_t>(outputs.size() - 1)] = o;
      blindings.push_back(o.blinding);
    };
    add(recipient, amount);
    if (change > 0) add(new_key().public_point, change);
    return blindings;
  }

  std::optional<WalletSpend> spend_ring(const Node& node, const ToyPoint& recipient, std::uint64_t amount,
                                        std::uint64_t fee, double now) {
    const auto& g = ctx_->g();
    const auto& st = node.state();
    auto picked = select(coins(node), amount + fee);
    if (!picked) return std::nullopt;
    const std::size_t ring_size = ctx_->spec.ring_size;
    WalletSpend ws;
    ConfidentialBody body;
    std::vector<ToyInt> pseudo_blindings, column_secrets;
    for (const auto& c : *picked) {
      auto ring = privacy::build_ring<OutputRef>(c.ref, st.conf_history(), ring_size, rng_);
      const ToyInt rp = ec::uniform_below(rng_, g.order());
      RingView view{ring.members, privacy::commit(c.value, rp, ctx_->pedersen), {}};
      view.proof.key_image = privacy::key_image(c.key.private_scalar, g);
      body.inputs.push_back(std::move(view));
      pseudo_blindings.push_back(rp);
      column_secrets.push_back(ec::sub_mod(c.opening.blinding, rp, g.order()));
      ws.audit.true_spends.push_back(c.ref);
      ws.audit.ring_true_index.push_back(ring.true_index);
    }
    auto out_blindings = confidential_outputs(body.outputs, ws.audit, recipient, amount, total(*picked) - amount - fee);
    body.excess = privacy::blinding_excess<ToyInt>(pseudo_blindings, out_blindings, g);
    ws.tx.fee = fee;
    ws.tx.declared_at = now;
    ws.tx.body = body;
    const Bytes payload = signing_payload(ws.tx, g);
    auto& b = std::get<ConfidentialBody>(ws.tx.body);
    for (std::size_t i = 0; i < b.inputs.size(); ++i) {
      auto& in = b.inputs[i];
      std::vector<ToyPoint> keys, diffs;
      for (const auto& m : in.members) {
        const ConfOutput* o = st.conf_output(m);
        keys.push_back(o->owner_key);
        diffs.push_back(g.sub(o->commitment.point, in.pseudo.point));
      }
      privacy::CommitmentColumn<ToyInt> column{diffs, ctx_->pedersen.H};
      in.proof = privacy::ring_sign<ToyInt>(payload, keys, ws.audit.ring_true_index[i], (*picked)[i].key.private_scalar,
                                            g, rng_, column, column_secrets[i]);
    }
    ws.tx = finalize(std::move(ws.tx), g);
    return ws;
  }

  std::optional<WalletSpend> spend_mw(const Node& node, const ToyPoint& recipient, std::uint64_t amount,
                                      std::uint64_t fee, double now) {
    const auto& g = ctx_->g();
    auto picked = select(coins(node), amount + fee);
    if (!picked) return std::nullopt;
    WalletSpend ws;
    MwBody body;
    std::vector<ToyInt> in_blindings;
    for (const auto& c : *picked) {
      body.inputs.push_back({c.ref, {}});
      in_blindings.push_back(c.opening.blinding);
      ws.audit.true_spends.push_back(c.ref);
    }
    auto out_blindings = confidential_outputs(body.outputs, ws.audit, recipient, amount, total(*picked) - amount - fee);
    body.excess = privacy::blinding_excess<ToyInt>(in_blindings, out_blindings, g);
    ws.tx.fee = fee;
    ws.tx.declared_at = now;
    ws.tx.body = body;
    const Bytes payload = signing_payload(ws.tx, g);
    auto& b = std::get<MwBody>(ws.tx.body);
    for (std::size_t i = 0; i < b.inputs.size(); ++i) b.inputs[i].signature = sign_owner(payload, (*picked)[i].key, *ctx_);
    ws.tx = finalize(std::move(ws.tx), g);
    return ws;
  }

  std::optional<WalletSpend> spend_shielded(const Node& node, const ToyPoint& recipient, std::uint64_t amount,
                                            std::uint64_t fee, double now) {
    const auto& g = ctx_->g();
    auto picked = select(coins(node), amount + fee);
    if (!picked) return std::nullopt;
    WalletSpend ws;
    privacy::ShieldedTransfer t;
    t.fee = fee;
    std::vector<SpendWitness> witnesses;
    std::vector<ToyInt> in_blindings;
    for (const auto& c : *picked) {
      const auto& note = node.state().note(c.ref)->output;
      const ToyInt rv = ec::uniform_below(rng_, g.order());
      t.spends.push_back({note_nullifier(c.key.private_scalar, note.note_commitment, g),
                          privacy::commit(c.value, rv, ctx_->pedersen)});
      witnesses.push_back({c.ref, c.key.private_scalar, c.opening, rv});
      in_blindings.push_back(rv);
      ws.audit.true_spends.push_back(c.ref);
    }
    std::vector<privacy::Opening> out_openings;
    auto add = [&](const ToyPoint& owner, std::uint64_t value) {
      privacy::Opening o{value, ec::uniform_below(rng_, g.order())};
      t.outputs.push_back({privacy::commit(value, o.blinding, ctx_->pedersen), owner, privacy::seal_opening(o, owner, g, rng_)});
      ws.audit.openings[static_cast<std::uint32_t>(t.outputs.size() - 1)] = o;
      out_openings.push_back(o);
    };
    add(recipient, amount);
    if (const auto change = total(*picked) - amount - fee; change > 0) add(new_key().public_point, change);
    std::vector<ToyInt> out_blindings;
    for (const auto& o : out_openings) out_blindings.push_back(o.blinding);
    t.excess = privacy::blinding_excess<ToyInt>(in_blindings, out_blindings, g);
    auto proof = HonestProver(*ctx_->proofs, node.state()).prove(t, witnesses, out_openings);
    if (!proof) return std::nullopt;
    t.proof = *proof;
    ws.tx.fee = fee;
    ws.tx.declared_at = now;
    ws.tx.body = ShieldedBody{std::move(t)};
    ws.tx = finalize(std::move(ws.tx), g);
    return ws;
  }

  std::string name_;
  std::shared_ptr<const ChainContext> ctx_;
  Rng rng_;
  std::vector<ToyKeyPair> keys_;
  std::unordered_map<std::uint64_t, std::size_t> by_point_;
  std::unordered_map<std::uint64_t, std::size_t> by_hash_;
  std::vector<ToyPoint> key_images_;  // ring chains: per key, same order as keys_
  mutable std::map<OutputRef, privacy::Opening> openings_;
  std::unordered_map<OutputRef, TxId, OutputRefHash> pending_;
};

/// Genesis block paying each allocation from a coinbase-shaped transaction.
struct Genesis {
  Block block;
  std::vector<std::pair<TxId, TxAudit>> audits;
  std::uint64_t total{0};
};

inline Genesis make_genesis(const ChainContext& ctx, const std::vector<std::pair<Payee, std::uint64_t>>& allocations,
                            Rng& rng) {
  LedgerState empty(ctx);
  Genesis gen;
  gen.block.height = 0;
  gen.block.miner = "genesis";
  std::uint32_t slot = 0;
  auto add = [&](const Payee& p, std::uint64_t amount) {
    auto cb = make_coinbase(empty, 0, amount, p, slot++, rng);
    gen.audits.emplace_back(cb.tx.id, std::move(cb.audit));
    gen.block.txs.push_back(std::move(cb.tx));
    gen.total += amount;
  };
  for (const auto& [p, amount] : allocations) add(p, amount);
  if (gen.block.txs.empty()) add(Payee{ctx.g().generator(), false}, 0);
  gen.block.id = compute_block_id(gen.block);
  return gen;
}

}  // namespace qchain::ledger
