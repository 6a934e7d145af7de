#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "qchain/ledger/context.hpp"
#include "qchain/ledger/transaction.hpp"

namespace qchain::ledger {

enum class RejectReason {
  malformed,
  wrong_model,
  bad_signature,
  overspend,
  bad_nonce,
  unbalanced_commitment,
  double_spend,
  unknown_input,
  bad_proof,
  bad_coinbase,
};

inline const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::malformed: return "malformed";
    case RejectReason::wrong_model: return "wrong_model";
    case RejectReason::bad_signature: return "bad_signature";
    case RejectReason::overspend: return "overspend";
    case RejectReason::bad_nonce: return "bad_nonce";
    case RejectReason::unbalanced_commitment: return "unbalanced_commitment";
    case RejectReason::double_spend: return "double_spend";
    case RejectReason::unknown_input: return "unknown_input";
    case RejectReason::bad_proof: return "bad_proof";
    case RejectReason::bad_coinbase: return "bad_coinbase";
  }
  return "?";
}

struct Account {
  std::uint64_t balance{0};
  std::uint64_t nonce{0};
  friend bool operator==(const Account&, const Account&) = default;
};

/// Mempool-side allowances when validating against the tip: nonces and
/// outflows of the sender's transactions that are already pending.
struct PendingAllowance {
  std::uint64_t nonce_offset{0};
  std::uint64_t pending_outflow{0};
};

/// Notes of the shielded pool, as validators and wallets see them.
struct NoteRecord {
  OutputRef ref;
  privacy::ShieldedOutput output;
};

/// Chain state at the tip: UTXO set, accounts, confidential outputs, key
/// images, nullifiers and notes, plus issuance counters. Mutations go through
/// apply(), which records an undo log so reorgs can roll back.
class LedgerState {
 public:
  struct UtxoAdd { OutputRef ref; };
  struct UtxoRemove { OutputRef ref; TxOutput out; };
  struct ConfAdd { OutputRef ref; };
  struct ConfRemove { OutputRef ref; ConfOutput out; };
  struct KeyImageAdd { std::uint64_t key; };
  struct NullifierAdd { std::uint64_t nf; };
  struct NoteAdd { OutputRef ref; };
  struct AccountSet { AccountId id; std::optional<Account> before; };
  struct Counters { std::uint64_t minted, fees; std::int64_t pool; };
  using Change = std::variant<UtxoAdd, UtxoRemove, ConfAdd, ConfRemove, KeyImageAdd, NullifierAdd, NoteAdd,
                              AccountSet, Counters>;
  using UndoLog = std::vector<Change>;

  explicit LedgerState(const ChainContext& ctx) : ctx_(&ctx) {}

  const ChainContext& context() const { return *ctx_; }

  // --- queries -------------------------------------------------------------

  const TxOutput* utxo(const OutputRef& r) const {
    auto it = utxos_.find(r);
    return it == utxos_.end() ? nullptr : &it->second;
  }
  const ConfOutput* conf_output(const OutputRef& r) const {
    auto it = conf_.find(r);
    return it == conf_.end() ? nullptr : &it->second;
  }
  bool was_spent(const OutputRef& r) const { return spent_.count(r) != 0; }
  bool key_image_spent(const ToyPoint& image) const { return key_images_.count(point_key(image)) != 0; }
  bool nullifier_spent(std::uint64_t nf) const { return nullifiers_.count(nf) != 0; }
  const NoteRecord* note(const OutputRef& r) const {
    auto it = notes_.find(r);
    return it == notes_.end() ? nullptr : &it->second;
  }
  const NoteRecord* note_by_commitment(const ToyPoint& c) const {
    auto it = notes_by_commitment_.find(point_key(c));
    return it == notes_by_commitment_.end() ? nullptr : note(it->second);
  }
  Account account(AccountId id) const {
    auto it = accounts_.find(id);
    return it == accounts_.end() ? Account{} : it->second;
  }
  const std::set<OutputRef>& outputs_locked_to(std::uint64_t hash) const {
    static const std::set<OutputRef> empty;
    auto it = by_lock_.find(hash);
    return it == by_lock_.end() ? empty : it->second;
  }
  std::optional<OutputRef> conf_output_owned_by(const ToyPoint& key) const {
    auto it = conf_by_owner_.find(point_key(key));
    if (it == conf_by_owner_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<OutputRef> note_owned_by(const ToyPoint& key) const {
    auto it = notes_by_owner_.find(point_key(key));
    if (it == notes_by_owner_.end()) return std::nullopt;
    return it->second;
  }

  const std::unordered_map<OutputRef, TxOutput, OutputRefHash>& utxos() const { return utxos_; }
  const std::unordered_map<OutputRef, ConfOutput, OutputRefHash>& conf_outputs() const { return conf_; }
  const std::unordered_map<AccountId, Account>& accounts() const { return accounts_; }
  const std::map<OutputRef, NoteRecord>& notes() const { return notes_; }
  /// Confidential outputs in creation order; ring decoys are drawn from here.
  const std::vector<OutputRef>& conf_history() const { return conf_history_; }

  /// Sum of coinbase payouts minus fees paid: what validators believe was
  /// issued.
  std::uint64_t issued() const { return minted_ - fees_; }
  std::uint64_t fees_paid() const { return fees_; }
  /// Transparent value that entered the shielded pool minus what left it.
  std::int64_t shielded_pool_value() const { return pool_; }

  /// Supply as far as validators can total it; nullopt where values are
  /// hidden and only the harness audit can count.
  std::optional<std::uint64_t> visible_supply() const {
    switch (ctx_->spec.tx_model) {
      case TxModel::utxo: {
        std::uint64_t s = 0;
        for (const auto& [_, o] : utxos_) s += o.amount;
        return s;
      }
      case TxModel::account: {
        std::uint64_t s = 0;
        for (const auto& [_, a] : accounts_) s += a.balance;
        return s;
      }
      case TxModel::shielded_pool:
        return pool_ < 0 ? std::nullopt : std::optional<std::uint64_t>(static_cast<std::uint64_t>(pool_));
      default:
        return std::nullopt;
    }
  }

  /// Number of global consistency checks a validator can run that fail.
  int visible_anomalies() const {
    int n = 0;
    if (pool_ < 0) ++n;
    if (auto v = visible_supply(); v && *v != issued()) ++n;
    return n;
  }

  // --- validation ------------------------------------------------------------

  /// Checks a non-coinbase transaction against this state.
  std::optional<RejectReason> validate(const Transaction& tx, const PendingAllowance& pending = {}) const {
    if (tx.is_coinbase()) return RejectReason::bad_coinbase;
    return std::visit([&](const auto& body) { return check(tx, body, pending); }, tx.body);
  }

  /// Checks a coinbase for a block at `height` that collects `fees`.
  std::optional<RejectReason> validate_coinbase(const Transaction& tx, std::uint64_t height, std::uint64_t fees,
                                                bool genesis) const {
    const auto* cb = std::get_if<CoinbaseBody>(&tx.body);
    if (!cb || tx.fee != 0 || cb->height != height) return RejectReason::bad_coinbase;
    if (!genesis && cb->amount != ctx_->spec.coinbase_reward + fees) return RejectReason::bad_coinbase;
    const auto& g = ctx_->g();
    switch (ctx_->spec.tx_model) {
      case TxModel::utxo: {
        const auto* o = std::get_if<TxOutput>(&cb->payout);
        if (!o || o->amount != cb->amount || !lock_well_formed(o->lock)) return RejectReason::bad_coinbase;
        return std::nullopt;
      }
      case TxModel::account:
        return std::holds_alternative<AccountId>(cb->payout) ? std::nullopt
                                                             : std::optional(RejectReason::bad_coinbase);
      case TxModel::confidential_ring:
      case TxModel::confidential_mw: {
        const auto* o = std::get_if<ConfOutput>(&cb->payout);
        if (!o || !conf_output_well_formed(*o)) return RejectReason::bad_coinbase;
        if (o->commitment != privacy::commit<ToyInt>(cb->amount, 0, ctx_->pedersen)) return RejectReason::bad_coinbase;
        return std::nullopt;
      }
      case TxModel::shielded_pool: {
        const auto* t = std::get_if<privacy::ShieldedTransfer>(&cb->payout);
        if (!t || !t->spends.empty() || t->outputs.empty() || t->public_in != cb->amount || t->fee != 0)
          return RejectReason::bad_coinbase;
        if (!ctx_->proofs->verify(privacy::shielded_statement(*t, g), t->proof, g)) return RejectReason::bad_proof;
        if (!privacy::shielded_balance(*t, ctx_->pedersen)) return RejectReason::unbalanced_commitment;
        return std::nullopt;
      }
    }
    return RejectReason::bad_coinbase;
  }

  /// Cheap test for a pending transaction that the current state has made
  /// unspendable (its inputs, key image, nullifier or nonce are used up).
  bool stale(const Transaction& tx) const {
    const auto& g = ctx_->g();
    if (const auto* b = std::get_if<UtxoBody>(&tx.body))
      return std::any_of(b->inputs.begin(), b->inputs.end(), [&](const auto& in) { return !utxo(in.prev); });
    if (const auto* b = std::get_if<MwBody>(&tx.body))
      return std::any_of(b->inputs.begin(), b->inputs.end(), [&](const auto& in) { return !conf_output(in.prev); });
    if (const auto* b = std::get_if<ConfidentialBody>(&tx.body))
      return std::any_of(b->inputs.begin(), b->inputs.end(),
                         [&](const auto& in) { return key_image_spent(in.proof.key_image); });
    if (const auto* b = std::get_if<ShieldedBody>(&tx.body))
      return std::any_of(b->transfer.spends.begin(), b->transfer.spends.end(),
                         [&](const auto& s) { return nullifier_spent(s.nullifier); });
    if (const auto* b = std::get_if<AccountBody>(&tx.body)) {
      try {
        const Account from = account(account_address(sig::ecdsa_recover(signing_payload(tx, g), b->signature, g), g));
        return b->nonce < from.nonce || from.balance < b->amount + tx.fee;
      } catch (const RecoveryError&) {
        return true;
      }
    }
    return false;
  }

  // --- mutation -----------------------------------------------------------------

  /// Applies a transaction that has already been validated.
  void apply(const Transaction& tx, UndoLog& undo) {
    undo.push_back(Counters{minted_, fees_, pool_});
    if (!tx.is_coinbase()) fees_ += tx.fee;
    std::visit([&](const auto& body) { apply_body(tx, body, undo); }, tx.body);
  }

  void undo(UndoLog& log) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) std::visit([this](auto& c) { revert(c); }, *it);
    log.clear();
  }

 private:
  // --- validation per model ----------------------------------------------------

  bool lock_well_formed(const Lock& l) const {
    if (l.kind == LockKind::raw_key)
      return !l.key.is_identity() && ctx_->g().contains(l.key) && key_hash(l.key, ctx_->g()) == l.hash;
    return l.key.is_identity();
  }

  bool conf_output_well_formed(const ConfOutput& o) const {
    const auto& g = ctx_->g();
    return !o.owner_key.is_identity() && g.contains(o.owner_key) && g.contains(o.commitment.point) &&
           g.contains(o.sealed.ephemeral);
  }

  bool model_is(TxModel m) const { return ctx_->spec.tx_model == m; }

  std::optional<RejectReason> check(const Transaction& tx, const UtxoBody& b, const PendingAllowance&) const {
    if (!model_is(TxModel::utxo)) return RejectReason::wrong_model;
    if (b.inputs.empty() || b.outputs.empty()) return RejectReason::malformed;
    const auto& g = ctx_->g();
    const Bytes payload = signing_payload(tx, g);
    std::set<OutputRef> seen;
    std::uint64_t in_total = 0, out_total = 0;
    for (const auto& in : b.inputs) {
      if (!seen.insert(in.prev).second) return RejectReason::double_spend;
      const TxOutput* prev = utxo(in.prev);
      if (!prev) return was_spent(in.prev) ? RejectReason::double_spend : RejectReason::unknown_input;
      if (in.public_key.is_identity() || !g.contains(in.public_key)) return RejectReason::bad_signature;
      if (key_hash(in.public_key, g) != prev->lock.hash) return RejectReason::bad_signature;
      if (prev->lock.kind == LockKind::raw_key && prev->lock.key != in.public_key) return RejectReason::bad_signature;
      if (!sig::ecdsa_verify(payload, in.signature, in.public_key, g)) return RejectReason::bad_signature;
      in_total += prev->amount;
    }
    for (const auto& o : b.outputs) {
      if (o.amount == 0 || !lock_well_formed(o.lock)) return RejectReason::malformed;
      out_total += o.amount;
    }
    if (in_total < out_total + tx.fee) return RejectReason::overspend;
    if (in_total != out_total + tx.fee) return RejectReason::malformed;
    return std::nullopt;
  }

  std::optional<RejectReason> check(const Transaction& tx, const AccountBody& b, const PendingAllowance& p) const {
    if (!model_is(TxModel::account)) return RejectReason::wrong_model;
    if (b.to == 0 || b.amount == 0) return RejectReason::malformed;
    const auto& g = ctx_->g();
    const Bytes payload = signing_payload(tx, g);
    ToyPoint from_key;
    try {
      from_key = sig::ecdsa_recover(payload, b.signature, g);
    } catch (const RecoveryError&) {
      return RejectReason::bad_signature;
    }
    if (!sig::ecdsa_verify(payload, b.signature.base, from_key, g)) return RejectReason::bad_signature;
    const Account from = account(account_address(from_key, g));
    if (b.nonce != from.nonce + p.nonce_offset) return RejectReason::bad_nonce;
    if (from.balance < p.pending_outflow + b.amount + tx.fee) return RejectReason::overspend;
    return std::nullopt;
  }

  std::optional<RejectReason> check(const Transaction& tx, const ConfidentialBody& b, const PendingAllowance&) const {
    if (!model_is(TxModel::confidential_ring)) return RejectReason::wrong_model;
    if (b.inputs.empty() || b.outputs.empty()) return RejectReason::malformed;
    const auto& g = ctx_->g();
    const Bytes payload = signing_payload(tx, g);
    std::unordered_set<std::uint64_t> images;
    std::vector<Commitment> pseudos;
    for (const auto& in : b.inputs) {
      if (in.members.size() != ctx_->spec.ring_size) return RejectReason::malformed;
      if (std::set<OutputRef>(in.members.begin(), in.members.end()).size() != in.members.size())
        return RejectReason::malformed;
      std::vector<ToyPoint> keys, diffs;
      for (const auto& m : in.members) {
        const ConfOutput* o = conf_output(m);
        if (!o) return RejectReason::unknown_input;
        keys.push_back(o->owner_key);
        diffs.push_back(g.sub(o->commitment.point, in.pseudo.point));
      }
      if (key_image_spent(in.proof.key_image) || !images.insert(point_key(in.proof.key_image)).second)
        return RejectReason::double_spend;
      if (!g.contains(in.pseudo.point)) return RejectReason::malformed;
      privacy::CommitmentColumn<ToyInt> column{diffs, ctx_->pedersen.H};
      if (!privacy::ring_verify<ToyInt>(payload, keys, in.proof, g, column)) return RejectReason::bad_signature;
      pseudos.push_back(in.pseudo);
    }
    std::vector<Commitment> outs;
    for (const auto& o : b.outputs) {
      if (!conf_output_well_formed(o)) return RejectReason::malformed;
      outs.push_back(o.commitment);
    }
    if (b.excess >= g.order()) return RejectReason::malformed;
    if (!privacy::balance_check<ToyInt>(pseudos, outs, tx.fee, b.excess, ctx_->pedersen))
      return RejectReason::unbalanced_commitment;
    return std::nullopt;
  }

  std::optional<RejectReason> check(const Transaction& tx, const MwBody& b, const PendingAllowance&) const {
    if (!model_is(TxModel::confidential_mw)) return RejectReason::wrong_model;
    if (b.inputs.empty() || b.outputs.empty()) return RejectReason::malformed;
    const auto& g = ctx_->g();
    const Bytes payload = signing_payload(tx, g);
    std::set<OutputRef> seen;
    std::vector<Commitment> ins, outs;
    for (const auto& in : b.inputs) {
      if (!seen.insert(in.prev).second) return RejectReason::double_spend;
      const ConfOutput* prev = conf_output(in.prev);
      if (!prev) return was_spent(in.prev) ? RejectReason::double_spend : RejectReason::unknown_input;
      if (!verify_owner(payload, in.signature, prev->owner_key)) return RejectReason::bad_signature;
      ins.push_back(prev->commitment);
    }
    for (const auto& o : b.outputs) {
      if (!conf_output_well_formed(o)) return RejectReason::malformed;
      outs.push_back(o.commitment);
    }
    if (b.excess >= g.order()) return RejectReason::malformed;
    if (!privacy::balance_check<ToyInt>(ins, outs, tx.fee, b.excess, ctx_->pedersen))
      return RejectReason::unbalanced_commitment;
    return std::nullopt;
  }

  std::optional<RejectReason> check(const Transaction& tx, const ShieldedBody& b, const PendingAllowance&) const {
    if (!model_is(TxModel::shielded_pool)) return RejectReason::wrong_model;
    const auto& t = b.transfer;
    const auto& g = ctx_->g();
    if (t.spends.empty() || t.outputs.empty() || t.public_in != 0 || t.fee != tx.fee) return RejectReason::malformed;
    std::unordered_set<std::uint64_t> nfs;
    for (const auto& s : t.spends) {
      if (nullifier_spent(s.nullifier) || !nfs.insert(s.nullifier).second) return RejectReason::double_spend;
      if (!g.contains(s.value_commitment.point)) return RejectReason::malformed;
    }
    for (const auto& o : t.outputs)
      if (!g.contains(o.note_commitment.point) || o.owner.is_identity() || !g.contains(o.owner))
        return RejectReason::malformed;
    if (t.excess >= g.order()) return RejectReason::malformed;
    if (!ctx_->proofs->verify(privacy::shielded_statement(t, g), t.proof, g)) return RejectReason::bad_proof;
    if (!privacy::shielded_balance(t, ctx_->pedersen)) return RejectReason::unbalanced_commitment;
    if (pool_ < static_cast<std::int64_t>(tx.fee)) return RejectReason::overspend;
    return std::nullopt;
  }

  std::optional<RejectReason> check(const Transaction&, const CoinbaseBody&, const PendingAllowance&) const {
    return RejectReason::bad_coinbase;
  }

  bool verify_owner(std::span<const std::uint8_t> payload, const sig::EddsaSignature<ToyInt>& s,
                    const ToyPoint& key) const {
    if (ctx_->spec.signature_scheme == SignatureScheme::eddsa_zcash)
      return sig::eddsa_verify_zcash(payload, s, key, ctx_->g());
    return sig::eddsa_verify_monero(payload, s, key, ctx_->g());
  }

  // --- application ----------------------------------------------------------------

  void add_utxo(const OutputRef& r, const TxOutput& o, UndoLog& undo) {
    utxos_.emplace(r, o);
    by_lock_[o.lock.hash].insert(r);
    undo.push_back(UtxoAdd{r});
  }
  void add_conf(const OutputRef& r, const ConfOutput& o, UndoLog& undo) {
    conf_.emplace(r, o);
    conf_by_owner_[point_key(o.owner_key)] = r;
    conf_history_.push_back(r);
    undo.push_back(ConfAdd{r});
  }
  void add_notes(TxId id, const privacy::ShieldedTransfer& t, UndoLog& undo) {
    for (std::uint32_t i = 0; i < t.outputs.size(); ++i) {
      OutputRef r{id, i};
      notes_.emplace(r, NoteRecord{r, t.outputs[i]});
      notes_by_commitment_[point_key(t.outputs[i].note_commitment.point)] = r;
      notes_by_owner_[point_key(t.outputs[i].owner)] = r;
      undo.push_back(NoteAdd{r});
    }
  }
  void set_account(AccountId id, Account a, UndoLog& undo) {
    auto it = accounts_.find(id);
    undo.push_back(AccountSet{id, it == accounts_.end() ? std::nullopt : std::optional<Account>(it->second)});
    accounts_[id] = a;
  }

  void apply_body(const Transaction& tx, const UtxoBody& b, UndoLog& undo) {
    for (const auto& in : b.inputs) {
      auto it = utxos_.find(in.prev);
      undo.push_back(UtxoRemove{in.prev, it->second});
      by_lock_[it->second.lock.hash].erase(in.prev);
      utxos_.erase(it);
      spent_.insert(in.prev);
    }
    for (std::uint32_t i = 0; i < b.outputs.size(); ++i) add_utxo({tx.id, i}, b.outputs[i], undo);
  }

  void apply_body(const Transaction& tx, const AccountBody& b, UndoLog& undo) {
    const auto& g = ctx_->g();
    const AccountId from = account_address(sig::ecdsa_recover(signing_payload(tx, g), b.signature, g), g);
    Account a = account(from);
    a.balance -= b.amount + tx.fee;
    a.nonce += 1;
    set_account(from, a, undo);
    Account to = account(b.to);
    to.balance += b.amount;
    set_account(b.to, to, undo);
  }

  void apply_body(const Transaction& tx, const ConfidentialBody& b, UndoLog& undo) {
    for (const auto& in : b.inputs) {
      key_images_.insert(point_key(in.proof.key_image));
      undo.push_back(KeyImageAdd{point_key(in.proof.key_image)});
    }
    for (std::uint32_t i = 0; i < b.outputs.size(); ++i) add_conf({tx.id, i}, b.outputs[i], undo);
  }

  void apply_body(const Transaction& tx, const MwBody& b, UndoLog& undo) {
    for (const auto& in : b.inputs) {
      auto it = conf_.find(in.prev);
      undo.push_back(ConfRemove{in.prev, it->second});
      conf_by_owner_.erase(point_key(it->second.owner_key));
      conf_.erase(it);
      spent_.insert(in.prev);
    }
    for (std::uint32_t i = 0; i < b.outputs.size(); ++i) add_conf({tx.id, i}, b.outputs[i], undo);
  }

  void apply_body(const Transaction& tx, const ShieldedBody& b, UndoLog& undo) {
    for (const auto& s : b.transfer.spends) {
      nullifiers_.insert(s.nullifier);
      undo.push_back(NullifierAdd{s.nullifier});
    }
    add_notes(tx.id, b.transfer, undo);
    pool_ -= static_cast<std::int64_t>(tx.fee);
  }

  void apply_body(const Transaction& tx, const CoinbaseBody& b, UndoLog& undo) {
    minted_ += b.amount;
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, TxOutput>) {
            add_utxo({tx.id, 0}, p, undo);
          } else if constexpr (std::is_same_v<P, AccountId>) {
            Account a = account(p);
            a.balance += b.amount;
            set_account(p, a, undo);
          } else if constexpr (std::is_same_v<P, ConfOutput>) {
            add_conf({tx.id, 0}, p, undo);
          } else {
            add_notes(tx.id, p, undo);
            pool_ += static_cast<std::int64_t>(p.public_in);
          }
        },
        b.payout);
  }

  // --- undo -----------------------------------------------------------------------

  void revert(const UtxoAdd& c) {
    auto it = utxos_.find(c.ref);
    by_lock_[it->second.lock.hash].erase(c.ref);
    utxos_.erase(it);
  }
  void revert(const UtxoRemove& c) {
    utxos_.emplace(c.ref, c.out);
    by_lock_[c.out.lock.hash].insert(c.ref);
    spent_.erase(c.ref);
  }
  void revert(const ConfAdd& c) {
    auto it = conf_.find(c.ref);
    conf_by_owner_.erase(point_key(it->second.owner_key));
    conf_.erase(it);
    conf_history_.pop_back();
  }
  void revert(const ConfRemove& c) {
    conf_.emplace(c.ref, c.out);
    conf_by_owner_[point_key(c.out.owner_key)] = c.ref;
    spent_.erase(c.ref);
  }
  void revert(const KeyImageAdd& c) { key_images_.erase(c.key); }
  void revert(const NullifierAdd& c) { nullifiers_.erase(c.nf); }
  void revert(const NoteAdd& c) {
    auto it = notes_.find(c.ref);
    notes_by_commitment_.erase(point_key(it->second.output.note_commitment.point));
    notes_by_owner_.erase(point_key(it->second.output.owner));
    notes_.erase(it);
  }
  void revert(const AccountSet& c) {
    if (c.before) accounts_[c.id] = *c.before;
    else accounts_.erase(c.id);
  }
  void revert(const Counters& c) {
    minted_ = c.minted;
    fees_ = c.fees;
    pool_ = c.pool;
  }

  const ChainContext* ctx_;
  std::unordered_map<OutputRef, TxOutput, OutputRefHash> utxos_;
  std::unordered_map<std::uint64_t, std::set<OutputRef>> by_lock_;
  std::unordered_set<OutputRef, OutputRefHash> spent_;
  std::unordered_map<OutputRef, ConfOutput, OutputRefHash> conf_;
  std::unordered_map<std::uint64_t, OutputRef> conf_by_owner_;
  std::vector<OutputRef> conf_history_;
  std::unordered_set<std::uint64_t> key_images_;
  std::unordered_set<std::uint64_t> nullifiers_;
  std::map<OutputRef, NoteRecord> notes_;
  std::unordered_map<std::uint64_t, OutputRef> notes_by_commitment_;
  std::unordered_map<std::uint64_t, OutputRef> notes_by_owner_;
  std::unordered_map<AccountId, Account> accounts_;
  std::uint64_t minted_{0};
  std::uint64_t fees_{0};
  std::int64_t pool_{0};
};

}  // namespace qchain::ledger
