#pragma once

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qchain/ledger/audit.hpp"
#include "qchain/ledger/mempool.hpp"
#include "qchain/ledger/shielded_prover.hpp"
#include "qchain/ledger/state.hpp"

namespace qchain::ledger {

/// Where a coinbase pays: a key, optionally as a legacy pay-to-key output.
struct Payee {
  ToyPoint key;
  bool raw_key{false};
};

struct Coinbase {
  Transaction tx;
  TxAudit audit;
};

inline Lock lock_for(const ToyPoint& key, bool raw_key, const ToyGroup& g) {
  Lock l;
  l.hash = key_hash(key, g);
  if (raw_key) {
    l.kind = LockKind::raw_key;
    l.key = key;
  }
  return l;
}

/// Builds a coinbase for the chain's model. Confidential payouts commit with
/// blinding 0 so validators can check the amount; shielded payouts get an
/// honest proof over `state`.
inline Coinbase make_coinbase(const LedgerState& state, std::uint64_t height, std::uint64_t amount,
                              const Payee& payee, std::uint32_t slot, Rng& rng) {
  const auto& ctx = state.context();
  const auto& g = ctx.g();
  Coinbase cb;
  CoinbaseBody body{height, amount, slot, {}};
  switch (ctx.spec.tx_model) {
    case TxModel::utxo:
      body.payout = TxOutput{amount, lock_for(payee.key, payee.raw_key, g)};
      break;
    case TxModel::account:
      body.payout = account_address(payee.key, g);
      break;
    case TxModel::confidential_ring:
    case TxModel::confidential_mw: {
      privacy::Opening o{amount, 0};
      body.payout = ConfOutput{payee.key, privacy::commit<ToyInt>(amount, 0, ctx.pedersen),
                               privacy::seal_opening(o, payee.key, g, rng)};
      cb.audit.openings[0] = o;
      break;
    }
    case TxModel::shielded_pool: {
      const ToyInt r = ec::uniform_below(rng, g.order());
      privacy::Opening o{amount, r};
      privacy::ShieldedTransfer t;
      t.public_in = amount;
      t.outputs.push_back({privacy::commit(amount, r, ctx.pedersen), payee.key, privacy::seal_opening(o, payee.key, g, rng)});
      t.excess = ec::sub_mod(ToyInt(0), r, g.order());
      t.proof = *HonestProver(*ctx.proofs, state).prove(t, {}, {o});
      body.payout = std::move(t);
      cb.audit.openings[0] = o;
      break;
    }
  }
  cb.tx.body = std::move(body);
  cb.tx = finalize(std::move(cb.tx), g);
  return cb;
}

struct SubmitResult {
  std::optional<RejectReason> reason;  // empty when accepted
  bool accepted() const { return !reason; }
};

/// What changed at the tip after a block arrived.
struct ChainUpdate {
  bool tip_changed{false};
  std::size_t reorg_depth{0};                // canonical blocks disconnected
  std::vector<TxId> included;                // newly on the canonical chain
  std::vector<TxId> reverted;                // left the canonical chain
  std::vector<BlockId> rejected_blocks;
  std::size_t orphaned{0};
};

/// One node's view of the network: block tree, fork choice, the state at the
/// canonical tip and the mempool. Work per block is uniform, so the most-work
/// chain is the longest; ties keep the first-seen tip.
class Node {
 public:
  struct BlockRecord {
    Block block;
    std::uint64_t work{0};
    std::uint64_t seen{0};
    bool invalid{false};
  };

  Node(std::shared_ptr<const ChainContext> ctx, const Block& genesis) : ctx_(std::move(ctx)), state_(*ctx_) {
    if (genesis.height != 0 || genesis.txs.empty()) throw ConfigError("genesis", "genesis must be height 0 with allocations");
    UndoLog undo;
    if (auto r = connect(genesis, undo, true)) throw ConfigError("genesis", std::string("invalid: ") + to_string(*r));
    blocks_.emplace(genesis.id, BlockRecord{genesis, 0, seen_++, false});
    undo_.emplace(genesis.id, std::move(undo));
    canonical_.push_back(genesis.id);
    for (const auto& tx : genesis.txs) tx_index_[tx.id] = genesis.id;
  }

  // Copies share the context; the state is duplicated wholesale.
  Node(const Node& other) : ctx_(other.ctx_), state_(*ctx_) { *this = other; }
  Node& operator=(const Node& other) {
    ctx_ = other.ctx_;
    state_ = other.state_;
    mempool_ = other.mempool_;
    blocks_ = other.blocks_;
    undo_ = other.undo_;
    canonical_ = other.canonical_;
    tx_index_ = other.tx_index_;
    orphans_ = other.orphans_;
    seen_ = other.seen_;
    return *this;
  }

  const ChainContext& context() const { return *ctx_; }
  const std::shared_ptr<const ChainContext>& shared_context() const { return ctx_; }
  const LedgerState& state() const { return state_; }
  const Mempool& mempool() const { return mempool_; }
  BlockId tip() const { return canonical_.back(); }
  std::uint64_t height() const { return canonical_.size() - 1; }
  const Block& tip_block() const { return blocks_.at(tip()).block; }
  const BlockRecord* record(BlockId id) const {
    auto it = blocks_.find(id);
    return it == blocks_.end() ? nullptr : &it->second;
  }
  const std::vector<BlockId>& canonical_chain() const { return canonical_; }
  bool is_canonical(BlockId id) const {
    const auto* r = record(id);
    return r && r->block.height < canonical_.size() && canonical_[r->block.height] == id;
  }

  /// Block holding `tx` on the canonical chain.
  std::optional<BlockId> location(TxId tx) const {
    auto it = tx_index_.find(tx);
    if (it == tx_index_.end()) return std::nullopt;
    return it->second;
  }
  std::uint64_t confirmations(TxId tx) const {
    auto loc = location(tx);
    return loc ? height() - blocks_.at(*loc).block.height + 1 : 0;
  }

  std::optional<AccountId> account_sender(const Transaction& tx) const {
    const auto* b = std::get_if<AccountBody>(&tx.body);
    if (!b) return std::nullopt;
    const auto& g = ctx_->g();
    try {
      return account_address(sig::ecdsa_recover(signing_payload(tx, g), b->signature, g), g);
    } catch (const RecoveryError&) {
      return std::nullopt;
    }
  }

  /// Drops every pending transaction (a private fork starts from its own pool).
  void clear_mempool() { mempool_ = Mempool{}; }

  SubmitResult submit_tx(const Transaction& tx, double now) {
    if (mempool_.contains(tx.id)) return {};
    if (tx.id != compute_tx_id(tx, ctx_->g())) return {RejectReason::malformed};
    if (tx_index_.count(tx.id)) return {RejectReason::double_spend};
    const auto sender = account_sender(tx);
    if (auto r = state_.validate(tx, sender ? mempool_.allowance(*sender) : PendingAllowance{})) return {r};
    mempool_.add(tx, now, sender);
    return {};
  }

  /// Assembles a block on the current tip: mempool transactions in priority
  /// order, each valid against the state left by the ones before it, up to
  /// the block capacity, plus the coinbase.
  Block assemble_block(const std::string& miner, const Payee& payee, double now, Rng& rng,
                       TxAudit* coinbase_audit = nullptr) {
    const std::size_t capacity = ctx_->spec.block_capacity;
    std::vector<Transaction> chosen;
    std::unordered_set<TxId> taken;
    UndoLog undo;
    std::uint64_t fees = 0;
    const auto pending = mempool_.by_priority();
    // A second pass picks up transactions whose predecessor (by nonce) sat
    // behind them in priority order.
    for (int pass = 0; pass < 2 && chosen.size() < capacity; ++pass) {
      const std::size_t before = chosen.size();
      for (const auto* e : pending) {
        if (chosen.size() >= capacity) break;
        if (taken.count(e->tx.id) || state_.validate(e->tx)) continue;
        state_.apply(e->tx, undo);
        taken.insert(e->tx.id);
        fees += e->tx.fee;
        chosen.push_back(e->tx);
      }
      if (chosen.size() == before) break;
    }
    state_.undo(undo);
    Block b;
    b.parent = tip();
    b.height = height() + 1;
    b.miner = miner;
    b.timestamp = now;
    auto cb = make_coinbase(state_, b.height, ctx_->spec.coinbase_reward + fees, payee, 0, rng);
    if (coinbase_audit) *coinbase_audit = std::move(cb.audit);
    b.txs.push_back(std::move(cb.tx));
    for (auto& tx : chosen) b.txs.push_back(std::move(tx));
    b.id = compute_block_id(b);
    return b;
  }

  ChainUpdate receive_block(const Block& incoming) {
    ChainUpdate update;
    std::deque<Block> queue{incoming};
    while (!queue.empty()) {
      Block b = std::move(queue.front());
      queue.pop_front();
      if (blocks_.count(b.id)) continue;
      auto parent = blocks_.find(b.parent);
      if (parent == blocks_.end()) {
        orphans_[b.parent].push_back(std::move(b));
        ++update.orphaned;
        continue;
      }
      const bool invalid = parent->second.invalid || b.height != parent->second.block.height + 1 ||
                           b.id != compute_block_id(b);
      const std::uint64_t work = parent->second.work + 1;
      const BlockId id = b.id;
      blocks_.emplace(id, BlockRecord{b, work, seen_++, invalid});
      if (invalid) update.rejected_blocks.push_back(id);
      else if (work > blocks_.at(tip()).work) switch_to(id, update);
      if (auto it = orphans_.find(id); it != orphans_.end()) {
        for (auto& o : it->second) queue.push_back(std::move(o));
        orphans_.erase(it);
      }
    }
    return update;
  }

 private:
  using UndoLog = LedgerState::UndoLog;

  /// Validates and applies a block on top of the current state.
  std::optional<RejectReason> connect(const Block& b, UndoLog& undo, bool genesis = false) {
    if (b.txs.empty()) return RejectReason::malformed;
    std::unordered_set<TxId> ids;
    std::uint64_t fees = 0;
    auto fail = [&](RejectReason r) {
      state_.undo(undo);
      return std::optional<RejectReason>(r);
    };
    const std::size_t first = genesis ? b.txs.size() : 1;
    for (std::size_t i = first; i < b.txs.size(); ++i) {
      const auto& tx = b.txs[i];
      if (!ids.insert(tx.id).second || tx.id != compute_tx_id(tx, ctx_->g()) || tx_index_.count(tx.id))
        return fail(RejectReason::malformed);
      if (auto r = state_.validate(tx)) return fail(*r);
      state_.apply(tx, undo);
      fees += tx.fee;
    }
    const std::size_t coinbases = genesis ? b.txs.size() : 1;
    for (std::size_t i = 0; i < coinbases; ++i) {
      const auto& cb = b.txs[i];
      if (!ids.insert(cb.id).second || cb.id != compute_tx_id(cb, ctx_->g()) || tx_index_.count(cb.id))
        return fail(RejectReason::malformed);
      if (auto r = state_.validate_coinbase(cb, b.height, fees, genesis)) return fail(*r);
      state_.apply(cb, undo);
    }
    return std::nullopt;
  }

  void disconnect_tip(std::vector<Transaction>& reverted, ChainUpdate& update) {
    const BlockId id = canonical_.back();
    state_.undo(undo_.at(id));
    undo_.erase(id);
    const Block& b = blocks_.at(id).block;
    for (std::size_t i = 0; i < b.txs.size(); ++i) {
      tx_index_.erase(b.txs[i].id);
      if (i > 0) {
        reverted.push_back(b.txs[i]);
        update.reverted.push_back(b.txs[i].id);
      }
    }
    canonical_.pop_back();
  }

  bool connect_canonical(BlockId id) {
    UndoLog undo;
    if (connect(blocks_.at(id).block, undo)) return false;
    undo_.emplace(id, std::move(undo));
    canonical_.push_back(id);
    for (const auto& tx : blocks_.at(id).block.txs) tx_index_[tx.id] = id;
    return true;
  }

  void switch_to(BlockId target, ChainUpdate& update) {
    std::vector<BlockId> branch;
    for (BlockId cur = target; !is_canonical(cur); cur = blocks_.at(cur).block.parent) branch.push_back(cur);
    std::reverse(branch.begin(), branch.end());
    const std::uint64_t fork_height = blocks_.at(branch.front()).block.height - 1;

    std::vector<BlockId> old_branch(canonical_.begin() + static_cast<std::ptrdiff_t>(fork_height) + 1, canonical_.end());
    std::vector<Transaction> reverted;
    ChainUpdate scratch;
    while (height() > fork_height) disconnect_tip(reverted, scratch);

    std::size_t connected = 0;
    for (BlockId id : branch) {
      if (!connect_canonical(id)) {
        blocks_.at(id).invalid = true;
        update.rejected_blocks.push_back(id);
        break;
      }
      ++connected;
    }
    if (height() <= fork_height + old_branch.size() && connected < branch.size()) {
      // The valid part of the branch does not beat the old chain: restore it.
      std::vector<Transaction> ignored;
      while (height() > fork_height) disconnect_tip(ignored, scratch);
      for (BlockId id : old_branch) connect_canonical(id);
      return;
    }

    update.tip_changed = true;
    update.reorg_depth += old_branch.size();
    std::unordered_set<TxId> now_included;
    for (std::size_t i = 0; i < connected; ++i)
      for (const auto& tx : blocks_.at(branch[i]).block.txs) now_included.insert(tx.id);
    for (const auto& tx : reverted)
      if (!now_included.count(tx.id)) update.reverted.push_back(tx.id);
    for (std::size_t i = 0; i < connected; ++i)
      for (const auto& tx : blocks_.at(branch[i]).block.txs) {
        update.included.push_back(tx.id);
        mempool_.remove(tx.id);
      }
    purge_mempool();
    for (const auto& tx : reverted)
      if (!now_included.count(tx.id)) submit_tx(tx, blocks_.at(tip()).block.timestamp);
  }

  /// Drops pending transactions that the new tip makes invalid.
  void purge_mempool() {
    std::vector<TxId> drop;
    for (const auto* e : mempool_.by_priority())
      if (state_.stale(e->tx)) drop.push_back(e->tx.id);
    for (TxId id : drop) mempool_.remove(id);
  }

  std::shared_ptr<const ChainContext> ctx_;
  LedgerState state_;
  Mempool mempool_;
  std::unordered_map<BlockId, BlockRecord> blocks_;
  std::unordered_map<BlockId, UndoLog> undo_;
  std::vector<BlockId> canonical_;
  std::unordered_map<TxId, BlockId> tx_index_;
  std::unordered_map<BlockId, std::vector<Block>> orphans_;
  std::uint64_t seen_{0};
};

/// Supply audit over the canonical chain using the harness's ground truth.
inline SupplyAudit audit_supply(const Node& node, const AuditBook& book, std::uint64_t genesis_allocation) {
  const auto& state = node.state();
  const auto& spec = node.context().spec;
  SupplyAudit a;
  a.expected = genesis_allocation + node.height() * spec.coinbase_reward;
  a.visible_supply = state.visible_supply();
  a.visible_anomalies = state.visible_anomalies();

  std::set<OutputRef> truly_spent;
  for (BlockId id : node.canonical_chain())
    for (const auto& tx : node.record(id)->block.txs)
      if (const TxAudit* t = book.find(tx.id)) truly_spent.insert(t->true_spends.begin(), t->true_spends.end());

  auto count = [&](const OutputRef& ref) {
    if (truly_spent.count(ref)) return;
    if (auto o = book.opening(ref)) a.audited += o->value;
    else ++a.unaudited_outputs;
  };
  switch (spec.tx_model) {
    case TxModel::utxo:
    case TxModel::account:
      a.audited = *a.visible_supply;
      break;
    case TxModel::confidential_ring:
    case TxModel::confidential_mw:
      for (const auto& [ref, _] : state.conf_outputs()) count(ref);
      break;
    case TxModel::shielded_pool:
      for (const auto& [ref, _] : state.notes()) count(ref);
      break;
  }
  a.delta = static_cast<std::int64_t>(a.audited) - static_cast<std::int64_t>(a.expected);
  return a;
}

}  // namespace qchain::ledger
