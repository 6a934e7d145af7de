#pragma once

// The six attacks, each an AttackerListener driven by the simulation. Every
// key the attacker "breaks" is really recovered by the toy-group oracle; the
// quantum clock is charged from shor_time at the chain's modeled key size.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "qchain/adversary/cost.hpp"
#include "qchain/adversary/oracle.hpp"
#include "qchain/adversary/outcome.hpp"
#include "qchain/ledger/shielded_prover.hpp"
#include "qchain/ledger/wallet.hpp"
#include "qchain/privacy/ring.hpp"
#include "qchain/sim/engine.hpp"

namespace qchain::adversary {

using ledger::OutputRef;
using ledger::ToyKeyPair;
using ledger::Transaction;
using ledger::TxId;
using sim::SimContext;

namespace detail {

/// Looks an output up in the public chain history, spent or not.
inline std::optional<ledger::ConfOutput> chain_conf_output(const ledger::Node& node, const OutputRef& ref) {
  auto block = node.location(ref.tx);
  if (!block) return std::nullopt;
  for (const auto& tx : node.record(*block)->block.txs) {
    if (tx.id != ref.tx) continue;
    if (const auto* b = std::get_if<ledger::ConfidentialBody>(&tx.body))
      if (ref.index < b->outputs.size()) return b->outputs[ref.index];
    if (const auto* b = std::get_if<ledger::MwBody>(&tx.body))
      if (ref.index < b->outputs.size()) return b->outputs[ref.index];
    if (const auto* b = std::get_if<ledger::CoinbaseBody>(&tx.body))
      if (const auto* o = std::get_if<ledger::ConfOutput>(&b->payout); o && ref.index == 0) return *o;
  }
  return std::nullopt;
}

inline bool confirmed(const SimContext& ctx, TxId id) {
  return ctx.node().confirmations(id) >= std::max<std::size_t>(ctx.spec().confirmation_depth, 1);
}

}  // namespace detail

class AttackListenerBase : public sim::AttackerListener {
 public:
  explicit AttackListenerBase(AttackKind kind) { out_.kind = kind; }
  bool resolved() const override { return resolved_; }
  AttackOutcome outcome() const override { return out_; }

 protected:
  void finish(AttackStatus s, const std::string& note = "") {
    out_.status = s;
    if (!note.empty()) out_.notes.push_back(note);
    resolved_ = true;
  }

  /// Per-key cost on the modeled chain; nullopt (and the attack finished as
  /// infeasible) when the device lacks qubits.
  std::optional<double> per_key_time(SimContext& ctx) {
    const int bits = ctx.spec().key_bits;
    out_.qubits_required = required_qubits(bits, ctx.profile());
    try {
      return shor_time(bits, ProblemFamily::ec_dlog, ctx.profile());
    } catch (const InfeasibleError& e) {
      finish(AttackStatus::infeasible, e.what());
      return std::nullopt;
    }
  }

  ToyKeyPair break_key(SimContext& ctx, const ec::ToyPoint& pub) {
    auto s = timed_dlog(pub, ctx.chain().g(), ctx.profile(), ctx.spec().key_bits);
    ++out_.dlog_solves;
    out_.wall_time_s += s.wall_time_s;
    return {s.scalar, pub};
  }

  AttackOutcome out_;
  bool resolved_{false};
};

/// Watches the mempool for the first transparent spend at or after the
/// start time, breaks the keys it reveals, and races a conflicting
/// higher-fee spend to the attacker against the original.
class HijackListener : public AttackListenerBase {
 public:
  HijackListener() : AttackListenerBase(AttackKind::hijack) {}

  void on_start(SimContext& ctx) override {
    if (ctx.spec().tx_model != ledger::TxModel::utxo)
      finish(AttackStatus::inapplicable, "hijacking targets transparent UTXO spends");
    armed_ = true;
  }

  void on_tx(SimContext& ctx, const Transaction& tx, const std::string& origin,
             const ledger::SubmitResult& result) override {
    if (resolved_) return;
    if (origin == "attacker") {
      if (attacker_tx_ && tx.id == *attacker_tx_ && !result.accepted())
        finish(AttackStatus::outraced, "conflicting spend refused: " + std::string(ledger::to_string(*result.reason)));
      return;
    }
    if (!armed_ || victim_ || !result.accepted()) return;
    const auto* body = std::get_if<ledger::UtxoBody>(&tx.body);
    if (!body) return;
    // dust that cannot fund a higher fee is not worth racing
    std::uint64_t value = 0;
    for (const auto& in : body->inputs)
      if (const auto* o = ctx.node().state().utxo(in.prev)) value += o->amount;
    if (value <= tx.fee + 1) return;
    const auto per_key = per_key_time(ctx);
    if (!per_key) return;
    victim_ = tx;
    out_.started_at_s = ctx.now();
    std::map<std::uint64_t, ToyKeyPair> keys;
    for (const auto& in : body->inputs) {
      const auto k = ledger::point_key(in.public_key);
      if (!keys.count(k)) keys.emplace(k, break_key(ctx, in.public_key));
      sources_.push_back({in.prev, keys.at(k)});
    }
    out_.elapsed_model_time_s = *per_key * static_cast<double>(keys.size());
    ctx.note("hijack: victim " + std::to_string(tx.id) + " seen; " + std::to_string(keys.size()) + " key(s) to break");
    ctx.schedule_job(out_.elapsed_model_time_s, 0);
  }

  void on_job_done(SimContext& ctx, int) override {
    if (resolved_) return;
    if (detail::confirmed(ctx, victim_->id)) return expire(ctx);
    std::uint64_t total = 0;
    for (const auto& s : sources_) {
      const auto* o = ctx.node().state().utxo(s.ref);
      if (!o) return expire(ctx);
      total += o->amount;
    }
    const auto fee = victim_->fee + 1;
    if (total <= fee) return finish(AttackStatus::inapplicable, "victim inputs cannot cover a higher fee");
    const auto& g = ctx.chain().g();
    const auto thief = ec::generate_keypair(g, ctx.rng());
    std::vector<ledger::TxOutput> outputs{{total - fee, ledger::lock_for(thief.public_point, false, g)}};
    auto tx = ledger::sign_utxo_spend(sources_, outputs, fee, ctx.now(), g, ctx.rng());
    attacker_tx_ = tx.id;
    amount_ = total - fee;
    ledger::TxAudit audit;
    for (const auto& s : sources_) audit.true_spends.push_back(s.ref);
    ctx.note("hijack: key(s) recovered; conflicting spend with fee " + std::to_string(fee));
    ctx.submit_tx(std::move(tx), std::move(audit), ctx.latency());
  }

  void on_chain_update(SimContext& ctx, const ledger::ChainUpdate&) override {
    if (resolved_ || !victim_) return;
    if (attacker_tx_ && detail::confirmed(ctx, *attacker_tx_)) {
      out_.loot_tokens = amount_;
      out_.window_s = ctx.now() - victim_->declared_at;
      return finish(AttackStatus::success);
    }
    if (detail::confirmed(ctx, victim_->id)) {
      if (attacker_tx_) {
        out_.window_s = ctx.now() - victim_->declared_at;
        return finish(AttackStatus::outraced, "victim confirmed before the conflicting spend");
      }
      return expire(ctx);
    }
  }

 private:
  void expire(SimContext& ctx) {
    out_.window_s = ctx.now() - victim_->declared_at;
    finish(AttackStatus::attack_window_expired, "victim confirmed before the key was recovered");
  }

  bool armed_{false};
  std::optional<Transaction> victim_;
  std::vector<ledger::SpendSource> sources_;
  std::optional<TxId> attacker_tx_;
  std::uint64_t amount_{0};
};

/// Account chains publish the sender key through every signature. Picks the
/// richest exposed account (or the planned target), breaks its key once and
/// drains it.
class TakeoverListener : public AttackListenerBase {
 public:
  TakeoverListener() : AttackListenerBase(AttackKind::takeover) {}

  void on_start(SimContext& ctx) override {
    out_.started_at_s = ctx.now();
    if (ctx.spec().tx_model != ledger::TxModel::account)
      return finish(AttackStatus::inapplicable, "takeover targets account-model chains");
    const auto& node = ctx.node();
    const auto& g = ctx.chain().g();
    std::map<ledger::AccountId, ec::ToyPoint> exposed;
    auto consider = [&](const Transaction& tx) {
      const auto* b = std::get_if<ledger::AccountBody>(&tx.body);
      if (!b) return;
      try {
        auto key = sig::ecdsa_recover(ledger::signing_payload(tx, g), b->signature, g);
        exposed.emplace(ledger::account_address(key, g), key);
      } catch (const RecoveryError&) {
      }
    };
    for (auto id : node.canonical_chain())
      for (const auto& tx : node.record(id)->block.txs) consider(tx);
    for (const auto* e : node.mempool().by_priority()) consider(e->tx);

    std::optional<ledger::AccountId> target;
    if (const auto& want = ctx.plan().target_wallet) {
      const auto acct = ctx.wallet(*want).account();
      if (exposed.count(acct)) target = acct;
    } else {
      std::uint64_t best = 0;
      for (const auto& [acct, _] : exposed) {
        const auto bal = node.state().account(acct).balance;
        if (!target || bal > best) {
          target = acct;
          best = bal;
        }
      }
    }
    if (!target) return finish(AttackStatus::precondition_unmet, "target account has never signed; its key is unknown");
    const auto per_key = per_key_time(ctx);
    if (!per_key) return;
    target_ = *target;
    key_ = break_key(ctx, exposed.at(*target));
    out_.elapsed_model_time_s = *per_key;
    ctx.note("takeover: breaking account " + std::to_string(*target));
    ctx.schedule_job(*per_key, 0);
  }

  void on_job_done(SimContext& ctx, int) override {
    if (resolved_) return;
    thief_ = ec::generate_keypair(ctx.chain().g(), ctx.rng());
    drain(ctx);
  }

  void on_tx(SimContext& ctx, const Transaction& tx, const std::string& origin, const ledger::SubmitResult& r) override {
    if (resolved_ || origin != "attacker" || !drain_ || tx.id != *drain_ || r.accepted()) return;
    // the victim moved first while the drain was in flight: re-sign against the new state
    const bool stale = *r.reason == ledger::RejectReason::bad_nonce || *r.reason == ledger::RejectReason::overspend;
    if (stale && ++resigns_ <= kMaxResigns) return drain(ctx);
    finish(AttackStatus::rejected, "drain refused: " + std::string(ledger::to_string(*r.reason)));
  }

  void on_chain_update(SimContext& ctx, const ledger::ChainUpdate&) override {
    if (resolved_ || !drain_ || !detail::confirmed(ctx, *drain_)) return;
    out_.loot_tokens = ctx.node().state().account(ledger::account_address(thief_.public_point, ctx.chain().g())).balance;
    finish(AttackStatus::success);
  }

 private:
  static constexpr int kMaxResigns = 8;

  void drain(SimContext& ctx) {
    const auto& node = ctx.node();
    const auto& g = ctx.chain().g();
    const auto acct = node.state().account(target_);
    const auto pending = node.mempool().allowance(target_);
    const auto available = acct.balance > pending.pending_outflow ? acct.balance - pending.pending_outflow : 0;
    if (available == 0) return finish(AttackStatus::success, "account already empty");
    const auto to = ledger::account_address(thief_.public_point, g);
    auto tx = ledger::sign_account_transfer(key_, to, available, acct.nonce + pending.nonce_offset, 0, ctx.now(), g,
                                            ctx.rng());
    drain_ = tx.id;
    ctx.submit_tx(std::move(tx), {}, ctx.latency());
  }

  ledger::AccountId target_{0};
  ToyKeyPair key_;
  ToyKeyPair thief_;
  std::optional<TxId> drain_;
  int resigns_{0};
};

/// Legacy pay-to-key outputs expose their key with no deadline: break every
/// one, then sweep them in one transaction.
class SweepListener : public AttackListenerBase {
 public:
  SweepListener() : AttackListenerBase(AttackKind::sweep_p2pk) {}

  void on_start(SimContext& ctx) override {
    out_.started_at_s = ctx.now();
    if (ctx.spec().tx_model != ledger::TxModel::utxo)
      return finish(AttackStatus::inapplicable, "pay-to-key outputs exist only on UTXO chains");
    std::map<OutputRef, ec::ToyPoint> exposed;
    for (const auto& [ref, out] : ctx.node().state().utxos())
      if (out.lock.kind == ledger::LockKind::raw_key) exposed.emplace(ref, out.lock.key);
    if (exposed.empty()) return finish(AttackStatus::success, "no pay-to-key outputs");
    const auto per_key = per_key_time(ctx);
    if (!per_key) return;
    std::map<std::uint64_t, ToyKeyPair> keys;
    for (const auto& [ref, pub] : exposed) {
      const auto k = ledger::point_key(pub);
      if (!keys.count(k)) keys.emplace(k, break_key(ctx, pub));
      sources_.push_back({ref, keys.at(k)});
    }
    out_.elapsed_model_time_s = *per_key * static_cast<double>(keys.size());
    ctx.note("sweep: " + std::to_string(sources_.size()) + " exposed output(s), " + std::to_string(keys.size()) + " key(s)");
    ctx.schedule_job(out_.elapsed_model_time_s, 0);
  }

  void on_job_done(SimContext& ctx, int) override {
    if (resolved_) return;
    const auto& g = ctx.chain().g();
    std::vector<ledger::SpendSource> live;
    std::uint64_t total = 0;
    for (const auto& s : sources_)
      if (const auto* o = ctx.node().state().utxo(s.ref)) {
        live.push_back(s);
        total += o->amount;
      }
    if (live.empty()) return finish(AttackStatus::success, "every exposed output was spent by its owner first");
    const auto thief = ec::generate_keypair(g, ctx.rng());
    auto tx = ledger::sign_utxo_spend(live, {{total, ledger::lock_for(thief.public_point, false, g)}}, 0, ctx.now(), g,
                                      ctx.rng());
    sweep_ = tx.id;
    amount_ = total;
    ledger::TxAudit audit;
    for (const auto& s : live) audit.true_spends.push_back(s.ref);
    ctx.submit_tx(std::move(tx), std::move(audit), ctx.latency());
  }

  void on_tx(SimContext&, const Transaction& tx, const std::string& origin, const ledger::SubmitResult& r) override {
    if (!resolved_ && origin == "attacker" && sweep_ && tx.id == *sweep_ && !r.accepted())
      finish(AttackStatus::rejected, "sweep refused: " + std::string(ledger::to_string(*r.reason)));
  }

  void on_chain_update(SimContext& ctx, const ledger::ChainUpdate&) override {
    if (resolved_ || !sweep_ || !detail::confirmed(ctx, *sweep_)) return;
    out_.loot_tokens = amount_;
    finish(AttackStatus::success);
  }

 private:
  std::vector<ledger::SpendSource> sources_;
  std::optional<TxId> sweep_;
  std::uint64_t amount_{0};
};

/// Recovers the trusted-setup secret from the public parameter and mints
/// value that validators cannot tell from honest transfers.
class ForgeListener : public AttackListenerBase {
 public:
  ForgeListener() : AttackListenerBase(AttackKind::forge_supply) {}

  void on_start(SimContext& ctx) override {
    out_.started_at_s = ctx.now();
    if (ctx.spec().tx_model != ledger::TxModel::shielded_pool || !ctx.spec().trusted_setup || !ctx.ceremony())
      return finish(AttackStatus::inapplicable, "chain has no trusted setup");
    const auto per_key = per_key_time(ctx);
    if (!per_key) return;
    secret_ = break_key(ctx, ctx.ceremony()->greater_public_key()).private_scalar;
    out_.elapsed_model_time_s = *per_key;
    ctx.note("forge: solving the setup parameter");
    ctx.schedule_job(*per_key, 0);
  }

  void on_job_done(SimContext& ctx, int) override {
    if (resolved_) return;
    const auto& chain = ctx.chain();
    const auto& g = chain.g();
    const auto owner = ec::generate_keypair(g, ctx.rng());
    for (int i = 0; i < ctx.plan().repeats; ++i) {
      auto mint = privacy::mint_with_setup_key(secret_, ctx.plan().mint_amount, ctx.ceremony()->key, chain.pedersen,
                                               owner.public_point, ctx.rng());
      Transaction tx;
      tx.declared_at = ctx.now();
      tx.body = ledger::ShieldedBody{mint.transfer};
      tx = ledger::finalize(std::move(tx), g);
      ledger::TxAudit audit;
      audit.openings[0] = mint.minted;
      mints_.insert(tx.id);
      ctx.submit_tx(std::move(tx), std::move(audit), ctx.latency());
    }
  }

  void on_tx(SimContext&, const Transaction& tx, const std::string& origin, const ledger::SubmitResult& r) override {
    if (!resolved_ && origin == "attacker" && mints_.count(tx.id) && !r.accepted())
      finish(AttackStatus::rejected, "mint refused: " + std::string(ledger::to_string(*r.reason)));
  }

  void on_chain_update(SimContext& ctx, const ledger::ChainUpdate&) override {
    if (resolved_ || mints_.empty()) return;
    for (auto id : mints_)
      if (!detail::confirmed(ctx, id)) return;
    out_.loot_tokens = ctx.plan().mint_amount * static_cast<std::uint64_t>(ctx.plan().repeats);
    out_.notes.push_back("validator-visible anomalies: " + std::to_string(ctx.node().state().visible_anomalies()));
    finish(AttackStatus::success);
  }

 private:
  ec::ToyInt secret_{0};
  std::set<TxId> mints_;
};

/// Reveals the hidden amounts behind a confidential transaction: solves the
/// commitment generator relation once, then breaks input keys (for ring
/// chains, ring members in order until one reproduces the key image) and
/// decrypts the owners' openings.
class DeanonymizeListener : public AttackListenerBase {
 public:
  DeanonymizeListener() : AttackListenerBase(AttackKind::deanonymize) {}

  void on_start(SimContext& ctx) override {
    out_.started_at_s = ctx.now();
    const auto model = ctx.spec().tx_model;
    if (model != ledger::TxModel::confidential_ring && model != ledger::TxModel::confidential_mw)
      return finish(AttackStatus::inapplicable, "no value-hiding ring or Mimblewimble transactions on this chain");
    const auto& node = ctx.node();
    const Transaction* target = nullptr;
    for (auto id : node.canonical_chain()) {
      for (const auto& tx : node.record(id)->block.txs)
        if (std::holds_alternative<ledger::ConfidentialBody>(tx.body) || std::holds_alternative<ledger::MwBody>(tx.body)) {
          target = &tx;
          break;
        }
      if (target) break;
    }
    if (!target) return finish(AttackStatus::precondition_unmet, "no confidential transaction on chain");
    const auto per_key = per_key_time(ctx);
    if (!per_key) return;

    const auto& g = ctx.chain().g();
    const auto& params = ctx.chain().pedersen;
    // The commitment generator relation: with h = log H, any commitment can
    // be reopened to any value, so commitments stop binding.
    const auto h = timed_dlog(params.H, g, ctx.profile(), ctx.spec().key_bits);
    ++out_.setup_solves;
    out_.wall_time_s += h.wall_time_s;

    auto reveal = [&](const OutputRef& ref, const ledger::ConfOutput& o, ec::ToyInt secret) {
      auto opening = privacy::unseal_opening(o.sealed, secret, g);
      out_.recovered.push_back({ref.tx, ref.index, opening.value, opening.blinding});
      if (!privacy::opens(o.commitment, opening, params)) {
        out_.notes.push_back("decrypted opening does not match commitment of output " + std::to_string(ref.tx));
      } else if (h.scalar != 0 && opening.value + 1 < privacy::kMaxCommittedValue) {
        // reopen to value+1: r' = r - h^-1
        const auto alt = ec::sub_mod(opening.blinding, ec::inv_mod(h.scalar, g.order()), g.order());
        if (privacy::commit(opening.value + 1, alt, params) == o.commitment && !equivocated_) {
          out_.notes.push_back("commitments no longer bind: output reopened to a different value");
          equivocated_ = true;
        }
      }
    };

    bool all_found = true;
    if (const auto* b = std::get_if<ledger::ConfidentialBody>(&target->body)) {
      for (const auto& in : b->inputs) {
        bool found = false;
        for (const auto& ref : in.members) {
          auto o = detail::chain_conf_output(node, ref);
          if (!o) continue;
          auto key = break_key(ctx, o->owner_key);
          if (g.mul(key.private_scalar, privacy::key_image_base(o->owner_key, g)) == in.proof.key_image) {
            reveal(ref, *o, key.private_scalar);
            found = true;
            break;
          }
        }
        all_found = all_found && found;
      }
    } else {
      for (const auto& in : std::get<ledger::MwBody>(target->body).inputs) {
        auto o = detail::chain_conf_output(node, in.prev);
        if (!o) {
          all_found = false;
          continue;
        }
        reveal(in.prev, *o, break_key(ctx, o->owner_key).private_scalar);
      }
    }
    target_ = target->id;
    ok_ = all_found;
    out_.elapsed_model_time_s = *per_key * static_cast<double>(out_.setup_solves + out_.dlog_solves);
    ctx.note("deanonymize: target " + std::to_string(target_) + ", " + std::to_string(out_.dlog_solves) + " key solve(s)");
    ctx.schedule_job(out_.elapsed_model_time_s, 0);
  }

  void on_job_done(SimContext&, int) override {
    if (resolved_) return;
    if (ok_) finish(AttackStatus::success, "target transaction " + std::to_string(target_));
    else finish(AttackStatus::outraced, "true input not identified");
  }

 private:
  TxId target_{0};
  bool ok_{false};
  bool equivocated_{false};
};

/// 51% attack: the attacker pays a merchant on the public chain while mining
/// a private branch holding a conflicting payment to itself, and publishes the
/// branch once it is longer than the public one and the payment has
/// confirmed publicly.
class QuantumMineListener : public AttackListenerBase {
 public:
  QuantumMineListener() : AttackListenerBase(AttackKind::quantum_mine) {}

  void on_start(SimContext& ctx) override {
    out_.started_at_s = ctx.now();
    rate_ = attacker_block_rate(ctx.spec(), ctx.profile()).value_or(0);
    if (rate_ <= 0)
      return finish(AttackStatus::no_known_advantage,
                    "no known quantum speedup for " + ledger::enum_name(ctx.spec().pow.kind));
    private_.emplace(ctx.node());
    private_->clear_mempool();
    ledger::Wallet payer = ctx.attacker_wallet();
    ledger::Wallet forker = ctx.attacker_wallet();
    const auto& g = ctx.chain().g();
    const auto merchant = ec::generate_keypair(g, ctx.rng());
    const auto amount = ctx.plan().payment;
    auto pay = payer.spend(ctx.node(), merchant.public_point, amount, 1, ctx.now());
    auto fork = forker.spend(*private_, forker.receive_key(), amount, 1, ctx.now());
    if (!pay || !fork) return finish(AttackStatus::precondition_unmet, "attacker wallet cannot fund the payment");
    payee_ = forker.payee();
    payment_ = pay->tx.id;
    double_spend_ = fork->tx.id;
    private_->submit_tx(fork->tx, ctx.now());
    ctx.record_audit(fork->tx.id, fork->audit);
    ctx.submit_tx(std::move(pay->tx), std::move(pay->audit), ctx.latency());
    ctx.note("quantum_mine: private branch forked at height " + std::to_string(private_->height()));
    ctx.schedule_job(ctx.rng().exponential(1.0 / rate_), 0);
  }

  void on_job_done(SimContext& ctx, int) override {
    if (resolved_) return;
    ledger::TxAudit audit;
    auto block = private_->assemble_block("attacker", payee_, ctx.now(), ctx.rng(), &audit);
    ctx.record_audit(block.txs.front().id, std::move(audit));
    private_->receive_block(block);
    branch_.push_back(std::move(block));
    maybe_release(ctx);
    ctx.schedule_job(ctx.rng().exponential(1.0 / rate_), 0);
  }

  void on_chain_update(SimContext& ctx, const ledger::ChainUpdate&) override {
    if (resolved_ || !payment_) return;
    const auto& node = ctx.node();
    if (node.location(double_spend_) && !node.location(*payment_)) {
      out_.loot_tokens = ctx.plan().payment;
      out_.elapsed_model_time_s = ctx.now() - out_.started_at_s;
      out_.notes.push_back("reorg reverted the merchant payment; private branch of " + std::to_string(branch_.size()) +
                           " block(s)");
      return finish(AttackStatus::success);
    }
    maybe_release(ctx);
  }

 private:
  void maybe_release(SimContext& ctx) {
    const auto& node = ctx.node();
    if (!node.location(*payment_) || private_->height() <= node.height() || released_ == branch_.size()) return;
    std::vector<ledger::Block> fresh(branch_.begin() + static_cast<std::ptrdiff_t>(released_), branch_.end());
    released_ = branch_.size();
    ctx.note("quantum_mine: releasing " + std::to_string(fresh.size()) + " block(s)");
    ctx.release_blocks(std::move(fresh), ctx.latency());
  }

  double rate_{0};
  std::optional<ledger::Node> private_;
  ledger::Payee payee_;
  std::optional<TxId> payment_;
  TxId double_spend_{0};
  std::vector<ledger::Block> branch_;
  std::size_t released_{0};
};

inline std::unique_ptr<sim::AttackerListener> make_listener(const AttackPlan& plan) {
  switch (plan.kind) {
    case AttackKind::hijack: return std::make_unique<HijackListener>();
    case AttackKind::takeover: return std::make_unique<TakeoverListener>();
    case AttackKind::sweep_p2pk: return std::make_unique<SweepListener>();
    case AttackKind::forge_supply: return std::make_unique<ForgeListener>();
    case AttackKind::deanonymize: return std::make_unique<DeanonymizeListener>();
    case AttackKind::quantum_mine: return std::make_unique<QuantumMineListener>();
  }
  throw std::logic_error("make_listener: unknown attack kind");
}

struct AttackRun {
  AttackOutcome outcome;
  sim::SimTrace trace;
};

/// Runs `config` with `plan` as its attack and returns the outcome plus trace.
inline AttackRun run_attack(sim::SimConfig config, const AttackPlan& plan) {
  config.attack = plan;
  sim::Simulation s(std::move(config));
  s.add_listener(make_listener(plan));
  AttackRun r{{}, s.run()};
  r.outcome = r.trace.attacks.front();
  return r;
}

}  // namespace qchain::adversary

namespace qchain::sim {

/// Runs a scenario, wiring in the attacker the plan names.
inline SimTrace run(const SimConfig& config) {
  Simulation s(config);
  if (config.attack) s.add_listener(adversary::make_listener(*config.attack));
  return s.run();
}

}  // namespace qchain::sim
