#pragma once

// Discrete-event engine. One shared network view (a single Node) stands for
// the honest network; every broadcast reaches it after the latency delay.
// Honest miners find blocks as independent Poisson processes, wallets spend as
// Poisson processes, and attacker listeners react to what the network sees.
// Listeners act only by scheduling events through the queue.

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qchain/adversary/outcome.hpp"
#include "qchain/core/rng.hpp"
#include "qchain/ledger/audit.hpp"
#include "qchain/ledger/context.hpp"
#include "qchain/ledger/node.hpp"
#include "qchain/ledger/wallet.hpp"
#include "qchain/sim/config.hpp"
#include "qchain/sim/trace.hpp"

namespace qchain::sim {

using ledger::Block;
using ledger::Transaction;
using ledger::TxAudit;

struct TxBroadcast {
  Transaction tx;
  TxAudit audit;
  std::string origin;
};
struct BlockFound {
  std::size_t miner;
};
struct BlockArrival {
  Block block;
};
struct WalletTick {
  std::size_t wallet;
};
struct AttackJobDone {
  std::size_t listener;
  int job;
};
struct AttackerSubmit {
  std::size_t listener;
  std::vector<std::pair<Transaction, TxAudit>> txs;
  std::vector<Block> blocks;
};
struct ScenarioProbe {
  int tag;  // >= 0: scripted transfer index; -1: attack start
};

using EventPayload =
    std::variant<TxBroadcast, BlockFound, BlockArrival, WalletTick, AttackJobDone, AttackerSubmit, ScenarioProbe>;

inline const char* event_kind(const EventPayload& p) {
  static constexpr const char* names[] = {"tx_broadcast",    "block_found",     "block_arrival", "wallet_tick",
                                          "attack_job_done", "attacker_submit", "scenario_probe"};
  return names[p.index()];
}

/// Events are totally ordered by (fire_at, seq); seq is assigned when the
/// event is scheduled, so of two events due at the same instant the one
/// scheduled first fires first.
struct SimEvent {
  double fire_at{0};
  std::uint64_t seq{0};
  std::uint64_t cause{0};  // seq of the event whose handler scheduled this one
  EventPayload payload;
};

class EventQueue {
 public:
  std::uint64_t push(double fire_at, std::uint64_t cause, EventPayload payload) {
    const auto seq = ++next_seq_;
    heap_.push(SimEvent{fire_at, seq, cause, std::move(payload)});
    return seq;
  }
  bool empty() const { return heap_.empty(); }
  const SimEvent& top() const { return heap_.top(); }
  SimEvent pop() {
    SimEvent e = std::move(const_cast<SimEvent&>(heap_.top()));
    heap_.pop();
    return e;
  }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      return a.fire_at != b.fire_at ? a.fire_at > b.fire_at : a.seq > b.seq;
    }
  };
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
  std::uint64_t next_seq_{0};
};

class Simulation;
class SimContext;

class AttackerListener {
 public:
  virtual ~AttackerListener() = default;
  virtual void on_start(SimContext&) {}
  virtual void on_tx(SimContext&, const Transaction&, const std::string& /*origin*/, const ledger::SubmitResult&) {}
  virtual void on_chain_update(SimContext&, const ledger::ChainUpdate&) {}
  virtual void on_job_done(SimContext&, int /*job*/) {}
  virtual bool resolved() const = 0;
  virtual adversary::AttackOutcome outcome() const = 0;
};

/// The attacker's window onto a running simulation: read-only network state
/// plus the ability to schedule its own events.
class SimContext {
 public:
  SimContext(Simulation& sim, std::size_t listener) : sim_(sim), listener_(listener) {}

  double now() const;
  const ledger::Node& node() const;
  const ledger::ChainSpec& spec() const;
  const ledger::ChainContext& chain() const;
  const std::optional<privacy::SetupParameter<ec::ToyInt>>& ceremony() const;
  const adversary::QuantumAdversaryProfile& profile() const;
  const adversary::AttackPlan& plan() const;
  const ledger::Wallet& wallet(std::size_t i) const;
  std::size_t wallet_count() const;
  const ledger::Wallet& attacker_wallet() const;
  Rng& rng();
  double latency();

  void schedule_job(double delay, int job);
  void submit_tx(Transaction tx, TxAudit audit, double delay);
  void release_blocks(std::vector<Block> blocks, double delay);
  void record_audit(ledger::TxId id, TxAudit audit);
  void note(const std::string& text);

 private:
  Simulation& sim_;
  std::size_t listener_;
};

using ListenerFactory = std::function<std::unique_ptr<AttackerListener>(const adversary::AttackPlan&)>;

class Simulation {
 public:
  explicit Simulation(SimConfig config) : config_(std::move(config)), rng_(config_.seed) {
    validate(config_);
    setup_ = ledger::make_chain(config_.chain, config_.seed);
    auto ctx = setup_.context;
    const auto& spec = config_.chain;

    Rng wallet_rng = rng_.fork("wallets");
    for (std::size_t i = 0; i < config_.wallets.count; ++i)
      wallets_.emplace_back("wallet-" + std::to_string(i), ctx, wallet_rng.fork(i));
    for (std::size_t m = 0; m < config_.miners.size(); ++m)
      miners_.emplace_back("miner-" + std::to_string(m), ctx, rng_.fork("miners").fork(m));
    attacker_.emplace("attacker", ctx, rng_.fork("attacker-wallet"));

    std::vector<std::pair<ledger::Payee, std::uint64_t>> allocations;
    for (std::size_t i = 0; i < wallets_.size(); ++i) {
      auto coins = config_.wallets.allocations.empty()
                       ? std::vector<std::uint64_t>(config_.wallets.coins, config_.wallets.coin_value)
                       : config_.wallets.allocations[i];
      for (auto v : coins) allocations.emplace_back(wallets_[i].payee(), v);
    }
    for (auto v : config_.attacker_coins) allocations.emplace_back(attacker_->payee(), v);
    Rng genesis_rng = rng_.fork("genesis");
    auto genesis = ledger::make_genesis(*ctx, allocations, genesis_rng);
    genesis_total_ = genesis.total;
    for (auto& [id, audit] : genesis.audits) book_.record(id, std::move(audit));
    node_.emplace(ctx, genesis.block);

    activity_rng_ = rng_.fork("activity");
    mining_rng_ = rng_.fork("mining");
    latency_rng_ = rng_.fork("latency");
    block_rng_ = rng_.fork("blocks");
    attacker_rng_ = rng_.fork("attacker");

    double share_sum = 0;
    for (double s : config_.miners) share_sum += s;
    for (double s : config_.miners) miner_mean_.push_back(spec.block_time_s * share_sum / s);

    trace_.seed = config_.seed;
    trace_.chain = spec.label;
    trace_.duration_s = config_.duration_s;
  }

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void add_listener(std::unique_ptr<AttackerListener> l) { listeners_.push_back(std::move(l)); }

  const SimConfig& config() const { return config_; }
  const ledger::Node& node() const { return *node_; }
  const ledger::AuditBook& audit_book() const { return book_; }
  const ledger::ChainSetup& chain_setup() const { return setup_; }
  const ledger::Wallet& wallet(std::size_t i) const { return wallets_.at(i); }
  const ledger::Wallet& attacker_wallet() const { return *attacker_; }
  std::uint64_t genesis_total() const { return genesis_total_; }
  double now() const { return now_; }

  /// Runs to the configured duration (or until every attack has resolved
  /// when stop_when_resolved is set) and returns the trace.
  SimTrace run() {
    if (ran_) throw std::logic_error("Simulation::run called twice");
    ran_ = true;
    for (std::size_t m = 0; m < miner_mean_.size(); ++m)
      queue_.push(mining_rng_.exponential(miner_mean_[m]), 0, BlockFound{m});
    if (config_.wallets.tx_rate > 0)
      for (std::size_t w = 0; w < wallets_.size(); ++w)
        queue_.push(activity_rng_.exponential(1.0 / config_.wallets.tx_rate), 0, WalletTick{w});
    for (std::size_t i = 0; i < config_.script.size(); ++i)
      queue_.push(config_.script[i].at, 0, ScenarioProbe{static_cast<int>(i)});
    if (config_.attack && !listeners_.empty()) queue_.push(config_.attack->start_at_s, 0, ScenarioProbe{-1});

    while (!queue_.empty() && queue_.top().fire_at <= config_.duration_s) {
      SimEvent ev = queue_.pop();
      now_ = ev.fire_at;
      current_seq_ = ev.seq;
      ++trace_.events_processed;
      if (config_.record_events) {
        log_ = nlohmann::json{{"t", ev.fire_at}, {"seq", ev.seq}, {"cause", ev.cause}, {"kind", event_kind(ev.payload)}};
      }
      std::visit([&](auto& p) { handle(p); }, ev.payload);
      if (config_.record_events) trace_.events.push_back(std::move(log_));
      if (config_.stop_when_resolved && !listeners_.empty() && all_resolved()) break;
    }
    trace_.end_time_s = now_;
    trace_.height = node_->height();
    for (const auto& l : listeners_) trace_.attacks.push_back(l->outcome());
    trace_.audit = ledger::audit_supply(*node_, book_, genesis_total_);
    return std::move(trace_);
  }

 private:
  friend class SimContext;

  bool all_resolved() const {
    for (const auto& l : listeners_)
      if (!l->resolved()) return false;
    return true;
  }

  double draw_latency() {
    if (config_.latency.kind == LatencyKind::constant) return config_.latency.mean_s;
    return latency_rng_.exponential(config_.latency.mean_s);
  }

  std::uint64_t schedule(double delay, EventPayload p) { return queue_.push(now_ + delay, current_seq_, std::move(p)); }

  void log(const char* key, nlohmann::json value) {
    if (config_.record_events) log_[key] = std::move(value);
  }

  void broadcast(Transaction tx, TxAudit audit, std::string origin) {
    schedule(draw_latency(), TxBroadcast{std::move(tx), std::move(audit), std::move(origin)});
  }

  // --- handlers ---------------------------------------------------------------

  void handle(TxBroadcast& e) { deliver_tx(e.tx, std::move(e.audit), e.origin); }

  void deliver_tx(const Transaction& tx, TxAudit audit, const std::string& origin) {
    ++trace_.txs_broadcast;
    book_.record(tx.id, std::move(audit));
    auto result = node_->submit_tx(tx, now_);
    log("tx", tx.id);
    log("origin", origin);
    log("fee", tx.fee);
    log("result", result.accepted() ? "accepted" : ledger::to_string(*result.reason));
    if (result.accepted()) {
      ++trace_.txs_accepted;
      pending_.emplace(tx.id, Pending{origin, tx.declared_at, tx.fee});
    }
    for (std::size_t i = 0; i < listeners_.size(); ++i) {
      SimContext ctx(*this, i);
      listeners_[i]->on_tx(ctx, tx, origin, result);
    }
  }

  void handle(BlockFound& e) {
    if (last_block_found_) trace_.block_intervals.push_back(now_ - *last_block_found_);
    last_block_found_ = now_;
    TxAudit cb_audit;
    auto block = node_->assemble_block("miner-" + std::to_string(e.miner), miners_[e.miner].payee(), now_, block_rng_,
                                       &cb_audit);
    book_.record(block.txs.front().id, std::move(cb_audit));
    log("miner", e.miner);
    log("block", block.id);
    log("height", block.height);
    log("txs", block.txs.size() - 1);
    schedule(draw_latency(), BlockArrival{std::move(block)});
    schedule(mining_rng_.exponential(miner_mean_[e.miner]), BlockFound{e.miner});
  }

  void handle(BlockArrival& e) { deliver_block(e.block); }

  void deliver_block(const Block& b) {
    const auto before = node_->height();
    auto update = node_->receive_block(b);
    log("block", b.id);
    log("tip_changed", update.tip_changed);
    if (update.reorg_depth) log("reorg_depth", update.reorg_depth);
    log("height", node_->height());
    if (update.tip_changed) {
      const auto fork_height = before - update.reorg_depth;
      confirmed_through_ = std::min(confirmed_through_, fork_height);
      track_confirmations();
    }
    for (std::size_t i = 0; i < listeners_.size(); ++i) {
      SimContext ctx(*this, i);
      listeners_[i]->on_chain_update(ctx, update);
    }
  }

  void track_confirmations() {
    const auto depth = std::max<std::size_t>(config_.chain.confirmation_depth, 1);
    const auto tip = node_->height();
    if (tip + 1 < depth) return;
    const auto target = tip + 1 - depth;
    const auto& chain = node_->canonical_chain();
    for (auto h = confirmed_through_ + 1; h <= target; ++h) {
      for (const auto& tx : node_->record(chain[h])->block.txs) {
        auto it = pending_.find(tx.id);
        if (it == pending_.end()) continue;
        trace_.confirmations.push_back({tx.id, it->second.origin, it->second.declared_at, now_, it->second.fee});
        pending_.erase(it);
      }
    }
    confirmed_through_ = std::max(confirmed_through_, target);
  }

  void handle(WalletTick& e) {
    schedule(activity_rng_.exponential(1.0 / config_.wallets.tx_rate), WalletTick{e.wallet});
    auto& from = wallets_[e.wallet];
    const auto fee = config_.wallets.fee;
    const auto balance = from.balance(*node_);
    log("wallet", e.wallet);
    if (balance <= fee) {
      log("result", "insufficient_funds");
      return;
    }
    auto to = activity_rng_.uniform(0, wallets_.size() - 2);
    if (to >= e.wallet) ++to;
    const double max_amount = static_cast<double>(balance - fee);
    auto amount = static_cast<std::uint64_t>(std::exp(activity_rng_.unit() * std::log(max_amount)));
    amount = std::clamp<std::uint64_t>(amount, 1, balance - fee);
    auto spend = from.spend(*node_, wallets_[to].receive_key(), amount, fee, now_);
    if (!spend) {
      log("result", "insufficient_funds");
      return;
    }
    log("result", "spend");
    log("tx", spend->tx.id);
    broadcast(std::move(spend->tx), std::move(spend->audit), "wallet:" + std::to_string(e.wallet));
  }

  void handle(AttackJobDone& e) {
    log("listener", e.listener);
    log("job", e.job);
    SimContext ctx(*this, e.listener);
    listeners_[e.listener]->on_job_done(ctx, e.job);
  }

  void handle(AttackerSubmit& e) {
    log("listener", e.listener);
    for (auto& [tx, audit] : e.txs) deliver_tx(tx, std::move(audit), "attacker");
    for (const auto& b : e.blocks) deliver_block(b);
  }

  void handle(ScenarioProbe& e) {
    log("tag", e.tag);
    if (e.tag < 0) {
      for (std::size_t i = 0; i < listeners_.size(); ++i) {
        SimContext ctx(*this, i);
        listeners_[i]->on_start(ctx);
      }
      return;
    }
    const auto& s = config_.script[static_cast<std::size_t>(e.tag)];
    auto spend = wallets_[s.from].spend(*node_, wallets_[s.to].receive_key(), s.amount, s.fee, now_);
    if (!spend) {
      log("result", "insufficient_funds");
      return;
    }
    log("tx", spend->tx.id);
    broadcast(std::move(spend->tx), std::move(spend->audit), "script");
  }

  struct Pending {
    std::string origin;
    double declared_at;
    std::uint64_t fee;
  };

  SimConfig config_;
  Rng rng_;
  Rng activity_rng_{0}, mining_rng_{0}, latency_rng_{0}, block_rng_{0}, attacker_rng_{0};
  ledger::ChainSetup setup_;
  std::vector<ledger::Wallet> wallets_;
  std::vector<ledger::Wallet> miners_;
  std::optional<ledger::Wallet> attacker_;
  std::optional<ledger::Node> node_;
  ledger::AuditBook book_;
  std::uint64_t genesis_total_{0};
  std::vector<double> miner_mean_;
  std::vector<std::unique_ptr<AttackerListener>> listeners_;
  EventQueue queue_;
  double now_{0};
  std::uint64_t current_seq_{0};
  std::optional<double> last_block_found_;
  std::unordered_map<ledger::TxId, Pending> pending_;
  std::uint64_t confirmed_through_{0};  // genesis counts as processed
  nlohmann::json log_;
  SimTrace trace_;
  bool ran_{false};
};

// --- SimContext ------------------------------------------------------------------

inline double SimContext::now() const { return sim_.now_; }
inline const ledger::Node& SimContext::node() const { return *sim_.node_; }
inline const ledger::ChainSpec& SimContext::spec() const { return sim_.config_.chain; }
inline const ledger::ChainContext& SimContext::chain() const { return *sim_.setup_.context; }
inline const std::optional<privacy::SetupParameter<ec::ToyInt>>& SimContext::ceremony() const {
  return sim_.setup_.ceremony;
}
inline const adversary::QuantumAdversaryProfile& SimContext::profile() const { return sim_.config_.profile; }
inline const adversary::AttackPlan& SimContext::plan() const { return *sim_.config_.attack; }
inline const ledger::Wallet& SimContext::wallet(std::size_t i) const { return sim_.wallets_.at(i); }
inline std::size_t SimContext::wallet_count() const { return sim_.wallets_.size(); }
inline const ledger::Wallet& SimContext::attacker_wallet() const { return *sim_.attacker_; }
inline Rng& SimContext::rng() { return sim_.attacker_rng_; }
inline double SimContext::latency() { return sim_.draw_latency(); }

inline void SimContext::schedule_job(double delay, int job) { sim_.schedule(delay, AttackJobDone{listener_, job}); }
inline void SimContext::submit_tx(Transaction tx, TxAudit audit, double delay) {
  AttackerSubmit s{listener_, {}, {}};
  s.txs.emplace_back(std::move(tx), std::move(audit));
  sim_.schedule(delay, std::move(s));
}
inline void SimContext::release_blocks(std::vector<Block> blocks, double delay) {
  sim_.schedule(delay, AttackerSubmit{listener_, {}, std::move(blocks)});
}
inline void SimContext::record_audit(ledger::TxId id, TxAudit audit) { sim_.book_.record(id, std::move(audit)); }
inline void SimContext::note(const std::string& text) {
  if (!sim_.config_.record_events) return;
  sim_.log_["notes"].push_back(text);
}

}  // namespace qchain::sim
