#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qchain/ledger/state.hpp"

namespace qchain::ledger {

/// Pending transactions ordered by (fee descending, arrival ascending).
/// Conflicting spends may sit side by side; block assembly keeps the first
/// valid one in priority order, so a higher-fee conflict wins.
class Mempool {
 public:
  struct Entry {
    Transaction tx;
    std::uint64_t seq{0};
    double arrived_at{0};
    std::optional<AccountId> sender;  // account model only
  };

  bool contains(TxId id) const { return entries_.count(id) != 0; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const Entry* find(TxId id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
  }

  void add(Transaction tx, double now, std::optional<AccountId> sender = std::nullopt) {
    const TxId id = tx.id;
    if (contains(id)) return;
    const std::uint64_t seq = next_seq_++;
    order_.emplace(Key{tx.fee, seq}, id);
    if (sender) {
      auto& p = pending_[*sender];
      p.nonce_offset += 1;
      p.pending_outflow += std::get<AccountBody>(tx.body).amount + tx.fee;
    }
    entries_.emplace(id, Entry{std::move(tx), seq, now, sender});
  }

  std::optional<Entry> remove(TxId id) {
    auto it = entries_.find(id);
    if (it == entries_.end()) return std::nullopt;
    Entry e = std::move(it->second);
    entries_.erase(it);
    order_.erase(Key{e.tx.fee, e.seq});
    if (e.sender) {
      auto& p = pending_[*e.sender];
      p.nonce_offset -= 1;
      p.pending_outflow -= std::get<AccountBody>(e.tx.body).amount + e.tx.fee;
      if (p.nonce_offset == 0) pending_.erase(*e.sender);
    }
    return e;
  }

  /// Nonces and value already committed by the sender's pending transactions.
  PendingAllowance allowance(AccountId sender) const {
    auto it = pending_.find(sender);
    return it == pending_.end() ? PendingAllowance{} : it->second;
  }

  /// Entries in priority order.
  std::vector<const Entry*> by_priority() const {
    std::vector<const Entry*> out;
    out.reserve(order_.size());
    for (const auto& [_, id] : order_) out.push_back(&entries_.at(id));
    return out;
  }

 private:
  struct Key {
    std::uint64_t fee;
    std::uint64_t seq;
    friend bool operator<(const Key& a, const Key& b) { return a.fee != b.fee ? a.fee > b.fee : a.seq < b.seq; }
  };

  std::map<Key, TxId> order_;
  std::unordered_map<TxId, Entry> entries_;
  std::unordered_map<AccountId, PendingAllowance> pending_;
  std::uint64_t next_seq_{0};
};

}  // namespace qchain::ledger
