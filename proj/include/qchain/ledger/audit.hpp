#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "qchain/ledger/transaction.hpp"
#include "qchain/privacy/opening.hpp"

namespace qchain::ledger {

/// Ground truth the harness keeps about one transaction: which outputs it
/// really spent and the openings of the outputs it created. Validators never
/// see this.
struct TxAudit {
  std::vector<OutputRef> true_spends;
  std::map<std::uint32_t, privacy::Opening> openings;  // by output index
  std::vector<std::size_t> ring_true_index;           // per ring input
};

class AuditBook {
 public:
  void record(TxId id, TxAudit audit) { book_[id] = std::move(audit); }
  const TxAudit* find(TxId id) const {
    auto it = book_.find(id);
    return it == book_.end() ? nullptr : &it->second;
  }
  std::optional<privacy::Opening> opening(const OutputRef& r) const {
    const TxAudit* a = find(r.tx);
    if (!a) return std::nullopt;
    auto it = a->openings.find(r.index);
    if (it == a->openings.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<TxId, TxAudit> book_;
};

struct SupplyAudit {
  std::uint64_t expected{0};         // allocations plus base rewards
  std::uint64_t audited{0};          // ground-truth value of unspent outputs
  std::int64_t delta{0};             // audited - expected
  std::size_t unaudited_outputs{0};  // hidden outputs with no recorded opening
  int visible_anomalies{0};
  std::optional<std::uint64_t> visible_supply;
  bool conserved() const { return delta == 0 && unaudited_outputs == 0; }
};

}  // namespace qchain::ledger
