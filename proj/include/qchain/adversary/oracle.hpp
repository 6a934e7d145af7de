#pragma once

// Executable stand-in for Shor: BSGS on toy groups, with the quantum clock
// charged separately from the classical wall time actually spent.

#include <chrono>
#include <type_traits>

#include "qchain/adversary/cost.hpp"
#include "qchain/core/error.hpp"
#include "qchain/ec/bsgs.hpp"

namespace qchain::adversary {

template <class Int>
ec::ToyInt dlog_oracle(const ec::GroupPoint<Int>& target, const ec::CurveGroup<Int>& group) {
  if constexpr (!std::is_same_v<Int, ec::ToyInt>) {
    throw OracleRefusal(group.label() + " is a full-size group; use the analytic Shor model (shor_time) instead");
  } else {
    if (!group.attackable())
      throw OracleRefusal(group.label() + " is not flagged attackable; use the analytic Shor model (shor_time) instead");
    auto x = ec::bsgs_for(group).solve(target);
    if (!x) throw Error("dlog_oracle: target is not in the generator's subgroup");
    return *x;
  }
}

struct DlogSolution {
  ec::ToyInt scalar{0};
  double model_time_s{0};  // quantum clock
  double wall_time_s{0};   // classical BSGS time
};

/// Oracle call with accounting. `charged_bits` defaults to the group's order
/// length; attacks pass the modeled chain's key size instead.
inline DlogSolution timed_dlog(const ec::ToyPoint& target, const ec::ToyGroup& group, const QuantumAdversaryProfile& p,
                               int charged_bits = 0) {
  const auto start = std::chrono::steady_clock::now();
  DlogSolution s;
  s.scalar = dlog_oracle(target, group);
  s.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s.model_time_s = shor_time(charged_bits > 0 ? charged_bits : group.order_bits(), ProblemFamily::ec_dlog, p);
  return s;
}

}  // namespace qchain::adversary
