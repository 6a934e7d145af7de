#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <stdexcept>
#include <unordered_map>

#include "qchain/ec/curve.hpp"

namespace qchain::ec {

/// Baby-step/giant-step discrete logarithm for toy groups (order <= 2^40).
/// The baby-step table holds j*G for 0 <= j < m; giant steps then cover the
/// order in ceil(order/m) strides. m defaults to ceil(sqrt(order)) but never
/// less than 2^18 (capped at the order): signature verification on the toy
/// Edwards curve solves a log per check, so lookups matter more than memory.
/// The table is built once and read-only afterwards.
class BsgsSolver {
 public:
  static constexpr std::uint64_t kMinBabySteps = 1ULL << 18;

  explicit BsgsSolver(const ToyGroup& group, std::uint64_t baby_steps = 0) : group_(group) {
    if (group.order_bits() > kMaxAttackableOrderBits)
      throw std::invalid_argument("BsgsSolver: group order too large for baby-step/giant-step");
    const auto root = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<long double>(group.order()))));
    m_ = baby_steps ? baby_steps : std::min<std::uint64_t>(std::max(root, kMinBabySteps), group.order());
    giant_steps_ = (group.order() + m_ - 1) / m_;
    table_.reserve(m_ * 2);
    ToyPoint acc = ToyPoint::identity();
    for (std::uint64_t j = 0; j < m_; ++j) {
      table_.emplace(key(acc), j);
      acc = group.add(acc, group.generator());
    }
    giant_ = group.negate(group.mul(m_, group.generator()));
  }

  /// Returns x in [0, order) with x*G == target, or nullopt if the target is
  /// outside the generator's subgroup.
  std::optional<std::uint64_t> solve(const ToyPoint& target) const {
    ToyPoint y = target;
    for (std::uint64_t i = 0; i <= giant_steps_; ++i) {
      auto it = table_.find(key(y));
      if (it != table_.end()) {
        std::uint64_t x = (i * m_ + it->second) % group_.order();
        if (group_.mul_base(x) == target) return x;
      }
      y = group_.add(y, giant_);
    }
    return std::nullopt;
  }

  std::uint64_t baby_steps() const noexcept { return m_; }
  const ToyGroup& group() const noexcept { return group_; }

 private:
  std::uint64_t key(const ToyPoint& p) const {
    if (p.is_identity()) return UINT64_MAX;
    return p.x * group_.prime() + p.y;
  }

  ToyGroup group_;
  std::uint64_t m_{0};
  std::uint64_t giant_steps_{0};
  ToyPoint giant_;
  std::unordered_map<std::uint64_t, std::uint64_t> table_;
};

/// Process-wide solver per toy group, built lazily on first use and kept for
/// the program's lifetime.
inline const BsgsSolver& bsgs_for(const ToyGroup& group) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<BsgsSolver>> cache;
  const auto& c = group.params();
  std::string id = std::to_string(static_cast<int>(c.form)) + ':' + std::to_string(c.prime) + ':' +
                   std::to_string(c.a) + ':' + std::to_string(c.coeff) + ':' + std::to_string(c.gx) + ':' +
                   std::to_string(c.gy) + ':' + std::to_string(c.order);
  std::lock_guard lock(mu);
  auto& slot = cache[id];
  if (!slot) slot = std::make_unique<BsgsSolver>(group);
  return *slot;
}

}  // namespace qchain::ec
