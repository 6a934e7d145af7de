#pragma once

// Wagner's tree algorithm for the generalized birthday problem: find 2^k_log
// distinct list entries whose XOR is zero.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qchain::adversary {

namespace detail {

struct WagnerNode {
  std::uint64_t value;
  std::vector<std::uint32_t> indices;  // sorted
};

inline bool disjoint(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i;
    else ++j;
  }
  return true;
}

}  // namespace detail

struct WagnerLimits {
  std::size_t max_list = std::size_t{1} << 20;  // cap on any intermediate list
};

/// Rounds 1..k_log-1 collide on successive ceil(n/(k_log+1))-bit slices
/// (low bits first); the last round collides on all remaining bits, so the
/// survivors XOR to zero. Returns the sorted indices of one solution.
inline std::optional<std::vector<std::size_t>> wagner_solve(int n, int k_log, const std::vector<std::uint64_t>& strings,
                                                            WagnerLimits limits = {}) {
  if (n < 1 || n > 64) throw std::invalid_argument("wagner_solve: n must be in [1, 64]");
  if (k_log < 1) throw std::invalid_argument("wagner_solve: k_log must be >= 1");
  if (n < k_log + 1) throw std::invalid_argument("wagner_solve: n must be at least k_log + 1");
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (auto s : strings)
    if (s & ~full) throw std::invalid_argument("wagner_solve: string wider than n bits");

  const int width = (n + k_log) / (k_log + 1);
  std::vector<detail::WagnerNode> list;
  list.reserve(strings.size());
  for (std::size_t i = 0; i < strings.size(); ++i) list.push_back({strings[i], {static_cast<std::uint32_t>(i)}});

  int low = 0;
  for (int round = 1; round <= k_log; ++round) {
    const bool last = round == k_log;
    const int bits = last ? n - low : std::min(width, n - low);
    const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1) << low;
    std::stable_sort(list.begin(), list.end(),
                     [&](const auto& a, const auto& b) { return (a.value & mask) < (b.value & mask); });
    std::vector<detail::WagnerNode> next;
    for (std::size_t i = 0; i < list.size();) {
      std::size_t j = i;
      while (j < list.size() && (list[j].value & mask) == (list[i].value & mask)) ++j;
      for (std::size_t a = i; a < j; ++a)
        for (std::size_t b = a + 1; b < j; ++b) {
          if (!detail::disjoint(list[a].indices, list[b].indices)) continue;
          detail::WagnerNode merged{list[a].value ^ list[b].value, {}};
          merged.indices.reserve(list[a].indices.size() * 2);
          std::merge(list[a].indices.begin(), list[a].indices.end(), list[b].indices.begin(), list[b].indices.end(),
                     std::back_inserter(merged.indices));
          if (last) {
            if (merged.value == 0) return std::vector<std::size_t>(merged.indices.begin(), merged.indices.end());
            continue;
          }
          next.push_back(std::move(merged));
          if (next.size() >= limits.max_list) goto round_done;
        }
      i = j;
    }
  round_done:
    if (last || next.empty()) return std::nullopt;
    list = std::move(next);
    low += bits;
  }
  return std::nullopt;
}

/// Independent check: distinct in-range indices, 2^k_log of them, XOR zero.
inline bool verify_kxor(int k_log, const std::vector<std::uint64_t>& strings, const std::vector<std::size_t>& indices) {
  if (indices.size() != (std::size_t{1} << k_log)) return false;
  auto sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  std::uint64_t acc = 0;
  for (auto i : indices) {
    if (i >= strings.size()) return false;
    acc ^= strings[i];
  }
  return acc == 0;
}

}  // namespace qchain::adversary
