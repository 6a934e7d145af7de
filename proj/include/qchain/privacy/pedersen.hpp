#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "qchain/ec/keys.hpp"

namespace qchain::privacy {

using ec::CurveGroup;
using ec::FieldInt;
using ec::GroupPoint;

/// Value generator G and blinding generator H. H is hashed onto the curve
/// from G's encoding, so no honest party knows x with x*G = H; recovering x
/// is exactly what a discrete-log oracle buys an attacker.
template <FieldInt Int>
struct PedersenParams {
  CurveGroup<Int> group;
  GroupPoint<Int> G;
  GroupPoint<Int> H;
};

template <FieldInt Int>
PedersenParams<Int> make_pedersen_params(const CurveGroup<Int>& group) {
  auto H = ec::hash_to_point(group, "pedersen/H", group.encode(group.generator()));
  return {group, group.generator(), H};
}

template <FieldInt Int>
struct PedersenCommitment {
  GroupPoint<Int> point;
  friend bool operator==(const PedersenCommitment&, const PedersenCommitment&) = default;
};

inline constexpr std::uint64_t kMaxCommittedValue = std::uint64_t{1} << 62;

/// C = value*G + blinding*H.
template <FieldInt Int>
PedersenCommitment<Int> commit(std::uint64_t value, const Int& blinding, const PedersenParams<Int>& params) {
  if (value >= kMaxCommittedValue) throw std::invalid_argument("commit: value exceeds the 2^62 token ceiling");
  const auto& g = params.group;
  return {g.add(g.mul(Int(value), params.G), g.mul(blinding, params.H))};
}

template <FieldInt Int>
GroupPoint<Int> sum_points(std::span<const PedersenCommitment<Int>> cs, const CurveGroup<Int>& group) {
  auto acc = GroupPoint<Int>::identity();
  for (const auto& c : cs) acc = group.add(acc, c.point);
  return acc;
}

/// True iff sum(inputs) - sum(outputs) - fee*G == excess*H, i.e. the
/// difference is a commitment to zero under the declared blinding excess.
template <FieldInt Int>
bool balance_check(std::span<const PedersenCommitment<Int>> inputs, std::span<const PedersenCommitment<Int>> outputs,
                   std::uint64_t fee, const Int& excess, const PedersenParams<Int>& params) {
  if (inputs.empty() || outputs.empty()) throw std::invalid_argument("balance_check: empty input or output list");
  const auto& g = params.group;
  auto lhs = g.sub(g.sub(sum_points(inputs, g), sum_points(outputs, g)), g.mul(Int(fee), params.G));
  return lhs == g.mul(excess, params.H);
}

/// Blinding excess r_in - r_out (mod order) for the given openings.
template <FieldInt Int>
Int blinding_excess(std::span<const Int> input_blindings, std::span<const Int> output_blindings,
                    const CurveGroup<Int>& group) {
  const Int& n = group.order();
  Int acc = 0;
  for (const auto& r : input_blindings) acc = ec::add_mod(acc, Int(r % n), n);
  for (const auto& r : output_blindings) acc = ec::sub_mod(acc, Int(r % n), n);
  return acc;
}

}  // namespace qchain::privacy
