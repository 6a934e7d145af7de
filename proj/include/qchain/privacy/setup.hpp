#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

#include "qchain/ec/keys.hpp"

namespace qchain::privacy {

/// Public output of a setup ceremony. This is all a validator ever sees.
template <ec::FieldInt Int>
struct SetupKey {
  ec::GroupPoint<Int> greater_public_key;
  friend bool operator==(const SetupKey&, const SetupKey&) = default;
};

/// Harness view of a ceremony. The aggregate secret is kept so tests can
/// check what an attacker recovers; `honest` records whether any share was
/// actually destroyed, i.e. whether anyone outside the harness could know it.
template <ec::FieldInt Int>
struct SetupParameter {
  SetupKey<Int> key;
  Int ground_truth_secret{0};
  bool honest{false};
  std::size_t participant_count{0};

  const ec::GroupPoint<Int>& greater_public_key() const noexcept { return key.greater_public_key; }
};

/// Each participant contributes a share x_i with public share x_i*G; the
/// parameter is the sum of public shares, so its secret is sum(x_i) and stays
/// unknown as long as one participant forgets x_i.
template <ec::FieldInt Int>
SetupParameter<Int> trusted_setup_ceremony(std::size_t participant_count, const std::set<std::size_t>& destroyed,
                                           const ec::CurveGroup<Int>& group, Rng& rng) {
  if (participant_count < 1) throw std::invalid_argument("trusted_setup_ceremony: need at least one participant");
  for (auto i : destroyed)
    if (i >= participant_count) throw std::invalid_argument("trusted_setup_ceremony: destroyed index out of range");
  const Int& n = group.order();
  Int secret = 0;
  auto key = ec::GroupPoint<Int>::identity();
  for (std::size_t i = 0; i < participant_count; ++i) {
    auto share = ec::generate_keypair(group, rng);
    secret = ec::add_mod(secret, share.private_scalar, n);
    key = group.add(key, share.public_point);
  }
  if (secret == 0) throw std::logic_error("trusted_setup_ceremony: shares cancelled to zero");
  return {{key}, secret, !destroyed.empty(), participant_count};
}

}  // namespace qchain::privacy
