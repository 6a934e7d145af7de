#pragma once

#include <memory>
#include <optional>
#include <set>

#include "qchain/ec/curve_file.hpp"
#include "qchain/ledger/chain_spec.hpp"
#include "qchain/privacy/pedersen.hpp"
#include "qchain/privacy/setup.hpp"
#include "qchain/privacy/shielded.hpp"

namespace qchain::ledger {

/// Group a chain's toy keys live in: ECDSA chains use the Weierstrass toy
/// curve, EdDSA chains the Edwards one.
inline const ec::ToyGroup& chain_group(const ChainSpec& spec) {
  switch (spec.signature_scheme) {
    case SignatureScheme::ecdsa:
      return ec::toy_weierstrass();
    case SignatureScheme::eddsa_monero:
    case SignatureScheme::eddsa_zcash:
      return ec::toy_edwards();
    case SignatureScheme::pq_hash_based:
      break;
  }
  throw ConfigError("signature_scheme", "hash-based signatures have no executable model");
}

/// Everything validators share: the spec, the group, the commitment
/// generators and, for shielded chains, the proof verifier.
struct ChainContext {
  ChainSpec spec;
  const ec::ToyGroup* group;
  privacy::PedersenParams<ec::ToyInt> pedersen;
  std::shared_ptr<const privacy::ProofSystem> proofs;

  ChainContext(ChainSpec s, std::shared_ptr<const privacy::ProofSystem> proof_system = nullptr)
      : spec(std::move(s)),
        group(&chain_group(spec)),
        pedersen(privacy::make_pedersen_params(*group)),
        proofs(std::move(proof_system)) {
    validate(spec);
    if (spec.tx_model == TxModel::shielded_pool && !proofs)
      throw ConfigError("trusted_setup", "shielded chains need the ceremony's proof system");
  }

  const ec::ToyGroup& g() const { return *group; }
};

/// A context plus, for shielded chains, the ceremony that produced its proof
/// system. The ceremony record is harness ground truth.
struct ChainSetup {
  std::shared_ptr<const ChainContext> context;
  std::optional<privacy::SetupParameter<ec::ToyInt>> ceremony;
};

inline ChainSetup make_chain(const ChainSpec& spec, std::uint64_t seed, std::size_t participants = 6,
                             const std::set<std::size_t>& destroyed = {0}) {
  ChainSetup out;
  std::shared_ptr<const privacy::ProofSystem> proofs;
  if (spec.tx_model == TxModel::shielded_pool || spec.trusted_setup) {
    Rng rng = Rng(seed).fork("ceremony");
    out.ceremony = privacy::trusted_setup_ceremony(participants, destroyed, chain_group(spec), rng);
    proofs = std::make_shared<privacy::ProofSystem>(out.ceremony->key, rng.next());
  }
  out.context = std::make_shared<const ChainContext>(spec, std::move(proofs));
  return out;
}

}  // namespace qchain::ledger
