#pragma once

#include <optional>
#include <vector>

#include "qchain/ledger/state.hpp"

namespace qchain::ledger {

/// Nullifier of a note: only its owner can compute it, and it is the same
/// whichever transaction spends the note.
inline std::uint64_t note_nullifier(const ToyInt& owner_secret, const Commitment& note, const ToyGroup& group) {
  return digest_prefix64(sha256(
      ByteWriter().str("nullifier").bytes(group.encode_scalar(owner_secret)).bytes(group.encode(note.point)).data()));
}

struct SpendWitness {
  OutputRef note;
  ToyInt owner_secret{0};
  privacy::Opening note_opening;
  ToyInt value_blinding{0};  // blinding of the spend's value commitment
};

/// Stand-in for the zk-SNARK prover. It checks the witness the real circuit
/// would check (the note exists, the spender owns it, the nullifier and the
/// value commitment are derived from it, outputs open) and only then tags the
/// statement.
class HonestProver {
 public:
  HonestProver(const privacy::ProofSystem& system, const LedgerState& state) : system_(&system), state_(&state) {}

  std::optional<privacy::ShieldedProof> prove(const privacy::ShieldedTransfer& t,
                                              const std::vector<SpendWitness>& spends,
                                              const std::vector<privacy::Opening>& outputs) const {
    const auto& ctx = state_->context();
    const auto& g = ctx.g();
    if (spends.size() != t.spends.size() || outputs.size() != t.outputs.size()) return std::nullopt;
    for (std::size_t i = 0; i < spends.size(); ++i) {
      const auto& w = spends[i];
      const NoteRecord* note = state_->note(w.note);
      if (!note) return std::nullopt;
      if (g.mul_base(w.owner_secret) != note->output.owner) return std::nullopt;
      if (!privacy::opens(note->output.note_commitment, w.note_opening, ctx.pedersen)) return std::nullopt;
      if (t.spends[i].nullifier != note_nullifier(w.owner_secret, note->output.note_commitment, g)) return std::nullopt;
      if (t.spends[i].value_commitment != privacy::commit(w.note_opening.value, w.value_blinding, ctx.pedersen))
        return std::nullopt;
    }
    for (std::size_t i = 0; i < outputs.size(); ++i)
      if (!privacy::opens(t.outputs[i].note_commitment, outputs[i], ctx.pedersen)) return std::nullopt;
    privacy::ShieldedProof p;
    p.kind = privacy::ShieldedProof::Kind::attestation;
    p.attestation = system_->tag(privacy::shielded_statement(t, g));
    return p;
  }

 private:
  const privacy::ProofSystem* system_;
  const LedgerState* state_;
};

}  // namespace qchain::ledger
