#pragma once

// Analytic quantum cost models: Shor (cubic in key size, linear in qubits),
// Grover-accelerated hashing, and the quantum k-xor speedup for Equihash.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qchain/adversary/profile.hpp"
#include "qchain/core/error.hpp"
#include "qchain/ledger/chain_spec.hpp"

namespace qchain::adversary {

inline long long required_qubits(int bits, const QuantumAdversaryProfile& p = {}) {
  if (bits < 1) throw std::invalid_argument("required_qubits: bits must be >= 1");
  // Computed from the 256-bit anchor in integer-friendly order so that the
  // default scaling gives 485550 at 256 exactly.
  return static_cast<long long>(std::ceil(p.qubit_scaling * static_cast<double>(bits) - 1e-9));
}

/// Seconds to run Shor's algorithm on a `bits`-bit instance. Scales the
/// family's anchor by (bits/bits0)^3 and (s0/s), which equals c·bits^3/s with
/// c = t0·s0/bits0^3 but stays exact at the anchor itself.
inline double shor_time(int bits, ProblemFamily family, const QuantumAdversaryProfile& p) {
  const long long need = required_qubits(bits, p);
  if (p.qubit_count < need)
    throw InfeasibleError(need - p.qubit_count, "shor_time: " + std::to_string(bits) + "-bit instance needs " +
                                                    std::to_string(need) + " qubits, profile has " +
                                                    std::to_string(p.qubit_count));
  const ShorAnchor& a = p.shor_calibration.at(family);
  const double ratio = static_cast<double>(bits) / a.bits;
  return a.seconds * (ratio * ratio * ratio) * (a.clock_hz / p.clock_speed_hz);
}

inline double shor_constant(ProblemFamily family, const QuantumAdversaryProfile& p) {
  return p.shor_calibration.at(family).constant();
}

/// h_q = 0.04 · s · √D hashes per second.
inline double grover_hash_rate(const QuantumAdversaryProfile& p, std::uint64_t difficulty) {
  if (difficulty < 1) throw std::invalid_argument("grover_hash_rate: D must be >= 1");
  return 0.04 * p.clock_speed_hz * std::sqrt(static_cast<double>(difficulty));
}

struct KxorCosts {
  double classical_ops;  // 2^ceil(n/(1+k_log))
  double quantum_ops;    // 2^ceil(n/(2+k_log))
  int classical_exp;
  int quantum_exp;
};

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

inline KxorCosts kxor_costs(int n, int k_log) {
  if (n < 1 || k_log < 1) throw std::invalid_argument("kxor_costs: need n >= 1 and k_log >= 1");
  KxorCosts c;
  c.classical_exp = ceil_div(n, 1 + k_log);
  c.quantum_exp = ceil_div(n, 2 + k_log);
  c.classical_ops = std::ldexp(1.0, c.classical_exp);
  c.quantum_ops = std::ldexp(1.0, c.quantum_exp);
  return c;
}

/// Clock speed at which a quantum miner matches the network. `clock_hz`
/// compares against the full stated network rate H_r; `clock_hz_rest_of_network`
/// treats H_r as including the attacker, so the attacker needs only to out-mine
/// the remaining honest share (h_q > H_r - h_q).
struct Threshold {
  bool known_advantage{true};
  double clock_hz{0};
  double clock_hz_rest_of_network{0};
  std::string method;  // "grover", "kxor" or "none"
  std::string note;
};

inline Threshold fifty_one_threshold(const ledger::ChainSpec& spec, const QuantumAdversaryProfile& = {}) {
  ledger::validate(spec);
  Threshold t;
  switch (spec.quantum_pow_speedup) {
    case ledger::QuantumSpeedup::none:
      t.known_advantage = false;
      t.method = "none";
      t.note = "no known quantum advantage for " + ledger::enum_name(spec.pow.kind);
      return t;
    case ledger::QuantumSpeedup::grover: {
      const auto d = ledger::difficulty(spec);
      t.method = "grover";
      t.clock_hz = spec.network_hash_rate / (0.04 * std::sqrt(static_cast<double>(d)));
      break;
    }
    case ledger::QuantumSpeedup::kxor: {
      // Network rate counts Equihash solutions; a quantum solver spends
      // quantum_ops operations per solution.
      const auto c = kxor_costs(spec.pow.n, spec.pow.k);
      t.method = "kxor";
      t.clock_hz = spec.network_hash_rate * c.quantum_ops;
      t.note = "quantum k-xor: 2^" + std::to_string(c.quantum_exp) + " vs classical 2^" +
               std::to_string(c.classical_exp) + " operations per solution";
      break;
    }
  }
  t.clock_hz_rest_of_network = t.clock_hz / 2;
  return t;
}

/// Blocks per second the quantum miner finds on its own branch; nullopt when
/// there is no known speedup. Grover: h_q hashes/s against D·2^32 hashes per
/// block. k-xor: s/quantum_ops solutions/s against H_r·B solutions per block,
/// i.e. the classical-equivalent rate times classical_ops/quantum_ops.
inline std::optional<double> attacker_block_rate(const ledger::ChainSpec& spec, const QuantumAdversaryProfile& p) {
  switch (spec.quantum_pow_speedup) {
    case ledger::QuantumSpeedup::none:
      return std::nullopt;
    case ledger::QuantumSpeedup::grover: {
      const auto d = ledger::difficulty(spec);
      return grover_hash_rate(p, std::max<std::uint64_t>(d, 1)) / (static_cast<double>(std::max<std::uint64_t>(d, 1)) * 4294967296.0);
    }
    case ledger::QuantumSpeedup::kxor: {
      const auto c = kxor_costs(spec.pow.n, spec.pow.k);
      return (p.clock_speed_hz / c.quantum_ops) / (spec.network_hash_rate * spec.block_time_s);
    }
  }
  return std::nullopt;
}

}  // namespace qchain::adversary
