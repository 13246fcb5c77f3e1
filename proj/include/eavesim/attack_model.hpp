#pragma once

// Eavesdropper probes and the sequential attack circuit.
//
// Register layout: qubit 0 carries the signal; eavesdropper j (1-based)
// owns probe e on qubit 2j-1 and probe f on qubit 2j.
//
// Per eavesdropper, in attack order:
//   xy signals: CNOT(signal -> e), then CNOT(f -> signal)
//   uv signals: CNOT(e -> signal), then CNOT(signal -> f)

#include "eavesim/quantum_core.hpp"

#include <span>
#include <vector>

namespace eavesim {

// Maps a disturbance D onto the probe mixing parameter 1/2 - sqrt(D(1-D)).
// The same map sends Delta back to D on [0, 1/2].
double delta_from_d(double d);
double d_from_delta(double delta);

struct EveParams {
  double delta_uv = 0.5;  // mixing of probe e
  double d_xy = 0.0;      // mixing of probe f

  // Disturbance in the u-v basis implied by delta_uv.
  double d_uv() const { return d_from_delta(delta_uv); }
  // True when d_xy equals d_uv, i.e. the strategy disturbs both bases equally.
  bool symmetric(double tolerance = kExactTolerance) const;
  void validate() const;

  static EveParams from_disturbance(double d);

  friend bool operator==(const EveParams&, const EveParams&) = default;
};

// Deliberate wiring faults, used as negative controls by the verifier.
enum class CircuitFault {
  none,
  // The signal->e CNOT of every eavesdropper has control and target swapped.
  swapped_signal_cnot,
};

struct AttackScenario {
  std::vector<EveParams> eves;  // index 0 attacks first
  Basis signal_basis = Basis::xy;
  int max_qubits = kDefaultMaxQubits;
  CircuitFault fault = CircuitFault::none;

  int num_eves() const { return static_cast<int>(eves.size()); }
  int num_qubits() const { return 1 + 2 * num_eves(); }
  // Throws std::invalid_argument for bad parameters, CapacityError when the
  // register would exceed max_qubits.
  void validate() const;
};

constexpr int signal_qubit() { return 0; }
constexpr int e_qubit(int eve) { return 2 * eve - 1; }
constexpr int f_qubit(int eve) { return 2 * eve; }

enum class ProbeKind { e, f };

// sqrt(1-p)|x> + sqrt(p)|y>. For probe e, p is Delta_uv; for probe f, D_xy.
StateVector probe_state(double p, ProbeKind which);
QubitAmplitudes probe_amplitudes(double p);

// Post-attack images of the two signal symbols of `basis`.
struct JointSignalStates {
  Basis basis = Basis::xy;
  int num_eves = 0;
  StateVector first{1};   // image of |x> or |u>
  StateVector second{1};  // image of |y> or |v>

  // The post-attack state for any symbol. Symbols of the other basis are
  // formed by linearity as (first +- second)/sqrt2.
  StateVector signal(Symbol s) const;
};

// Signal qubit followed by every eavesdropper's fresh probes.
StateVector initial_register(QubitAmplitudes signal, const AttackScenario& scenario);

// Applies the whole attack circuit for scenario.signal_basis to `state`.
void run_attack_circuit(StateVector& state, const AttackScenario& scenario);

JointSignalStates build_joint_states(const AttackScenario& scenario);

// Symmetric strategies: eavesdropper j uses D_xy = d[j] and
// Delta_uv = delta_from_d(d[j]). Each d[j] must lie in [0, 1/2].
AttackScenario symmetric_scenario(std::span<const double> d, Basis basis = Basis::xy);

}  // namespace eavesim
