#include "eavesim/attack_model.hpp"

#include <cmath>
#include <sstream>

namespace eavesim {

namespace {

void check_unit_interval(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << p << " outside [0, 1]";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double delta_from_d(double d) {
  check_unit_interval(d, "disturbance");
  return 0.5 - std::sqrt(d * (1.0 - d));
}

double d_from_delta(double delta) {
  check_unit_interval(delta, "mixing parameter");
  return 0.5 - std::sqrt(delta * (1.0 - delta));
}

bool EveParams::symmetric(double tolerance) const {
  return std::abs(d_xy - d_uv()) <= tolerance;
}

void EveParams::validate() const {
  check_unit_interval(delta_uv, "delta_uv");
  check_unit_interval(d_xy, "d_xy");
}

EveParams EveParams::from_disturbance(double d) {
  if (!(d >= 0.0 && d <= 0.5)) {
    std::ostringstream os;
    os << "symmetric disturbance " << d << " outside [0, 1/2]";
    throw std::invalid_argument(os.str());
  }
  return EveParams{delta_from_d(d), d};
}

void AttackScenario::validate() const {
  for (const auto& eve : eves) eve.validate();
  if (max_qubits < 1 || max_qubits > kHardMaxQubits) {
    std::ostringstream os;
    os << "qubit ceiling " << max_qubits << " outside [1, " << kHardMaxQubits << "]";
    throw std::invalid_argument(os.str());
  }
  if (num_qubits() > max_qubits) {
    std::ostringstream os;
    os << num_eves() << " eavesdroppers need " << num_qubits()
       << " qubits, above the ceiling of " << max_qubits;
    throw CapacityError(os.str());
  }
}

QubitAmplitudes probe_amplitudes(double p) {
  check_unit_interval(p, "probe parameter");
  return {std::sqrt(1.0 - p), std::sqrt(p)};
}

StateVector probe_state(double p, ProbeKind /*which*/) {
  const QubitAmplitudes q = probe_amplitudes(p);
  return StateVector::product(std::span<const QubitAmplitudes>(&q, 1));
}

StateVector JointSignalStates::signal(Symbol s) const {
  const bool native = basis_of(s) == basis;
  const bool is_first = (s == Symbol::x || s == Symbol::u);
  if (native) return is_first ? first : second;
  // |x> = (|u>+|v>)/sqrt2, |u> = (|x>+|y>)/sqrt2, and likewise with minus.
  return combine(first, second, is_first ? 1 : -1);
}

StateVector initial_register(QubitAmplitudes signal, const AttackScenario& scenario) {
  scenario.validate();
  std::vector<QubitAmplitudes> qubits;
  qubits.reserve(static_cast<std::size_t>(scenario.num_qubits()));
  qubits.push_back(signal);
  for (const auto& eve : scenario.eves) {
    qubits.push_back(probe_amplitudes(eve.delta_uv));
    qubits.push_back(probe_amplitudes(eve.d_xy));
  }
  return StateVector::product(qubits, scenario.max_qubits);
}

void run_attack_circuit(StateVector& state, const AttackScenario& scenario) {
  if (state.num_qubits() != scenario.num_qubits())
    throw std::invalid_argument("register size does not match the scenario");
  const bool faulty = scenario.fault == CircuitFault::swapped_signal_cnot;
  for (int j = 1; j <= scenario.num_eves(); ++j) {
    const int s = signal_qubit();
    const int e = e_qubit(j);
    const int f = f_qubit(j);
    if (scenario.signal_basis == Basis::xy) {
      if (faulty) state.apply_cnot_xy(e, s);
      else state.apply_cnot_xy(s, e);
      state.apply_cnot_xy(f, s);
    } else {
      if (faulty) state.apply_cnot_xy(s, e);
      else state.apply_cnot_xy(e, s);
      state.apply_cnot_xy(s, f);
    }
  }
}

JointSignalStates build_joint_states(const AttackScenario& scenario) {
  scenario.validate();
  const bool xy = scenario.signal_basis == Basis::xy;
  JointSignalStates out;
  out.basis = scenario.signal_basis;
  out.num_eves = scenario.num_eves();
  out.first = initial_register(ket(xy ? Symbol::x : Symbol::u), scenario);
  out.second = initial_register(ket(xy ? Symbol::y : Symbol::v), scenario);
  run_attack_circuit(out.first, scenario);
  run_attack_circuit(out.second, scenario);
  return out;
}

AttackScenario symmetric_scenario(std::span<const double> d, Basis basis) {
  AttackScenario scenario;
  scenario.signal_basis = basis;
  scenario.eves.reserve(d.size());
  for (double dj : d) scenario.eves.push_back(EveParams::from_disturbance(dj));
  return scenario;
}

}  // namespace eavesim
