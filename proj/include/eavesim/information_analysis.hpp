#pragma once

// Eavesdropper measurements and information measures computed from the
// simulated post-attack states.

#include "eavesim/attack_model.hpp"
#include "eavesim/quantum_core.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace eavesim {

// Outcome labels: 0 = |aa>, 1 = |ab>, 2 = |ba>, 3 = |bb> on the (e, f) probe
// pair, with a/b = x/y for x-y signals and u/v for u-v signals. The first
// letter belongs to probe e.
inline constexpr int kOutcomes = 4;

// Local index of outcome `lambda` in register bit order (e is bit 0).
constexpr std::size_t probe_local_index(int lambda) {
  return static_cast<std::size_t>(((lambda >> 1) & 1) | ((lambda & 1) << 1));
}

struct PovmSet {
  int eve_index = 0;
  Basis frame = Basis::xy;
  std::array<int, 2> qubits{};  // (e, f)
  std::array<DensityMatrix, kOutcomes> elements;
  // elements[l] = |vectors[l]><vectors[l]|, register bit order.
  std::array<std::array<double, kOutcomes>, kOutcomes> vectors{};

  // Spectrum of Gamma has (near-)repeated eigenvalues.
  bool degenerate = false;
  // Largest |Gamma v - (v.Gamma v) v| over the projector vectors; zero when
  // each element projects onto an eigenvector of Gamma.
  double eigenvector_residual = 0.0;

  LocalProjector factor(int lambda) const;
};

// rho_first - rho_second on eavesdropper j's probe pair.
DensityMatrix gamma_operator(const JointSignalStates& states, int eve_index);

PovmSet povm_for_eve(const JointSignalStates& states, int eve_index);

struct EveOutcomeTable {
  // p[lambda][i]: probability of outcome lambda given symbol i (0 = first).
  std::array<std::array<double, 2>, kOutcomes> p{};
  std::array<double, kOutcomes> q{};
  // posterior[i][lambda]; only meaningful where reachable[lambda].
  std::array<std::array<double, kOutcomes>, 2> posterior{};
  std::array<double, kOutcomes> gain{};
  std::array<bool, kOutcomes> reachable{};

  // q-weighted gain over reachable outcomes.
  double mean_gain() const;
  // max - min gain over reachable outcomes.
  double gain_spread() const;
};

EveOutcomeTable outcome_table(const JointSignalStates& states, const PovmSet& povm,
                              int eve_index);

// 1/2 sum_lambda q_lambda phi(G_lambda), in bits.
double mutual_information(const EveOutcomeTable& table);

// Probability that the receiver, measuring in `measure_basis`, decodes the
// wrong symbol, averaged over the two symbols of that basis.
double bob_error_rate(const JointSignalStates& states, Basis measure_basis);

// Joint probability of the outcome tuple (one outcome per eavesdropper, in
// attack order) given `symbol`.
double joint_outcome_probability(const JointSignalStates& states,
                                 std::span<const PovmSet> povms,
                                 std::span<const int> outcomes, Symbol symbol);

// Receiver error probability conditioned on `symbol` and the outcome tuple.
// Empty when the tuple has zero probability.
std::optional<double> conditional_disturbance(const JointSignalStates& states,
                                              std::span<const PovmSet> povms,
                                              std::span<const int> outcomes,
                                              Symbol symbol);

// Convenience overload that builds every eavesdropper's POVM first.
std::optional<double> conditional_disturbance(const JointSignalStates& states,
                                              std::span<const int> outcomes,
                                              Symbol symbol);

// Sum over all outcome tuples of P(tuple) d(tuple), averaged over the two
// symbols of `measure_basis`. Costs 4^n measurements.
double decomposed_error_rate(const JointSignalStates& states, Basis measure_basis);

// 1 + D log2 D + (1-D) log2(1-D).
double alice_bob_information(double d_b);

struct EveReport {
  int index = 0;  // 1-based
  EveParams params;
  EveOutcomeTable table;
  double gain = 0.0;
  double gain_spread = 0.0;
  double mutual_information = 0.0;
  bool povm_degenerate = false;
  double povm_eigenvector_residual = 0.0;
};

struct AnalysisReport {
  AttackScenario scenario;
  std::vector<EveReport> eves;
  double d_b_xy = 0.0;
  double d_b_uv = 0.0;
  // Error rate in the basis conjugate to the signal basis; the disturbance
  // that bounds the eavesdroppers' information.
  double d_b = 0.0;
  double i_ab = 1.0;
  // Optimal single-eavesdropper information at d_b; empty when d_b > 1/2.
  std::optional<double> i_opt;
  bool symmetric = true;
};

AnalysisReport analyze(const AttackScenario& scenario);

}  // namespace eavesim
