#include "eavesim/information_analysis.hpp"

#include "eavesim/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eavesim {

namespace {

// Conditioning on an outcome tuple below this probability is undefined.
constexpr double kNegligibleProbability = 1e-15;

void check_eve_index(const JointSignalStates& states, int eve_index) {
  if (eve_index < 1 || eve_index > states.num_eves) {
    std::ostringstream os;
    os << "eavesdropper index " << eve_index << " outside [1, " << states.num_eves << "]";
    throw std::invalid_argument(os.str());
  }
}

std::array<Symbol, 2> symbols_of(Basis b) {
  return b == Basis::xy ? std::array{Symbol::x, Symbol::y} : std::array{Symbol::u, Symbol::v};
}

Symbol partner(Symbol s) {
  switch (s) {
    case Symbol::x: return Symbol::y;
    case Symbol::y: return Symbol::x;
    case Symbol::u: return Symbol::v;
    case Symbol::v: return Symbol::u;
  }
  return s;
}

DensityMatrix single_qubit_projector(Symbol s) {
  const QubitAmplitudes k = ket(s);
  const double vec[2] = {k.x, k.y};
  return DensityMatrix::outer(vec);
}

// Probe-pair vector of outcome lambda in `frame`, register bit order.
std::array<double, kOutcomes> outcome_vector(int lambda, Basis frame) {
  const auto letters = symbols_of(frame);
  const QubitAmplitudes e = ket(letters[static_cast<std::size_t>((lambda >> 1) & 1)]);
  const QubitAmplitudes f = ket(letters[static_cast<std::size_t>(lambda & 1)]);
  std::array<double, kOutcomes> vec{};
  for (std::size_t k = 0; k < vec.size(); ++k) {
    const double ae = (k & 1U) ? e.y : e.x;
    const double af = (k & 2U) ? f.y : f.x;
    // conjugate-frame products are exactly +-1/2
    vec[k] = frame == Basis::uv ? std::copysign(0.5, ae * af) : ae * af;
  }
  return vec;
}

std::vector<PovmSet> all_povms(const JointSignalStates& states) {
  std::vector<PovmSet> povms;
  for (int j = 1; j <= states.num_eves; ++j) povms.push_back(povm_for_eve(states, j));
  return povms;
}

}  // namespace

LocalProjector PovmSet::factor(int lambda) const {
  if (lambda < 0 || lambda >= kOutcomes) throw std::invalid_argument("outcome index outside [0, 3]");
  return {elements[static_cast<std::size_t>(lambda)], {qubits[0], qubits[1]}};
}

DensityMatrix gamma_operator(const JointSignalStates& states, int eve_index) {
  check_eve_index(states, eve_index);
  const int probes[2] = {e_qubit(eve_index), f_qubit(eve_index)};
  return partial_trace(states.first, probes) - partial_trace(states.second, probes);
}

PovmSet povm_for_eve(const JointSignalStates& states, int eve_index) {
  const DensityMatrix gamma = gamma_operator(states, eve_index);

  PovmSet povm;
  povm.eve_index = eve_index;
  povm.frame = states.basis;
  povm.qubits = {e_qubit(eve_index), f_qubit(eve_index)};
  for (int lambda = 0; lambda < kOutcomes; ++lambda) {
    const auto vec = outcome_vector(lambda, povm.frame);
    povm.elements[static_cast<std::size_t>(lambda)] = DensityMatrix::outer(vec);
    povm.vectors[static_cast<std::size_t>(lambda)] = vec;

    const auto image = gamma.apply(vec);
    double rayleigh = 0.0;
    for (std::size_t k = 0; k < vec.size(); ++k) rayleigh += vec[k] * image[k];
    double residual = 0.0;
    for (std::size_t k = 0; k < vec.size(); ++k)
      residual += (image[k] - rayleigh * vec[k]) * (image[k] - rayleigh * vec[k]);
    povm.eigenvector_residual = std::max(povm.eigenvector_residual, std::sqrt(residual));
  }

  const auto spectrum = gamma.eigenvalues();
  for (std::size_t k = 1; k < spectrum.size(); ++k)
    if (spectrum[k] - spectrum[k - 1] < kEigenTolerance) povm.degenerate = true;
  return povm;
}

double EveOutcomeTable::mean_gain() const {
  double g = 0.0;
  for (int l = 0; l < kOutcomes; ++l)
    if (reachable[l]) g += q[l] * gain[l];
  return g;
}

double EveOutcomeTable::gain_spread() const {
  double lo = 1.0;
  double hi = 0.0;
  bool any = false;
  for (int l = 0; l < kOutcomes; ++l) {
    if (!reachable[l]) continue;
    any = true;
    lo = std::min(lo, gain[l]);
    hi = std::max(hi, gain[l]);
  }
  return any ? hi - lo : 0.0;
}

EveOutcomeTable outcome_table(const JointSignalStates& states, const PovmSet& povm,
                              int eve_index) {
  check_eve_index(states, eve_index);
  if (povm.eve_index != eve_index) throw std::invalid_argument("POVM belongs to another eavesdropper");

  const int probes[2] = {e_qubit(eve_index), f_qubit(eve_index)};
  const StateVector* signals[2] = {&states.first, &states.second};

  EveOutcomeTable t;
  for (std::size_t l = 0; l < kOutcomes; ++l) {
    for (std::size_t i = 0; i < 2; ++i) t.p[l][i] = measure_rank_one(*signals[i], povm.vectors[l], probes);
    t.q[l] = 0.5 * (t.p[l][0] + t.p[l][1]);
    t.reachable[l] = t.q[l] > 0.0;
    if (!t.reachable[l]) continue;
    for (std::size_t i = 0; i < 2; ++i) t.posterior[i][l] = 0.5 * t.p[l][i] / t.q[l];
    t.gain[l] = std::abs(t.posterior[0][l] - t.posterior[1][l]);
  }
  return t;
}

double mutual_information(const EveOutcomeTable& table) {
  double info = 0.0;
  for (std::size_t l = 0; l < kOutcomes; ++l)
    if (table.reachable[l]) info += table.q[l] * closed_form::phi(std::clamp(table.gain[l], 0.0, 1.0));
  return 0.5 * info;
}

double bob_error_rate(const JointSignalStates& states, Basis measure_basis) {
  const int alice[1] = {signal_qubit()};
  double error = 0.0;
  for (Symbol s : symbols_of(measure_basis)) {
    error += measure_projector(states.signal(s), single_qubit_projector(partner(s)), alice);
  }
  return 0.5 * error;
}

double joint_outcome_probability(const JointSignalStates& states, std::span<const PovmSet> povms,
                                 std::span<const int> outcomes, Symbol symbol) {
  if (static_cast<int>(povms.size()) != states.num_eves ||
      static_cast<int>(outcomes.size()) != states.num_eves)
    throw std::invalid_argument("need one POVM and one outcome per eavesdropper");
  std::vector<LocalProjector> factors;
  factors.reserve(povms.size());
  for (std::size_t j = 0; j < povms.size(); ++j) factors.push_back(povms[j].factor(outcomes[j]));
  return measure_projectors(states.signal(symbol), factors);
}

std::optional<double> conditional_disturbance(const JointSignalStates& states,
                                              std::span<const PovmSet> povms,
                                              std::span<const int> outcomes, Symbol symbol) {
  const double denominator = joint_outcome_probability(states, povms, outcomes, symbol);
  if (denominator <= kNegligibleProbability) return std::nullopt;

  std::vector<LocalProjector> factors;
  factors.push_back({single_qubit_projector(symbol), {signal_qubit()}});
  for (std::size_t j = 0; j < povms.size(); ++j) factors.push_back(povms[j].factor(outcomes[j]));
  const double correct = measure_projectors(states.signal(symbol), factors);
  return 1.0 - correct / denominator;
}

std::optional<double> conditional_disturbance(const JointSignalStates& states,
                                              std::span<const int> outcomes, Symbol symbol) {
  const auto povms = all_povms(states);
  return conditional_disturbance(states, povms, outcomes, symbol);
}

double decomposed_error_rate(const JointSignalStates& states, Basis measure_basis) {
  const auto povms = all_povms(states);
  const std::size_t tuples = std::size_t{1} << (2 * states.num_eves);
  std::vector<int> outcomes(static_cast<std::size_t>(states.num_eves));
  double total = 0.0;
  for (Symbol s : symbols_of(measure_basis)) {
    for (std::size_t t = 0; t < tuples; ++t) {
      for (std::size_t j = 0; j < outcomes.size(); ++j) outcomes[j] = static_cast<int>((t >> (2 * j)) & 3U);
      const auto d = conditional_disturbance(states, povms, outcomes, s);
      if (!d) continue;
      total += joint_outcome_probability(states, povms, outcomes, s) * *d;
    }
  }
  return 0.5 * total;
}

double alice_bob_information(double d_b) { return closed_form::receiver_information(d_b); }

AnalysisReport analyze(const AttackScenario& scenario) {
  const JointSignalStates states = build_joint_states(scenario);

  AnalysisReport report;
  report.scenario = scenario;
  for (int j = 1; j <= scenario.num_eves(); ++j) {
    const PovmSet povm = povm_for_eve(states, j);
    EveReport eve;
    eve.index = j;
    eve.params = scenario.eves[static_cast<std::size_t>(j - 1)];
    eve.table = outcome_table(states, povm, j);
    eve.gain = eve.table.mean_gain();
    eve.gain_spread = eve.table.gain_spread();
    eve.mutual_information = mutual_information(eve.table);
    eve.povm_degenerate = povm.degenerate;
    eve.povm_eigenvector_residual = povm.eigenvector_residual;
    report.symmetric = report.symmetric && eve.params.symmetric();
    report.eves.push_back(eve);
  }
  report.d_b_xy = bob_error_rate(states, Basis::xy);
  report.d_b_uv = bob_error_rate(states, Basis::uv);
  report.d_b = conjugate(scenario.signal_basis) == Basis::xy ? report.d_b_xy : report.d_b_uv;
  report.i_ab = alice_bob_information(std::clamp(report.d_b, 0.0, 1.0));
  if (report.d_b <= 0.5 + kExactTolerance)
    report.i_opt = closed_form::optimal_information(std::clamp(report.d_b, 0.0, 0.5));
  return report;
}

}  // namespace eavesim
