#include "eavesim/quantum_core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

namespace eavesim {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_register_size(int num_qubits, int max_qubits) {
  if (max_qubits < 1 || max_qubits > kHardMaxQubits) {
    std::ostringstream os;
    os << "qubit ceiling " << max_qubits << " outside [1, " << kHardMaxQubits << "]";
    throw std::invalid_argument(os.str());
  }
  if (num_qubits < 1) throw std::invalid_argument("register needs at least one qubit");
  if (num_qubits > max_qubits) {
    std::ostringstream os;
    os << "register of " << num_qubits << " qubits exceeds the ceiling of " << max_qubits;
    throw CapacityError(os.str());
  }
}

// Validates a qubit list and returns the bit mask it covers.
std::uint64_t qubit_mask(std::span<const int> qubits, int num_qubits, const char* what) {
  if (qubits.empty()) throw std::invalid_argument(std::string(what) + ": empty qubit set");
  std::uint64_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits) {
      std::ostringstream os;
      os << what << ": qubit " << q << " outside register of " << num_qubits;
      throw std::invalid_argument(os.str());
    }
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (mask & bit) {
      std::ostringstream os;
      os << what << ": qubit " << q << " listed twice";
      throw std::invalid_argument(os.str());
    }
    mask |= bit;
  }
  return mask;
}

// offsets[k] places local index k onto the register bits listed in `qubits`.
std::vector<std::uint64_t> local_offsets(std::span<const int> qubits) {
  std::vector<std::uint64_t> offsets(std::size_t{1} << qubits.size(), 0);
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    for (std::size_t m = 0; m < qubits.size(); ++m) {
      if ((k >> m) & 1U) offsets[k] |= std::uint64_t{1} << qubits[m];
    }
  }
  return offsets;
}

// Calls fn(base) for every index whose bits under `mask` are all zero.
template <typename Fn>
void for_each_complement(std::uint64_t mask, std::uint64_t full, Fn&& fn) {
  std::uint64_t rest = 0;
  do {
    fn(rest);
    rest = ((rest | mask) + 1) & ~mask & full;
  } while (rest != 0);
}

void check_projector(const DensityMatrix& projector, std::size_t expected_dim) {
  if (projector.dimension() != expected_dim) {
    std::ostringstream os;
    os << "projector dimension " << projector.dimension() << " does not match " << expected_dim;
    throw std::invalid_argument(os.str());
  }
  if (projector.asymmetry() > kExactTolerance)
    throw std::invalid_argument("projector is not symmetric");
  if (projector.idempotency_defect() > kExactTolerance)
    throw std::invalid_argument("projector is not idempotent");
}

// Applies a dense local operator in place.
void apply_local(std::vector<double>& amps, int num_qubits, const DensityMatrix& op,
                 std::span<const int> on) {
  const std::uint64_t mask = qubit_mask(on, num_qubits, "local operator");
  const auto offsets = local_offsets(on);
  const std::size_t dim = offsets.size();
  const std::uint64_t full = (std::uint64_t{1} << num_qubits) - 1;
  std::vector<double> in(dim);
  for_each_complement(mask, full, [&](std::uint64_t base) {
    for (std::size_t k = 0; k < dim; ++k) in[k] = amps[base | offsets[k]];
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += op(r, c) * in[c];
      amps[base | offsets[r]] = acc;
    }
  });
}

}  // namespace

Basis basis_of(Symbol s) { return (s == Symbol::x || s == Symbol::y) ? Basis::xy : Basis::uv; }

Basis conjugate(Basis b) { return b == Basis::xy ? Basis::uv : Basis::xy; }

const char* to_string(Basis b) { return b == Basis::xy ? "xy" : "uv"; }

const char* to_string(Symbol s) {
  switch (s) {
    case Symbol::x: return "x";
    case Symbol::y: return "y";
    case Symbol::u: return "u";
    case Symbol::v: return "v";
  }
  return "?";
}

QubitAmplitudes ket(Symbol s) {
  switch (s) {
    case Symbol::x: return {1.0, 0.0};
    case Symbol::y: return {0.0, 1.0};
    case Symbol::u: return {kInvSqrt2, kInvSqrt2};
    case Symbol::v: return {kInvSqrt2, -kInvSqrt2};
  }
  return {};
}

QubitAmplitudes change_basis(QubitAmplitudes q) {
  return {(q.x + q.y) * kInvSqrt2, (q.x - q.y) * kInvSqrt2};
}

// --- StateVector -----------------------------------------------------------

StateVector::StateVector(int num_qubits, int max_qubits) : num_qubits_(num_qubits) {
  check_register_size(num_qubits, max_qubits);
  amplitudes_.assign(std::size_t{1} << num_qubits, 0.0);
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<double> amplitudes, int max_qubits)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_register_size(num_qubits, max_qubits);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
    std::ostringstream os;
    os << "expected " << (std::size_t{1} << num_qubits) << " amplitudes, got "
       << amplitudes_.size();
    throw std::invalid_argument(os.str());
  }
  const double norm = norm_squared();
  if (!(std::abs(norm - 1.0) <= kExactTolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "state is not normalized (norm^2 = " << norm << ")";
    throw std::invalid_argument(os.str());
  }
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index, int max_qubits) {
  StateVector s(num_qubits, max_qubits);
  if (index >= s.dimension()) throw std::invalid_argument("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

StateVector StateVector::product(std::span<const QubitAmplitudes> qubits, int max_qubits) {
  const int n = static_cast<int>(qubits.size());
  check_register_size(n, max_qubits);
  std::vector<double> amps{1.0};
  amps.reserve(std::size_t{1} << n);
  // Qubit k becomes bit k: each new qubit doubles the vector as the high half.
  for (const auto& q : qubits) {
    const std::size_t half = amps.size();
    amps.resize(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
      amps[half + i] = amps[i] * q.y;
      amps[i] *= q.x;
    }
  }
  return StateVector(n, std::move(amps), max_qubits);
}

double StateVector::norm_squared() const {
  return std::inner_product(amplitudes_.begin(), amplitudes_.end(), amplitudes_.begin(), 0.0);
}

void StateVector::check_qubit(int qubit, const char* what) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    std::ostringstream os;
    os << what << " qubit " << qubit << " outside register of " << num_qubits_;
    throw std::invalid_argument(os.str());
  }
}

void StateVector::apply_cnot_xy(int control, int target) {
  check_qubit(control, "control");
  check_qubit(target, "target");
  if (control == target) throw std::invalid_argument("control and target must differ");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amplitudes_[i], amplitudes_[i | tbit]);
  }
}

void StateVector::apply_cnot_uv(int control, int target) {
  // In the conjugate frame the roles of control and target are exchanged.
  apply_cnot_xy(target, control);
}

void StateVector::apply_basis_change(int qubit) {
  check_qubit(qubit, "basis change");
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & bit) continue;
    const double a = amplitudes_[i];
    const double b = amplitudes_[i | bit];
    amplitudes_[i] = (a + b) * kInvSqrt2;
    amplitudes_[i | bit] = (a - b) * kInvSqrt2;
  }
}

StateVector apply_cnot_xy(StateVector state, int control, int target) {
  state.apply_cnot_xy(control, target);
  return state;
}

StateVector apply_cnot_uv(StateVector state, int control, int target) {
  state.apply_cnot_uv(control, target);
  return state;
}

double inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    std::ostringstream os;
    os << "inner product of " << a.num_qubits() << "- and " << b.num_qubits()
       << "-qubit states";
    throw std::invalid_argument(os.str());
  }
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

StateVector combine(const StateVector& a, const StateVector& b, int sign) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("combine: register sizes differ");
  if (sign != 1 && sign != -1) throw std::invalid_argument("combine: sign must be +1 or -1");
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + sign * y[i]) * kInvSqrt2;
  return StateVector(a.num_qubits(), std::move(out), kHardMaxQubits);
}

// --- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(int num_qubits)
    : num_qubits_(num_qubits), dimension_(std::size_t{1} << num_qubits),
      entries_(dimension_ * dimension_, 0.0) {
  if (num_qubits < 0 || num_qubits > 14)
    throw std::invalid_argument("density matrix qubit count outside [0, 14]");
}

DensityMatrix::DensityMatrix(int num_qubits, std::vector<double> entries)
    : DensityMatrix(num_qubits) {
  if (entries.size() != entries_.size())
    throw std::invalid_argument("density matrix entry count mismatch");
  entries_ = std::move(entries);
}

DensityMatrix DensityMatrix::identity(int num_qubits) {
  DensityMatrix m(num_qubits);
  for (std::size_t i = 0; i < m.dimension_; ++i) m(i, i) = 1.0;
  return m;
}

DensityMatrix DensityMatrix::outer(std::span<const double> vec) {
  int k = 0;
  while ((std::size_t{1} << k) < vec.size()) ++k;
  if ((std::size_t{1} << k) != vec.size())
    throw std::invalid_argument("outer product needs a power-of-two length vector");
  DensityMatrix m(k);
  for (std::size_t r = 0; r < vec.size(); ++r)
    for (std::size_t c = 0; c < vec.size(); ++c) m(r, c) = vec[r] * vec[c];
  return m;
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) t += (*this)(i, i);
  return t;
}

double DensityMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dimension_; ++r)
    for (std::size_t c = r + 1; c < dimension_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - (*this)(c, r)));
  return worst;
}

double DensityMatrix::idempotency_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t c = 0; c < dimension_; ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dimension_; ++k) acc += (*this)(r, k) * (*this)(k, c);
      worst = std::max(worst, std::abs(acc - (*this)(r, c)));
    }
  }
  return worst;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  const auto n = static_cast<Eigen::Index>(dimension_);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      entries_.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

DensityMatrix DensityMatrix::operator-(const DensityMatrix& rhs) const {
  if (rhs.dimension_ != dimension_) throw std::invalid_argument("dimension mismatch");
  DensityMatrix out(num_qubits_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - rhs.entries_[i];
  return out;
}

std::vector<double> DensityMatrix::apply(std::span<const double> vec) const {
  if (vec.size() != dimension_) throw std::invalid_argument("dimension mismatch");
  std::vector<double> out(dimension_, 0.0);
  for (std::size_t r = 0; r < dimension_; ++r)
    for (std::size_t c = 0; c < dimension_; ++c) out[r] += (*this)(r, c) * vec[c];
  return out;
}

// --- Reductions and measurements ------------------------------------------

DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep) {
  std::vector<int> kept(keep.begin(), keep.end());
  const std::uint64_t mask = qubit_mask(kept, state.num_qubits(), "partial trace");
  std::sort(kept.begin(), kept.end());
  const auto offsets = local_offsets(kept);
  const std::size_t dim = offsets.size();
  const std::uint64_t full = state.dimension() - 1;
  const auto amps = state.amplitudes();

  DensityMatrix rho(static_cast<int>(kept.size()));
  std::vector<double> local(dim);
  for_each_complement(mask, full, [&](std::uint64_t base) {
    for (std::size_t k = 0; k < dim; ++k) local[k] = amps[base | offsets[k]];
    for (std::size_t r = 0; r < dim; ++r) {
      if (local[r] == 0.0) continue;
      for (std::size_t c = 0; c < dim; ++c) rho(r, c) += local[r] * local[c];
    }
  });
  return rho;
}

double measure_projector(const StateVector& state, const DensityMatrix& projector,
                         std::span<const int> on) {
  LocalProjector factor{projector, {on.begin(), on.end()}};
  return measure_projectors(state, std::span<const LocalProjector>(&factor, 1));
}

double measure_rank_one(const StateVector& state, std::span<const double> w,
                        std::span<const int> on) {
  const std::uint64_t mask = qubit_mask(on, state.num_qubits(), "measurement");
  const auto offsets = local_offsets(on);
  if (w.size() != offsets.size()) throw std::invalid_argument("projector vector dimension mismatch");
  const double w_norm = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  if (std::abs(w_norm - 1.0) > kExactTolerance) throw std::invalid_argument("projector vector is not normalized");
  const auto amps = state.amplitudes();
  double total = 0.0;
  for_each_complement(mask, state.dimension() - 1, [&](std::uint64_t base) {
    double overlap = 0.0;
    for (std::size_t k = 0; k < offsets.size(); ++k) overlap += w[k] * amps[base | offsets[k]];
    total += overlap * overlap;
  });
  return total;
}

double measure_projectors(const StateVector& state, std::span<const LocalProjector> factors) {
  std::uint64_t covered = 0;
  for (const auto& f : factors) {
    const std::uint64_t mask = qubit_mask(f.on, state.num_qubits(), "measurement");
    if (covered & mask) throw std::invalid_argument("measurement factors overlap");
    covered |= mask;
    check_projector(f.projector, std::size_t{1} << f.on.size());
  }
  // Commuting projectors on disjoint qubits: <psi|P|psi> = <psi|P psi>.
  std::vector<double> work(state.amplitudes().begin(), state.amplitudes().end());
  for (const auto& f : factors) apply_local(work, state.num_qubits(), f.projector, f.on);
  const auto amps = state.amplitudes();
  return std::inner_product(amps.begin(), amps.end(), work.begin(), 0.0);
}

}  // namespace eavesim
