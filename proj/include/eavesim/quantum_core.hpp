#pragma once

// Real-amplitude statevector simulation for small qubit registers.
//
// Index bit k of an amplitude index holds qubit k. Bit value 0 is |x>, bit
// value 1 is |y>. The conjugate basis is |u> = (|x>+|y>)/sqrt2 and
// |v> = (|x>-|y>)/sqrt2.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eavesim {

inline constexpr int kDefaultMaxQubits = 21;
// Upper bound accepted for any configured ceiling (8 GiB of doubles).
inline constexpr int kHardMaxQubits = 30;

inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kEigenTolerance = 1e-9;

enum class Basis { xy, uv };

// One signal symbol of the BB84 alphabet.
enum class Symbol { x, y, u, v };

Basis basis_of(Symbol s);
Basis conjugate(Basis b);
const char* to_string(Basis b);
const char* to_string(Symbol s);

// Thrown when a register would exceed the configured qubit ceiling.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Amplitudes of a single qubit in the x-y basis.
struct QubitAmplitudes {
  double x = 1.0;
  double y = 0.0;
};

QubitAmplitudes ket(Symbol s);

// Basis change between the x-y and u-v frames. It is its own inverse.
QubitAmplitudes change_basis(QubitAmplitudes q);

class StateVector {
 public:
  // |x x ... x>.
  explicit StateVector(int num_qubits, int max_qubits = kDefaultMaxQubits);
  // Takes ownership of the amplitudes; size must be 2^num_qubits and the norm
  // must be 1 within kExactTolerance.
  StateVector(int num_qubits, std::vector<double> amplitudes,
              int max_qubits = kDefaultMaxQubits);

  static StateVector basis_state(int num_qubits, std::uint64_t index,
                                 int max_qubits = kDefaultMaxQubits);
  // qubits[k] is the state of qubit k.
  static StateVector product(std::span<const QubitAmplitudes> qubits,
                             int max_qubits = kDefaultMaxQubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const double> amplitudes() const { return amplitudes_; }
  double operator[](std::size_t index) const { return amplitudes_[index]; }
  double norm_squared() const;

  // In-place gates. Both are pure amplitude permutations.
  void apply_cnot_xy(int control, int target);
  void apply_cnot_uv(int control, int target);
  // Rotates one qubit between the x-y and u-v frames.
  void apply_basis_change(int qubit);

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  void check_qubit(int qubit, const char* what) const;

  int num_qubits_;
  std::vector<double> amplitudes_;
};

StateVector apply_cnot_xy(StateVector state, int control, int target);
StateVector apply_cnot_uv(StateVector state, int control, int target);

double inner_product(const StateVector& a, const StateVector& b);

// (a + sign * b) / sqrt2. The inputs must be orthogonal so the result stays
// normalized.
StateVector combine(const StateVector& a, const StateVector& b, int sign);

// Real symmetric operator on k qubits, stored row-major.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(int num_qubits);
  DensityMatrix(int num_qubits, std::vector<double> entries);

  static DensityMatrix identity(int num_qubits);
  // |vec><vec|; vec must have 2^k entries.
  static DensityMatrix outer(std::span<const double> vec);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return dimension_; }
  double operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dimension_ + col];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dimension_ + col];
  }
  std::span<const double> entries() const { return entries_; }

  double trace() const;
  // Largest |A(r,c) - A(c,r)|.
  double asymmetry() const;
  // Largest entry of |A*A - A|.
  double idempotency_defect() const;
  // Ascending.
  std::vector<double> eigenvalues() const;

  DensityMatrix operator-(const DensityMatrix& rhs) const;
  std::vector<double> apply(std::span<const double> vec) const;

 private:
  int num_qubits_ = 0;
  std::size_t dimension_ = 1;
  std::vector<double> entries_{1.0};
};

// Reduced state over `keep`. Local index bit m holds the m-th smallest kept
// qubit.
DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep);

// A projector acting on the listed qubits; local index bit m holds on[m].
struct LocalProjector {
  DensityMatrix projector;
  std::vector<int> on;
};

// <psi| 1 (x) P |psi>.
double measure_projector(const StateVector& state, const DensityMatrix& projector,
                         std::span<const int> on);

// <psi| 1 (x) |w><w| |psi>, summed as squared projected amplitudes so small
// probabilities keep their relative precision. `w` must be a unit vector.
double measure_rank_one(const StateVector& state, std::span<const double> w,
                        std::span<const int> on);

// <psi| P_1 (x) P_2 (x) ... |psi> for projectors on disjoint qubit sets.
double measure_projectors(const StateVector& state,
                          std::span<const LocalProjector> factors);

}  // namespace eavesim
