#pragma once

// Closed-form results for n eavesdroppers using symmetric strategies. Nothing
// here touches the simulator, so these functions serve as its oracle.

#include <span>
#include <vector>

namespace eavesim::closed_form {

// Disturbances D(1)..D(n) in attack order, each in [0, 1/2].
class SymmetricDisturbances {
 public:
  SymmetricDisturbances() = default;
  explicit SymmetricDisturbances(std::vector<double> d);

  std::size_t size() const { return d_.size(); }
  bool empty() const { return d_.empty(); }
  double operator[](std::size_t j) const { return d_[j]; }
  std::span<const double> values() const { return d_; }

 private:
  std::vector<double> d_;
};

// (1+z)log2(1+z) + (1-z)log2(1-z), z in [0, 1].
double phi(double z);

// Best information a lone eavesdropper can extract at disturbance d_b:
// phi(2 sqrt(D(1-D))) / 2, d_b in [0, 1/2].
double optimal_information(double d_b);

// 1 - h2(d_b).
double receiver_information(double d_b);

// G(j) = 2 sqrt(D(j)(1-D(j))) * prod_{k<j} (1 - 2 D(k)).
std::vector<double> gains(const SymmetricDisturbances& d);

// phi(G(j)) / 2 for every eavesdropper.
std::vector<double> mutual_informations(const SymmetricDisturbances& d);

// D_B,n = D_B,n-1 (1 - D(n)) + (1 - D_B,n-1) D(n), with D_B,0 = 0.
double bob_error_recursive(const SymmetricDisturbances& d);

// The recursion as printed: the second term re-evaluates D_B,n-1 with its
// last disturbance D(n-1) replaced by 1 - D(n-1). Exponential in n.
double bob_error_recursive_literal(std::span<const double> d);

// (1 - prod_j (1 - 2 D(j))) / 2, the odd-flip probability of the cascade.
double bob_error_product(const SymmetricDisturbances& d);

// Root of optimal_information(D) = receiver_information(D) on (0, 1/2),
// found by bisection to 1e-10.
double crossover_disturbance();

}  // namespace eavesim::closed_form
