#include "eavesim/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eavesim::closed_form {

namespace {

void check_range(double value, double hi, const char* what) {
  if (!(value >= 0.0 && value <= hi)) {
    std::ostringstream os;
    os << what << " = " << value << " outside [0, " << hi << "]";
    throw std::invalid_argument(os.str());
  }
}

// p log2 p with 0 log 0 = 0.
double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double literal(std::span<const double> d, std::size_t m) {
  // D_B over the first m disturbances.
  if (m == 0) return 0.0;
  if (m == 1) return d[0];
  const double dm = d[m - 1];
  std::vector<double> flipped(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m - 1));
  flipped.back() = 1.0 - flipped.back();
  return literal(d, m - 1) * (1.0 - dm) + literal(flipped, m - 1) * dm;
}

}  // namespace

SymmetricDisturbances::SymmetricDisturbances(std::vector<double> d) : d_(std::move(d)) {
  for (double dj : d_) check_range(dj, 0.5, "symmetric disturbance");
}

double phi(double z) {
  check_range(z, 1.0, "phi argument");
  return (1.0 + z) * std::log1p(z) / std::numbers::ln2 +
         (z < 1.0 ? (1.0 - z) * std::log1p(-z) / std::numbers::ln2 : 0.0);
}

double optimal_information(double d_b) {
  check_range(d_b, 0.5, "disturbance");
  // Clamp guards the last ulp at d_b = 1/2.
  const double z = std::min(1.0, 2.0 * std::sqrt(d_b * (1.0 - d_b)));
  return 0.5 * phi(z);
}

double receiver_information(double d_b) {
  check_range(d_b, 1.0, "error rate");
  return 1.0 + plogp(d_b) + plogp(1.0 - d_b);
}

std::vector<double> gains(const SymmetricDisturbances& d) {
  std::vector<double> out;
  out.reserve(d.size());
  double carried = 1.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    out.push_back(2.0 * std::sqrt(d[j] * (1.0 - d[j])) * carried);
    carried *= 1.0 - 2.0 * d[j];
  }
  return out;
}

std::vector<double> mutual_informations(const SymmetricDisturbances& d) {
  std::vector<double> out;
  for (double g : gains(d)) out.push_back(0.5 * phi(std::min(1.0, g)));
  return out;
}

double bob_error_recursive(const SymmetricDisturbances& d) {
  double d_b = 0.0;
  for (double dn : d.values()) d_b = d_b * (1.0 - dn) + (1.0 - d_b) * dn;
  return d_b;
}

double bob_error_recursive_literal(std::span<const double> d) {
  for (double dj : d) check_range(dj, 1.0, "disturbance");
  return literal(d, d.size());
}

double bob_error_product(const SymmetricDisturbances& d) {
  double prod = 1.0;
  for (double dj : d.values()) prod *= 1.0 - 2.0 * dj;
  return 0.5 * (1.0 - prod);
}

double crossover_disturbance() {
  // The eavesdropper curve is below the receiver's at 0.1 and above at 0.2.
  double lo = 0.1;
  double hi = 0.2;
  const auto gap = [](double d) { return optimal_information(d) - receiver_information(d); };
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace eavesim::closed_form
