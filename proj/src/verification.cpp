#include "eavesim/verification.hpp"

#include "eavesim/closed_form.hpp"
#include "eavesim/information_analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace eavesim {

namespace {

class Family {
 public:
  Family(std::string name, double tolerance) : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  // `point` is only rendered when this deviation becomes the worst so far.
  void record(double deviation, const std::function<std::string()>& point) {
    if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
    if (result_.checks == 0 || deviation > result_.max_deviation) {
      result_.max_deviation = deviation;
      result_.worst_point = point();
    }
    ++result_.checks;
  }

  FamilyResult finish() {
    result_.passed = result_.max_deviation <= result_.tolerance;
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  FamilyResult result_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<double> grid(double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::lround(0.5 / step));
  for (int k = 0; k <= count; ++k) out.push_back(k * step);
  return out;
}

std::string describe(std::span<const double> d, const char* label = "d") {
  std::ostringstream os;
  os.precision(6);
  os << label << "=(";
  for (std::size_t j = 0; j < d.size(); ++j) os << (j ? ", " : "") << d[j];
  os << ")";
  return os.str();
}

std::string describe(const AttackScenario& s) {
  std::ostringstream os;
  os.precision(6);
  os << to_string(s.signal_basis) << " eves=[";
  for (std::size_t j = 0; j < s.eves.size(); ++j)
    os << (j ? ", " : "") << "(delta_uv=" << s.eves[j].delta_uv << ", d_xy=" << s.eves[j].d_xy << ")";
  os << "]";
  return os.str();
}

AttackScenario scenario_for(std::span<const double> d, const VerifyOptions& options,
                            Basis basis = Basis::xy) {
  AttackScenario s = symmetric_scenario(d, basis);
  s.fault = options.fault;
  return s;
}

// Every point of {grid}^n in lexicographic order.
void for_each_grid_point(int n, const std::vector<double>& axis,
                         const std::function<void(std::span<const double>)>& fn) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> point(static_cast<std::size_t>(n));
  while (true) {
    for (std::size_t j = 0; j < idx.size(); ++j) point[j] = axis[idx[j]];
    fn(point);
    std::size_t j = idx.size();
    while (j > 0) {
      --j;
      if (++idx[j] < axis.size()) break;
      idx[j] = 0;
      if (j == 0) return;
    }
    if (idx.empty()) return;
  }
}

FamilyResult single_eve_optimality(const VerifyOptions& options) {
  Family fam("single_eve_optimality", kExactTolerance);
  for (double d : grid(0.05)) {
    const double point[1] = {d};
    const auto report = analyze(scenario_for(point, options));
    const double dev = std::max({std::abs(report.eves[0].mutual_information -
                                          closed_form::optimal_information(d)),
                                 std::abs(report.d_b_uv - d), std::abs(report.d_b_xy - d)});
    fam.record(dev, [&] { return describe(point); });
  }
  return fam.finish();
}

void check_gains(Family& fam, std::span<const double> d, const VerifyOptions& options) {
  const auto report = analyze(scenario_for(d, options));
  const closed_form::SymmetricDisturbances sd({d.begin(), d.end()});
  const auto g = closed_form::gains(sd);
  const auto mi = closed_form::mutual_informations(sd);
  double dev = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto& eve = report.eves[j];
    for (int l = 0; l < kOutcomes; ++l)
      if (eve.table.reachable[l]) dev = std::max(dev, std::abs(eve.table.gain[l] - g[j]));
    dev = std::max({dev, std::abs(eve.gain - g[j]), std::abs(eve.mutual_information - mi[j])});
  }
  fam.record(dev, [&] { return describe(d); });
}

void check_bob(Family& fam, std::span<const double> d, const VerifyOptions& options) {
  const auto report = analyze(scenario_for(d, options));
  const double expected =
      closed_form::bob_error_recursive(closed_form::SymmetricDisturbances({d.begin(), d.end()}));
  const double dev = std::max(std::abs(report.d_b_xy - expected), std::abs(report.d_b_uv - expected));
  fam.record(dev, [&] { return describe(d); });
}

FamilyResult gain_product_law(const VerifyOptions& options) {
  Family fam("gain_product_law", kExactTolerance);
  for_each_grid_point(2, grid(0.05), [&](auto d) { check_gains(fam, d, options); });
  for_each_grid_point(3, grid(0.1), [&](auto d) { check_gains(fam, d, options); });
  return fam.finish();
}

FamilyResult bob_error_formula(const VerifyOptions& options) {
  Family fam("bob_error_formula", kExactTolerance);
  for_each_grid_point(2, grid(0.05), [&](auto d) { check_bob(fam, d, options); });
  for_each_grid_point(3, grid(0.1), [&](auto d) { check_bob(fam, d, options); });
  return fam.finish();
}

std::vector<double> random_disturbances(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(0.0, 0.5);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (auto& dj : d) dj = dist(rng);
  return d;
}

FamilyResult recursion_forms(const VerifyOptions& options, std::mt19937_64& rng) {
  Family fam("recursion_forms", kExactTolerance);
  std::uniform_int_distribution<int> pick_n(1, std::max(1, options.max_eves));
  for (int s = 0; s < options.samples; ++s) {
    const auto d = random_disturbances(rng, pick_n(rng));
    const closed_form::SymmetricDisturbances sd(d);
    const double rec = closed_form::bob_error_recursive(sd);
    const double dev = std::max(std::abs(closed_form::bob_error_recursive_literal(d) - rec),
                                std::abs(closed_form::bob_error_product(sd) - rec));
    fam.record(dev, [&] { return describe(d); });
  }
  return fam.finish();
}

FamilyResult brute_force_recursion(const VerifyOptions& options, std::mt19937_64& rng) {
  Family fam("brute_force_recursion", kExactTolerance);
  for (int n = 1; n <= options.brute_force_max_eves; ++n) {
    for (int draw = 0; draw < options.brute_force_draws; ++draw) {
      const auto d = random_disturbances(rng, n);
      const auto report = analyze(scenario_for(d, options));
      const closed_form::SymmetricDisturbances sd(d);
      const double product = closed_form::bob_error_product(sd);
      const double literal = closed_form::bob_error_recursive_literal(d);
      const double dev = std::max({std::abs(report.d_b_xy - product), std::abs(report.d_b_uv - product),
                                   std::abs(report.d_b_uv - literal)});
      fam.record(dev, [&] { return describe(d); });
    }
  }
  return fam.finish();
}

double structural_deviation(const AttackScenario& scenario) {
  const auto states = build_joint_states(scenario);
  double dev = std::max({std::abs(states.first.norm_squared() - 1.0),
                         std::abs(states.second.norm_squared() - 1.0),
                         std::abs(inner_product(states.first, states.second))});

  // The other basis's signals: linear combination versus running the circuit
  // on that input directly.
  const bool xy = scenario.signal_basis == Basis::xy;
  for (Symbol s : xy ? std::array{Symbol::u, Symbol::v} : std::array{Symbol::x, Symbol::y}) {
    StateVector direct = initial_register(ket(s), scenario);
    run_attack_circuit(direct, scenario);
    const auto combined = states.signal(s);
    for (std::size_t i = 0; i < direct.dimension(); ++i)
      dev = std::max(dev, std::abs(direct[i] - combined[i]));
  }

  bool symmetric = true;
  for (const auto& eve : scenario.eves) symmetric = symmetric && eve.symmetric();

  for (int j = 1; j <= states.num_eves; ++j) {
    const auto povm = povm_for_eve(states, j);
    DensityMatrix sum(2);
    for (const auto& e : povm.elements) {
      dev = std::max({dev, e.idempotency_defect(), std::abs(e.trace() - 1.0)});
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) sum(r, c) += e(r, c);
    }
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) dev = std::max(dev, std::abs(sum(r, c) - (r == c ? 1.0 : 0.0)));

    const auto table = outcome_table(states, povm, j);
    double q_total = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      double p_total = 0.0;
      for (std::size_t l = 0; l < kOutcomes; ++l) p_total += table.p[l][i];
      dev = std::max(dev, std::abs(p_total - 1.0));
    }
    for (std::size_t l = 0; l < kOutcomes; ++l) {
      q_total += table.q[l];
      if (table.reachable[l])
        dev = std::max(dev, std::abs(table.posterior[0][l] + table.posterior[1][l] - 1.0));
    }
    dev = std::max(dev, std::abs(q_total - 1.0));
    if (symmetric) dev = std::max(dev, table.gain_spread());
  }

  const double d_xy = bob_error_rate(states, Basis::xy);
  const double d_uv = bob_error_rate(states, Basis::uv);
  if (symmetric) dev = std::max(dev, std::abs(d_xy - d_uv));
  if (states.num_eves <= 3) {
    dev = std::max({dev, std::abs(decomposed_error_rate(states, Basis::xy) - d_xy),
                    std::abs(decomposed_error_rate(states, Basis::uv) - d_uv)});
  }
  return dev;
}

FamilyResult structural_invariants(const VerifyOptions& options, std::mt19937_64& rng) {
  Family fam("structural_invariants", kExactTolerance);
  const auto check = [&](const AttackScenario& s) {
    fam.record(structural_deviation(s), [&] { return describe(s); });
  };
  for (Basis basis : {Basis::xy, Basis::uv}) {
    for (double d : grid(0.05)) {
      const double point[1] = {d};
      check(scenario_for(point, options, basis));
    }
    for_each_grid_point(2, grid(0.1), [&](auto d) { check(scenario_for(d, options, basis)); });
    for (int draw = 0; draw < 10; ++draw) check(scenario_for(random_disturbances(rng, 3), options, basis));
  }
  // Asymmetric strategies: only the basis-independent invariants apply.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    for (int draw = 0; draw < 10; ++draw) {
      AttackScenario s;
      s.fault = options.fault;
      for (int j = 0; j < n; ++j) s.eves.push_back({unit(rng), unit(rng)});
      check(s);
    }
  }
  return fam.finish();
}

FamilyResult capacity_check(const VerifyOptions& options, std::mt19937_64& rng) {
  Family fam("capacity_check", kExactTolerance);
  for (int draw = 0; draw < 3; ++draw) {
    const auto d = random_disturbances(rng, options.max_eves);
    const auto report = analyze(scenario_for(d, options));
    const closed_form::SymmetricDisturbances sd(d);
    const auto g = closed_form::gains(sd);
    double dev = std::abs(report.d_b_uv - closed_form::bob_error_recursive(sd));
    for (std::size_t j = 0; j < g.size(); ++j) dev = std::max(dev, std::abs(report.eves[j].gain - g[j]));
    fam.record(dev, [&] { return describe(d); });
  }
  return fam.finish();
}

FamilyResult crossover_threshold() {
  Family fam("crossover_threshold", 1e-6);
  const double root = closed_form::crossover_disturbance();
  fam.record(std::abs(root - (0.5 - std::numbers::sqrt2 / 4.0)), [&] {
    std::ostringstream os;
    os.precision(12);
    os << "D*=" << root;
    return os.str();
  });
  return fam.finish();
}

FamilyResult crossover_residual() {
  Family fam("crossover_residual", kEigenTolerance);
  const double root = closed_form::crossover_disturbance();
  fam.record(std::abs(closed_form::optimal_information(root) - closed_form::receiver_information(root)),
             [] { return std::string("I_opt(D*) - I_AB(D*)"); });
  return fam.finish();
}

}  // namespace

bool VerificationSummary::passed() const {
  return std::all_of(families.begin(), families.end(), [](const auto& f) { return f.passed; });
}

const FamilyResult* VerificationSummary::find(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}

VerificationSummary run_verification(const VerifyOptions& options, std::uint64_t seed) {
  if (options.max_eves < 1 || options.brute_force_max_eves < 1 || options.samples < 0)
    throw std::invalid_argument("verification sizes must be positive");
  std::mt19937_64 rng(seed);
  VerificationSummary summary;
  summary.families.push_back(single_eve_optimality(options));
  summary.families.push_back(gain_product_law(options));
  summary.families.push_back(bob_error_formula(options));
  summary.families.push_back(recursion_forms(options, rng));
  summary.families.push_back(brute_force_recursion(options, rng));
  summary.families.push_back(structural_invariants(options, rng));
  summary.families.push_back(capacity_check(options, rng));
  summary.families.push_back(crossover_threshold());
  summary.families.push_back(crossover_residual());
  return summary;
}

}  // namespace eavesim
