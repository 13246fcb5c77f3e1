#include "eavesim/quantum_core.hpp"

#include "support/dense_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

using namespace eavesim;

namespace {

constexpr double kTol = 1e-12;

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& v : a) {
    v = g(rng);
    norm += v * v;
  }
  for (auto& v : a) v /= std::sqrt(norm);
  return StateVector(n, a);
}

StateVector from_symbols(const std::vector<Symbol>& symbols) {
  std::vector<QubitAmplitudes> q;
  for (Symbol s : symbols) q.push_back(ket(s));
  return StateVector::product(q);
}

void check_close(const StateVector& a, const StateVector& b, double tol = kTol) {
  REQUIRE(a.dimension() == b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_SUITE("quantum_core") {

TEST_CASE("basis change is an orthogonal involution") {
  for (Symbol s : {Symbol::x, Symbol::y, Symbol::u, Symbol::v}) {
    const QubitAmplitudes k = ket(s);
    const QubitAmplitudes twice = change_basis(change_basis(k));
    CHECK(std::abs(twice.x - k.x) < kTol);
    CHECK(std::abs(twice.y - k.y) < kTol);
  }
  const QubitAmplitudes u = change_basis(ket(Symbol::x));
  CHECK(std::abs(u.x - ket(Symbol::u).x) < kTol);
  CHECK(std::abs(u.y - ket(Symbol::u).y) < kTol);
  CHECK(conjugate(Basis::xy) == Basis::uv);
  CHECK(basis_of(Symbol::v) == Basis::uv);
}

TEST_CASE("CNOT truth table in the x-y basis") {
  // qubit 0 is the control, qubit 1 the target; basis_state index bit k is qubit k
  CHECK(apply_cnot_xy(from_symbols({Symbol::x, Symbol::x}), 0, 1) == from_symbols({Symbol::x, Symbol::x}));
  CHECK(apply_cnot_xy(from_symbols({Symbol::y, Symbol::x}), 0, 1) == from_symbols({Symbol::y, Symbol::y}));
  CHECK(apply_cnot_xy(from_symbols({Symbol::y, Symbol::y}), 0, 1) == from_symbols({Symbol::y, Symbol::x}));
  CHECK(apply_cnot_xy(from_symbols({Symbol::x, Symbol::y}), 0, 1) == from_symbols({Symbol::x, Symbol::y}));
}

TEST_CASE("CNOT on |u>|x> creates a Bell pair") {
  const StateVector bell = apply_cnot_xy(from_symbols({Symbol::u, Symbol::x}), 0, 1);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(bell[0b00] - h) < kTol);
  CHECK(std::abs(bell[0b11] - h) < kTol);
  CHECK(bell[0b01] == 0.0);
  CHECK(bell[0b10] == 0.0);
}

TEST_CASE("CNOT in the u-v basis") {
  // |uv> -> |vv>, |uu> -> |uu>, |vu> -> |vu>, |vv> -> |uv> with qubit 1 as the u-v control
  const std::vector<std::pair<std::vector<Symbol>, std::vector<Symbol>>> table{
      {{Symbol::u, Symbol::v}, {Symbol::v, Symbol::v}},
      {{Symbol::u, Symbol::u}, {Symbol::u, Symbol::u}},
      {{Symbol::v, Symbol::u}, {Symbol::v, Symbol::u}},
      {{Symbol::v, Symbol::v}, {Symbol::u, Symbol::v}}};
  for (const auto& [in, out] : table) {
    check_close(apply_cnot_uv(from_symbols(in), 1, 0), from_symbols(out));
    check_close(apply_cnot_xy(from_symbols(in), 0, 1), from_symbols(out));
  }
}

TEST_CASE("gates match dense Kronecker-product matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const StateVector s = random_state(n, rng);
    const oracle::Vec psi(s.amplitudes().begin(), s.amplitudes().end());
    const int c = static_cast<int>(rng() % n);
    int t = static_cast<int>(rng() % n);
    if (t == c) t = (t + 1) % n;

    const oracle::Vec want_xy = oracle::cnot(n, c, t) * psi;
    const oracle::Vec want_uv = oracle::cnot_conjugate_frame(n, c, t) * psi;
    const StateVector got_xy = apply_cnot_xy(s, c, t);
    const StateVector got_uv = apply_cnot_uv(s, c, t);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      CHECK(std::abs(got_xy[i] - want_xy[i]) < kTol);
      CHECK(std::abs(got_uv[i] - want_uv[i]) < kTol);
    }
  }
}

TEST_CASE("gate properties on random states") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const StateVector s = random_state(n, rng);
    const int c = static_cast<int>(rng() % n);
    const int t = (c + 1 + static_cast<int>(rng() % (n - 1))) % n;

    // involution is exact, so is the control/target exchange identity
    CHECK(apply_cnot_xy(apply_cnot_xy(s, c, t), c, t) == s);
    CHECK(apply_cnot_uv(apply_cnot_uv(s, c, t), c, t) == s);
    CHECK(apply_cnot_uv(s, c, t) == apply_cnot_xy(s, t, c));
    CHECK(std::abs(apply_cnot_xy(s, c, t).norm_squared() - 1.0) < kTol);

    StateVector rotated = s;
    rotated.apply_basis_change(c);
    rotated.apply_basis_change(c);
    check_close(rotated, s);
  }
}

TEST_CASE("gate argument errors") {
  StateVector s(3);
  CHECK_THROWS_AS(s.apply_cnot_xy(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(s.apply_cnot_xy(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(s.apply_cnot_uv(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(s.apply_basis_change(5), std::invalid_argument);
}

TEST_CASE("construction validates size, norm and capacity") {
  CHECK_THROWS_AS(StateVector(2, std::vector<double>{1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(1, std::vector<double>{1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(22), CapacityError);
  CHECK_THROWS_AS(StateVector(5, 4), CapacityError);
  CHECK_NOTHROW(StateVector(5, 5));
  CHECK_THROWS_AS(StateVector::basis_state(2, 4), std::invalid_argument);
}

TEST_CASE("inner products") {
  std::mt19937_64 rng(3);
  const StateVector s = random_state(4, rng);
  CHECK(std::abs(inner_product(s, s) - 1.0) < kTol);
  CHECK(inner_product(from_symbols({Symbol::x}), from_symbols({Symbol::y})) == 0.0);
  CHECK(std::abs(inner_product(from_symbols({Symbol::u}), from_symbols({Symbol::v}))) < kTol);
  CHECK_THROWS_AS(inner_product(StateVector(2), StateVector(3)), std::invalid_argument);
}

TEST_CASE("combine forms normalized superpositions") {
  const StateVector u = combine(from_symbols({Symbol::x, Symbol::y}), from_symbols({Symbol::y, Symbol::y}), +1);
  check_close(u, from_symbols({Symbol::u, Symbol::y}));
  const StateVector v = combine(from_symbols({Symbol::x, Symbol::y}), from_symbols({Symbol::y, Symbol::y}), -1);
  check_close(v, from_symbols({Symbol::v, Symbol::y}));
}

TEST_CASE("partial trace of simple states") {
  SUBCASE("product state factorizes") {
    const DensityMatrix rho = partial_trace(from_symbols({Symbol::x, Symbol::y}), std::vector<int>{1});
    CHECK(rho(0, 0) == 0.0);
    CHECK(rho(1, 1) == 1.0);
    CHECK(rho(0, 1) == 0.0);
  }
  SUBCASE("Bell pair marginal is maximally mixed") {
    const StateVector bell = apply_cnot_xy(from_symbols({Symbol::u, Symbol::x}), 0, 1);
    const DensityMatrix rho = partial_trace(bell, std::vector<int>{0});
    CHECK(std::abs(rho(0, 0) - 0.5) < kTol);
    CHECK(std::abs(rho(1, 1) - 0.5) < kTol);
    CHECK(std::abs(rho(0, 1)) < kTol);
  }
  SUBCASE("errors") {
    const StateVector s(3);
    CHECK_THROWS_AS(partial_trace(s, std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(s, std::vector<int>{3}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(s, std::vector<int>{1, 1}), std::invalid_argument);
  }
}

TEST_CASE("partial trace agrees with explicit outer-product summation") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const StateVector s = random_state(n, rng);
    std::vector<int> keep;
    for (int q = 0; q < n; ++q)
      if (rng() % 2) keep.push_back(q);
    if (keep.empty()) keep.push_back(static_cast<int>(rng() % n));

    const DensityMatrix rho = partial_trace(s, keep);
    const oracle::Mat want = oracle::reduce({s.amplitudes().begin(), s.amplitudes().end()}, n, keep);
    REQUIRE(rho.dimension() == want.dim);
    for (std::size_t r = 0; r < want.dim; ++r)
      for (std::size_t c = 0; c < want.dim; ++c) CHECK(std::abs(rho(r, c) - want(r, c)) < kTol);
    CHECK(std::abs(rho.trace() - 1.0) < kTol);
    CHECK(rho.asymmetry() < kTol);
    CHECK(rho.eigenvalues().front() > -kTol);
  }
}

TEST_CASE("full-register partial trace is a pure state") {
  std::mt19937_64 rng(23);
  const StateVector s = random_state(4, rng);
  const DensityMatrix rho = partial_trace(s, std::vector<int>{0, 1, 2, 3});
  const auto ev = rho.eigenvalues();
  CHECK(std::abs(ev.back() - 1.0) < kEigenTolerance);
  for (std::size_t k = 0; k + 1 < ev.size(); ++k) CHECK(std::abs(ev[k]) < kEigenTolerance);
  CHECK(rho.idempotency_defect() < kEigenTolerance);
}

TEST_CASE("projector measurements") {
  std::mt19937_64 rng(29);
  const StateVector s = random_state(4, rng);
  const int pair[2] = {1, 3};

  CHECK(std::abs(measure_projector(s, DensityMatrix::identity(2), pair) - 1.0) < kTol);

  // a complete rank-one family sums to one
  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<double> e(4, 0.0);
    e[k] = 1.0;
    const double p = measure_projector(s, DensityMatrix::outer(e), pair);
    CHECK(std::abs(p - measure_rank_one(s, e, pair)) < kTol);
    total += p;
  }
  CHECK(std::abs(total - 1.0) < kTol);

  // rank-one probabilities equal the squared norm of the projected amplitudes
  const std::vector<double> w{0.5, 0.5, 0.5, -0.5};
  const oracle::Vec psi(s.amplitudes().begin(), s.amplitudes().end());
  oracle::Mat local(4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) local(r, c) = w[r] * w[c];
  // embed the 4x4 operator on qubits {1, 3}
  oracle::Mat full(16);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) {
      const std::size_t rest_i = i & ~std::size_t{0b1010};
      const std::size_t rest_j = j & ~std::size_t{0b1010};
      if (rest_i != rest_j) continue;
      const std::size_t li = ((i >> 1) & 1U) | (((i >> 3) & 1U) << 1);
      const std::size_t lj = ((j >> 1) & 1U) | (((j >> 3) & 1U) << 1);
      full(i, j) = local(li, lj);
    }
  CHECK(std::abs(measure_rank_one(s, w, pair) - oracle::expectation(psi, full)) < kTol);
}

TEST_CASE("projector validation") {
  const StateVector s(3);
  const int one[1] = {0};
  const int two[2] = {0, 2};
  CHECK_THROWS_AS(measure_projector(s, DensityMatrix::identity(2), one), std::invalid_argument);
  DensityMatrix not_idempotent(1);
  not_idempotent(0, 0) = 0.5;
  CHECK_THROWS_AS(measure_projector(s, not_idempotent, one), std::invalid_argument);
  DensityMatrix not_symmetric(1);
  not_symmetric(0, 0) = 1.0;
  not_symmetric(0, 1) = 1.0;
  CHECK_THROWS_AS(measure_projector(s, not_symmetric, one), std::invalid_argument);
  const std::vector<double> unnormalized{1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(measure_rank_one(s, unnormalized, two), std::invalid_argument);

  const LocalProjector overlap[2] = {{DensityMatrix::identity(1), {0}}, {DensityMatrix::identity(2), {0, 1}}};
  CHECK_THROWS_AS(measure_projectors(s, overlap), std::invalid_argument);
}

}  // TEST_SUITE
