#pragma once

// Dense matrix reference simulator for small registers. It builds every gate
// as an explicit 2^N x 2^N matrix from Kronecker products and never calls the
// library, so it can serve as an independent check of the statevector code.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

struct Mat {
  std::size_t dim = 1;
  std::vector<double> a{1.0};

  explicit Mat(std::size_t d = 1) : dim(d), a(d * d, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Mat identity(std::size_t d) {
  Mat m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

inline Mat mat2(double a00, double a01, double a10, double a11) {
  Mat m(2);
  m(0, 0) = a00;
  m(0, 1) = a01;
  m(1, 0) = a10;
  m(1, 1) = a11;
  return m;
}

inline Mat kron(const Mat& hi, const Mat& lo) {
  Mat m(hi.dim * lo.dim);
  for (std::size_t r1 = 0; r1 < hi.dim; ++r1)
    for (std::size_t c1 = 0; c1 < hi.dim; ++c1)
      for (std::size_t r2 = 0; r2 < lo.dim; ++r2)
        for (std::size_t c2 = 0; c2 < lo.dim; ++c2)
          m(r1 * lo.dim + r2, c1 * lo.dim + c2) = hi(r1, c1) * lo(r2, c2);
  return m;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat m(x.dim);
  for (std::size_t r = 0; r < x.dim; ++r)
    for (std::size_t k = 0; k < x.dim; ++k)
      for (std::size_t c = 0; c < x.dim; ++c) m(r, c) += x(r, k) * y(k, c);
  return m;
}

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat m(x.dim);
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
  return m;
}

inline Vec operator*(const Mat& m, const Vec& v) {
  Vec out(m.dim, 0.0);
  for (std::size_t r = 0; r < m.dim; ++r)
    for (std::size_t c = 0; c < m.dim; ++c) out[r] += m(r, c) * v[c];
  return out;
}

inline const Mat kI = identity(2);
inline const Mat kX = mat2(0, 1, 1, 0);
inline const Mat kP0 = mat2(1, 0, 0, 0);
inline const Mat kP1 = mat2(0, 0, 0, 1);
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline const Mat kH = mat2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);

// ops[k] acts on qubit k; qubit 0 is the least significant index bit.
inline Mat tensor(const std::vector<Mat>& ops) {
  Mat m = identity(1);
  for (const auto& op : ops) m = kron(op, m);
  return m;
}

inline Mat single(int n, int qubit, const Mat& op) {
  std::vector<Mat> ops(static_cast<std::size_t>(n), kI);
  ops[static_cast<std::size_t>(qubit)] = op;
  return tensor(ops);
}

// |0><0|_c (x) 1 + |1><1|_c (x) X_t
inline Mat cnot(int n, int control, int target) {
  std::vector<Mat> keep(static_cast<std::size_t>(n), kI);
  std::vector<Mat> flip(static_cast<std::size_t>(n), kI);
  keep[static_cast<std::size_t>(control)] = kP0;
  flip[static_cast<std::size_t>(control)] = kP1;
  flip[static_cast<std::size_t>(target)] = kX;
  return tensor(keep) + tensor(flip);
}

// CNOT whose control and target act in the u-v frame: H_c H_t CNOT H_c H_t.
inline Mat cnot_conjugate_frame(int n, int control, int target) {
  const Mat h = single(n, control, kH) * single(n, target, kH);
  return h * cnot(n, control, target) * h;
}

inline Vec product(const std::vector<std::pair<double, double>>& qubits) {
  Vec v{1.0};
  for (const auto& [x, y] : qubits) {
    Vec next(v.size() * 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
      next[i] = v[i] * x;
      next[v.size() + i] = v[i] * y;
    }
    v = std::move(next);
  }
  return v;
}

struct Eve {
  double delta_uv;
  double d_xy;
};

// Post-attack register for a signal qubit (sx, sy). Each gate is a dense matrix;
// u-v signals use frame-conjugated CNOTs rather than exchanged wires.
inline Vec attack(std::pair<double, double> signal, const std::vector<Eve>& eves, bool uv_circuit) {
  std::vector<std::pair<double, double>> qubits{signal};
  for (const auto& e : eves) {
    qubits.emplace_back(std::sqrt(1 - e.delta_uv), std::sqrt(e.delta_uv));
    qubits.emplace_back(std::sqrt(1 - e.d_xy), std::sqrt(e.d_xy));
  }
  const int n = static_cast<int>(qubits.size());
  Vec state = product(qubits);
  for (int j = 1; j <= static_cast<int>(eves.size()); ++j) {
    const int e = 2 * j - 1;
    const int f = 2 * j;
    if (!uv_circuit) {
      state = cnot(n, 0, e) * state;
      state = cnot(n, f, 0) * state;
    } else {
      // signal -> e and f -> signal, with both gates acting in the u-v frame
      state = cnot_conjugate_frame(n, 0, e) * state;
      state = cnot_conjugate_frame(n, f, 0) * state;
    }
  }
  return state;
}

// Reduced density matrix by explicit outer-product summation. Local index bit m
// corresponds to keep[m].
inline Mat reduce(const Vec& psi, int n, const std::vector<int>& keep) {
  const std::size_t k = keep.size();
  Mat rho(std::size_t{1} << k);
  auto local = [&](std::size_t i) {
    std::size_t l = 0;
    for (std::size_t m = 0; m < k; ++m)
      if ((i >> keep[m]) & 1U) l |= std::size_t{1} << m;
    return l;
  };
  auto rest = [&](std::size_t i) {
    std::size_t r = i;
    for (int q : keep) r &= ~(std::size_t{1} << q);
    return r;
  };
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (rest(i) == rest(j)) rho(local(i), local(j)) += psi[i] * psi[j];
  return rho;
}

// <psi| op |psi> with op a full-register matrix.
inline double expectation(const Vec& psi, const Mat& op) {
  const Vec image = op * psi;
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += psi[i] * image[i];
  return s;
}

// Probability of an odd number of flips through a cascade of independent
// binary symmetric channels, by enumerating every flip pattern.
inline double odd_flip_probability(const std::vector<double>& p) {
  const std::size_t patterns = std::size_t{1} << p.size();
  double total = 0.0;
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    double w = 1.0;
    int flips = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const bool flip = (mask >> j) & 1U;
      w *= flip ? p[j] : 1.0 - p[j];
      flips += flip ? 1 : 0;
    }
    if (flips % 2 == 1) total += w;
  }
  return total;
}

// (1+z)log2(1+z) + (1-z)log2(1-z), written out with plain log2.
inline double phi(double z) {
  double s = (1 + z) * std::log2(1 + z);
  if (z < 1) s += (1 - z) * std::log2(1 - z);
  return s;
}

inline double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace oracle
