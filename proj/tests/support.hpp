#pragma once

// Fixtures and independent reference computations shared by the unit tests
// and the acceptance binary. Nothing here calls the library's evaluation
// code; the references work on dense matrices with plain loops.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "smoothcount/hypergraph.hpp"
#include "smoothcount/model.hpp"

namespace testing {

using smoothcount::Hypergraph;
using smoothcount::SparseSystem;
using smoothcount::Triplet;

inline Hypergraph k4() { return Hypergraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

inline Hypergraph fano() {
  return Hypergraph(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

inline Hypergraph k4_minus_edge() { return Hypergraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

/// Dense m x n matrix from rows given as nested lists.
inline SparseSystem dense_system(const std::vector<std::vector<double>>& a, std::vector<double> beta,
                                 std::vector<double> gamma) {
  std::vector<Triplet> t;
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] != 0.0) t.push_back({i, j, a[i][j]});
    }
  }
  return SparseSystem(m, n, t, std::move(beta), std::move(gamma));
}

inline SparseSystem zero_system(std::size_t m, std::size_t n) {
  return SparseSystem(m, n, {}, std::vector<double>(m, 0.0), std::vector<double>(m, 1.0));
}

/// exp(-sum_i gamma_i (sum_j a_ij x_j - b_i)^2) from a dense copy.
inline double weight(const SparseSystem& s, const std::vector<double>& dense, const std::vector<int>& x) {
  double pen = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double r = -s.beta()[i];
    for (std::size_t j = 0; j < s.cols(); ++j) r += dense[i * s.cols() + j] * x[j];
    pen += s.gamma()[i] * r * r;
  }
  return std::exp(-pen);
}

/// Calls f(x) for every 0-1 vector of length n, counting in binary.
template <class F>
void for_each_cube_point(std::size_t n, F&& f) {
  std::vector<int> x(n, 0);
  while (true) {
    f(static_cast<const std::vector<int>&>(x));
    std::size_t j = 0;
    while (j < n && x[j] == 1) x[j++] = 0;
    if (j == n) return;
    x[j] = 1;
  }
}

/// Reference expectation by direct summation of probability times weight.
inline double ref_expectation(const SparseSystem& s, const std::vector<double>& p) {
  const std::vector<double> dense = s.dense();
  double total = 0.0;
  for_each_cube_point(s.cols(), [&](const std::vector<int>& x) {
    double prob = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) prob *= x[j] ? p[j] : 1.0 - p[j];
    total += prob * weight(s, dense, x);
  });
  return total;
}

/// Coefficients a_0..a_n of t -> P(t x), grouped by Hamming weight.
inline std::vector<double> ref_coefficients(const SparseSystem& s, const std::vector<double>& x) {
  const std::vector<double> dense = s.dense();
  std::vector<double> a(s.cols() + 1, 0.0);
  for_each_cube_point(s.cols(), [&](const std::vector<int>& xi) {
    double mono = 1.0;
    std::size_t k = 0;
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (xi[j]) {
        mono *= x[j];
        ++k;
      }
    }
    a[k] += mono * weight(s, dense, xi);
  });
  return a;
}

/// P(z) at complex z by direct summation.
inline std::complex<double> ref_polynomial(const SparseSystem& s, const std::vector<std::complex<double>>& z) {
  const std::vector<double> dense = s.dense();
  std::complex<double> total = 0.0;
  for_each_cube_point(s.cols(), [&](const std::vector<int>& x) {
    std::complex<double> mono = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j]) mono *= z[j];
    }
    total += mono * weight(s, dense, x);
  });
  return total;
}

/// Number of exact 0-1 solutions (integer data assumed).
inline std::uint64_t ref_count(const SparseSystem& s) {
  const std::vector<double> dense = s.dense();
  std::uint64_t count = 0;
  for_each_cube_point(s.cols(), [&](const std::vector<int>& x) {
    bool ok = true;
    for (std::size_t i = 0; i < s.rows() && ok; ++i) {
      double r = -s.beta()[i];
      for (std::size_t j = 0; j < s.cols(); ++j) r += dense[i * s.cols() + j] * x[j];
      ok = std::abs(r) < 1e-9;
    }
    if (ok) ++count;
  });
  return count;
}

/// Geometric-variable expectation by direct double summation over
/// Z_+^n truncated at `cutoff` per coordinate.
inline double ref_geometric(const SparseSystem& s, const std::vector<double>& p, int cutoff) {
  const std::size_t n = s.cols();
  const std::vector<double> dense = s.dense();
  std::vector<int> k(n, 0);
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    double pen = 0.0;
    for (std::size_t j = 0; j < n; ++j) prob *= (1.0 - p[j]) * std::pow(p[j], k[j]);
    for (std::size_t i = 0; i < s.rows(); ++i) {
      double r = -s.beta()[i];
      for (std::size_t j = 0; j < n; ++j) r += dense[i * n + j] * k[j];
      pen += s.gamma()[i] * r * r;
    }
    total += prob * std::exp(-pen);
    std::size_t j = 0;
    while (j < n && k[j] == cutoff) k[j++] = 0;
    if (j == n) return total;
    ++k[j];
  }
}

/// Pascal's triangle rows 0..n.
inline std::vector<std::vector<std::uint64_t>> pascal(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> rows(n + 1);
  for (std::size_t r = 0; r <= n; ++r) {
    rows[r].assign(r + 1, 1);
    for (std::size_t c = 1; c < r; ++c) rows[r][c] = rows[r - 1][c - 1] + rows[r - 1][c];
  }
  return rows;
}

/// Ising partition function over {-1,1}^n from a dense coupling matrix.
inline double ref_ising(const std::vector<double>& g, const std::vector<double>& f) {
  const std::size_t n = f.size();
  double total = 0.0;
  for_each_cube_point(n, [&](const std::vector<int>& x) {
    double e = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double sk = 2.0 * x[k] - 1.0;
      e += f[k] * sk;
      for (std::size_t j = k + 1; j < n; ++j) e += g[k * n + j] * sk * (2.0 * x[j] - 1.0);
    }
    total += std::exp(e);
  });
  return total;
}

/// Union of `layers` random partitions of n variables into blocks of
/// four; every block must contain exactly one chosen variable. p = 1/4 is a
/// relative-interior point, so the maximum-entropy problem is feasible.
inline SparseSystem block_design(std::size_t n, std::size_t layers, double gamma, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  std::vector<Triplet> t;
  const std::size_t blocks = n / 4;
  for (std::size_t layer = 0; layer < layers; ++layer) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t j = 0; j < n; ++j) t.push_back({layer * blocks + j / 4, perm[j], 1.0});
  }
  const std::size_t m = layers * blocks;
  return SparseSystem(m, n, t, std::vector<double>(m, 1.0), std::vector<double>(m, gamma));
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing
