#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include "smoothcount/interpolation.hpp"
#include "smoothcount/model.hpp"

namespace smoothcount {

// Exhaustive reference computations. Intentionally naive: every routine
// walks all 2^n (or 2^m) points, in fixed chunks combined in order.

struct OracleOptions {
  std::size_t cap = 24;  ///< maximum n (or m for the sign sum)
  std::size_t threads = 1;
};

/// P(z) = sum_{x in {0,1}^n} z^x exp(-penalty(x)).
std::complex<double> brute_force_P(const SparseSystem& system, std::span<const std::complex<double>> z,
                                   const OracleOptions& options = {});

struct OracleValue {
  double value = 0.0;
  double log_value = 0.0;
};

/// E exp(-penalty(xi)) under independent Bernoulli(p), summed term by term.
OracleValue brute_force_expectation(const SparseSystem& system, const ProbabilityVector& p,
                                    const OracleOptions& options = {});

/// Number of 0-1 vectors with |l_i(x) - b_i| <= tolerance for all i.
std::uint64_t count_solutions(const SparseSystem& system, double tolerance = 1e-9,
                              const OracleOptions& options = {});

/// sum_{sigma in {-1,1}^m} prod_j (1 + z_j exp(sqrt(-1) sum_i a_ij sigma_i)).
std::complex<double> proposition31_sum(const SparseSystem& matrix, std::span<const std::complex<double>> z,
                                       const OracleOptions& options = {});

}  // namespace smoothcount
