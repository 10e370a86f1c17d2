#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "smoothcount/model.hpp"

namespace smoothcount {

/// Enumeration and parallelism knobs shared by every evaluation.
struct ComputeOptions {
  std::size_t threads = 1;
  double work_limit = 1e9;  ///< maximum number of enumerated terms
};

/// Taylor coefficients a_0..a_N of g(z) = P(z x) at 0, normalized by a_0.
struct CoefficientSeries {
  double log_a0 = 0.0;                    ///< log g(0) = -sum_i gamma_i b_i^2
  std::vector<double> normalized;         ///< a_k / a_0 for k = 1..N
  std::vector<double> log_normalized;     ///< log(a_k / a_0), -inf for an empty degree
  std::vector<std::uint64_t> terms;       ///< enumerated terms per degree k = 1..N
  std::size_t degree = 0;
};

/// Smallest N with n (1-delta)^(N+1) / ((N+1) delta) <= epsilon / 2, the
/// truncation error of the log-series of a degree-n polynomial without
/// zeros in |z| < 1/(1-delta). Capped at n unless `cap` is false.
std::size_t required_degree(std::size_t n, double delta, double epsilon, bool cap = true);

/// n (1-delta)^(N+1) / ((N+1) delta).
double truncation_bound(std::size_t n, std::size_t degree, double delta);

/// Number of 0-1 vectors with sum in 1..degree, as a double (may exceed 2^64).
double subset_term_count(std::size_t n, std::size_t degree);

/// Number of nonnegative integer vectors with sum in 1..degree.
double composition_term_count(std::size_t n, std::size_t degree);

/// Coefficients by enumerating k-subsets (colex order) for k = 1..degree.
/// Throws WorkLimitError if the total term count exceeds options.work_limit.
CoefficientSeries taylor_coefficients(const SparseSystem& system, std::span<const double> x,
                                      std::size_t degree, const ComputeOptions& options = {});

/// Same for the series over nonnegative integer vectors (geometric variables),
/// enumerating weak compositions of k into n parts.
CoefficientSeries taylor_coefficients_geometric(const SparseSystem& system, std::span<const double> x,
                                                std::size_t degree, const ComputeOptions& options = {});

/// Coefficients b_1..b_N of log g(z) - log g(0) from the normalized
/// coefficients c_k, via k c_k = sum_{j=1..k} j b_j c_{k-j}.
std::vector<double> log_taylor(const CoefficientSeries& series);
std::vector<double> log_taylor(std::span<const double> normalized);

/// Inverse of log_taylor: coefficients c_1..c_N of exp(sum_k b_k z^k).
std::vector<double> exp_series(std::span<const double> log_coefficients);

struct G1Value {
  double log_value = 0.0;   ///< approximation of log g(1)
  std::size_t degree = 0;
  double tail_bound = 0.0;  ///< a-priori bound on |log_value - log g(1)|
  bool exact = false;       ///< every coefficient summed directly; no truncation
  bool certified = false;
  double terms = 0.0;       ///< enumerated terms
};

struct G1Options {
  ComputeOptions compute;
  bool force = false;  ///< evaluate even when the polydisc check fails
};

/// log g(1) = log P(x) for the 0-1 polynomial. Re-verifies the polydisc at
/// (x, delta); throws CertificationError on failure unless forced. When the
/// required degree reaches n the polynomial is summed exactly.
G1Value evaluate_g1(const SparseSystem& system, std::span<const double> x, double delta, double epsilon,
                    const G1Options& options = {});

/// Geometric-variable analogue: log of sum_{x in Z_+^n} z^x exp(-penalty) at z = x.
/// Uses the same polydisc radii.
G1Value evaluate_g1_geometric(const SparseSystem& system, std::span<const double> x, double delta,
                              double epsilon, const G1Options& options = {});

/// Uncertified geometric fallback: sums the power series of g at z = 1
/// directly, stopping once three consecutive degrees each add less than
/// epsilon / 100 relative to the partial sum.
G1Value sum_geometric_directly(const SparseSystem& system, std::span<const double> x, double epsilon,
                               const ComputeOptions& options = {});

}  // namespace smoothcount
