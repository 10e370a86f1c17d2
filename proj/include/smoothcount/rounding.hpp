#pragma once

#include <cstddef>
#include <vector>

#include "smoothcount/evaluator.hpp"
#include "smoothcount/model.hpp"

namespace smoothcount {

struct RoundingOptions {
  ComputeOptions compute;
  /// Variable visiting order; empty means ascending index.
  std::vector<std::size_t> order;
  /// Allow uncertified (exactly enumerated) branch evaluations.
  bool force = false;
};

struct RoundingResult {
  Bits x0;
  double log_achieved = 0.0;   ///< -penalty(x0)
  double log_reference = 0.0;  ///< log of the smoothed expectation before rounding
  double achieved() const;
  double reference() const;
};

/// Method of conditional expectations: fixes variables one at a time to the
/// branch with the larger conditional smoothed expectation, each computed to
/// relative error epsilon / n^2. Branches whose estimates are within their
/// combined error are resolved to 0.
///
/// Throws CertificationError (with the partial assignment reached) if some
/// restricted system cannot be certified.
RoundingResult derandomize(const SparseSystem& system, const ProbabilityVector& p, double epsilon,
                           const RoundingOptions& options = {});

/// e^{-gamma rho} / (1 - epsilon): bound on the probability that a random
/// selection beats the rounded one by rho in penalty.
double tail_bound(double gamma_min, double epsilon, double rho);

}  // namespace smoothcount
