#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smoothcount/evaluator.hpp"
#include "smoothcount/model.hpp"

namespace smoothcount {

/// sum_j x_j ln(1/x_j) + (1 - x_j) ln(1/(1 - x_j)), with 0 ln(1/0) = 0.
double entropy(std::span<const double> x);

struct MaxEntOptions {
  double tolerance = 1e-10;       ///< on ||A p - b||_inf
  std::size_t max_iterations = 500;
  double ridge = 1e-12;           ///< added to the Newton matrix diagonal
  double boundary = 1e-6;         ///< p_j closer than this to 0 or 1 means no interior point
};

struct MaxEntSolution {
  ProbabilityVector p;
  std::vector<double> dual;     ///< y; p_j = logistic((A^T y)_j)
  double entropy = 0.0;
  double residual = 0.0;        ///< ||A p - b||_inf
  std::size_t iterations = 0;
  std::vector<double> objective_trace;  ///< dual objective per iteration
};

/// Maximum-entropy independent Bernoulli distribution with marginals on
/// {x in [0,1]^n : A x = b}. Damped Newton with Armijo backtracking on
/// the dual  ln(1 + e^{(A^T y)_j}) summed over j, minus <b, y>.
/// Throws SolverError ("no interior point detected or ill-conditioned") on
/// divergence, iteration cap, or a solution on the cube boundary.
MaxEntSolution solve_maxent(const SparseSystem& system, const MaxEntOptions& options = {});

struct CountBound {
  double value = 0.0;
  double log_value = 0.0;
};

/// e^{H(p)}: upper bound on the number of 0-1 points of the polytope.
CountBound count_bound(const MaxEntSolution& solution);

/// e^{H(p)} * smoothed_expectation(system, p, epsilon) * (1 + epsilon).
/// Throws CertificationError when the expectation cannot be certified.
CountBound smoothed_count_bound(const SparseSystem& system, const MaxEntSolution& solution, double epsilon,
                                const EvalOptions& options = {});

}  // namespace smoothcount
