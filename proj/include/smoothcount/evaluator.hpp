#pragma once

#include <optional>

#include "smoothcount/interpolation.hpp"
#include "smoothcount/model.hpp"

namespace smoothcount {

/// Outcome of a smoothed-expectation evaluation. Values are kept in log space.
struct EvaluationResult {
  double log_value = 0.0;
  double epsilon = 0.0;      ///< requested relative error
  double delta = 0.0;        ///< polydisc parameter used (0 when uncertified)
  std::size_t degree = 0;    ///< highest Taylor degree used
  double tail_bound = 0.0;   ///< bound on the log-space truncation error
  bool certified = false;
  bool exact = false;        ///< all coefficients summed, no truncation
  bool geometric = false;
  /// Geometric variables reuse the 0-1 polydisc radii; the guarantee rests
  /// on that assumption.
  bool radius_assumption = false;
  double terms = 0.0;

  double value() const;
};

struct EvalOptions {
  ComputeOptions compute;
  std::optional<double> delta;  ///< override the automatically chosen delta
  bool force = false;           ///< compute without a certificate (no guarantee)
};

/// Safety margin subtracted from the largest admissible delta.
inline constexpr double kDeltaSafety = 1e-6;

/// E exp(-sum_i gamma_i (l_i(xi) - b_i)^2) for independent Bernoulli(p_j).
/// Throws CertificationError (with the binding constraint) when no
/// admissible delta exists and `force` is off; WorkLimitError on overflow of
/// the term budget.
EvaluationResult smoothed_expectation(const SparseSystem& system, const ProbabilityVector& p, double epsilon,
                                      const EvalOptions& options = {});

/// E[exp(-penalty) | fixed coordinates]; not weighted by the probability of
/// the fixing.
EvaluationResult conditional_expectation(const SparseSystem& system, const ProbabilityVector& p,
                                         const PartialAssignment& assignment, double epsilon,
                                         const EvalOptions& options = {});

/// Same expectation for independent geometric variables,
/// P(xi_j = k) = (1 - p_j) p_j^k.
EvaluationResult smoothed_expectation_geometric(const SparseSystem& system, const ProbabilityVector& p,
                                                double epsilon, const EvalOptions& options = {});

/// p restricted to the free coordinates of an assignment.
ProbabilityVector restrict(const ProbabilityVector& p, const PartialAssignment& assignment);

}  // namespace smoothcount
