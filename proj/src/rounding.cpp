#include "smoothcount/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smoothcount/error.hpp"

namespace smoothcount {

double RoundingResult::achieved() const { return std::exp(log_achieved); }
double RoundingResult::reference() const { return std::exp(log_reference); }

RoundingResult derandomize(const SparseSystem& system, const ProbabilityVector& p, double epsilon,
                           const RoundingOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  const std::size_t n = system.cols();
  if (p.size() != n) throw InputError("p must have one entry per variable");

  std::vector<std::size_t> order = options.order;
  if (order.empty()) {
    order.resize(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
  } else {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      if (sorted.size() != n || sorted[j] != j) throw InputError("order must be a permutation of 0..n-1");
    }
  }

  EvalOptions eval;
  eval.compute = options.compute;
  eval.force = options.force;

  RoundingResult result;
  result.log_reference = smoothed_expectation(system, p, epsilon, eval).log_value;

  const double step_epsilon = n == 0 ? epsilon : epsilon / static_cast<double>(n * n);
  PartialAssignment fixed;
  for (std::size_t j : order) {
    auto branch = [&](bool value) {
      PartialAssignment trial = fixed;
      trial.fix(j, value);
      try {
        return conditional_expectation(system, p, trial, step_epsilon, eval).log_value;
      } catch (const CertificationError& e) {
        std::ostringstream os;
        os << "certification lost while fixing variable " << j << " after " << fixed.size()
           << " fixed [";
        for (const auto& [idx, v] : fixed.entries()) os << ' ' << idx << '=' << v;
        os << " ]: " << e.what();
        throw CertificationError(os.str());
      }
    };
    const double log_one = branch(true);
    const double log_zero = branch(false);
    // Each estimate is within relative step_epsilon, so a log gap below
    // 2 log(1 + step_epsilon) cannot be resolved; fall back to 0.
    const bool pick_one = log_one - log_zero > 2.0 * std::log1p(step_epsilon);
    fixed.fix(j, pick_one);
  }

  result.x0.assign(n, 0);
  for (const auto& [j, v] : fixed.entries()) result.x0[j] = v ? 1 : 0;
  result.log_achieved = -penalty(system, result.x0);
  return result;
}

double tail_bound(double gamma_min, double epsilon, double rho) {
  if (!(rho > 0.0)) throw InputError("rho must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (!(gamma_min > 0.0)) throw InputError("gamma must be positive");
  return std::exp(-gamma_min * rho) / (1.0 - epsilon);
}

}  // namespace smoothcount
