#include "smoothcount/evaluator.hpp"

#include <cmath>
#include <string>

#include "smoothcount/error.hpp"
#include "smoothcount/zerofree.hpp"

namespace smoothcount {
namespace {

void validate_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
}

double log_normalizer(const ProbabilityVector& p) {
  double s = 0.0;
  for (double pj : p.values()) s += std::log1p(-pj);
  return s;
}

// delta for evaluation at x: the override, or the largest admissible value
// less a safety margin. nullopt when nothing is admissible.
std::optional<double> choose_delta(const SparseSystem& system, std::span<const double> x,
                                   const EvalOptions& options) {
  if (options.delta) {
    if (!(*options.delta > 0.0 && *options.delta < 1.0)) throw InputError("delta must lie in (0, 1)");
    return options.delta;
  }
  const std::optional<double> best = max_delta(system, x);
  if (!best) return std::nullopt;
  return *best > 2.0 * kDeltaSafety ? *best - kDeltaSafety : 0.5 * *best;
}

[[noreturn]] void fail_certification(const SparseSystem& system, std::span<const double> x) {
  const PolydiscReport report = certify(system, x, 0.0);
  std::string msg = "no admissible delta: the polydisc condition fails even at rho = x";
  if (report.binding) msg += "; binding constraint " + describe(*report.binding);
  msg += "; " + std::to_string(report.violated.size()) + " constraint(s) violated";
  throw CertificationError(msg);
}

EvaluationResult evaluate(const SparseSystem& system, const ProbabilityVector& p, double epsilon,
                          const EvalOptions& options, bool geometric) {
  validate_epsilon(epsilon);
  if (p.size() != system.cols()) throw InputError("p must have one entry per variable");

  const std::vector<double> x = geometric ? std::vector<double>(p.values().begin(), p.values().end())
                                          : p.odds();
  EvaluationResult result;
  result.epsilon = epsilon;
  result.geometric = geometric;

  std::optional<double> delta;
  if (system.cols() > 0) {
    delta = choose_delta(system, x, options);
    if (!delta && !options.force) fail_certification(system, x);
  }
  G1Options g1;
  g1.compute = options.compute;
  g1.force = options.force;
  // Forced runs without any admissible delta evaluate uncertified; the
  // delta passed below only feeds the (failing) re-check.
  const double used_delta = delta.value_or(0.5);
  const G1Value value = geometric ? evaluate_g1_geometric(system, x, used_delta, epsilon, g1)
                                  : evaluate_g1(system, x, used_delta, epsilon, g1);

  result.log_value = log_normalizer(p) + value.log_value;
  result.delta = value.certified ? used_delta : 0.0;
  result.degree = value.degree;
  result.tail_bound = value.tail_bound;
  result.certified = value.certified;
  result.exact = value.exact;
  result.terms = value.terms;
  result.radius_assumption = geometric && value.certified && !value.exact;
  return result;
}

}  // namespace

double EvaluationResult::value() const { return std::exp(log_value); }

ProbabilityVector restrict(const ProbabilityVector& p, const PartialAssignment& assignment) {
  std::vector<double> out;
  for (std::size_t j : free_indices(p.size(), assignment)) out.push_back(p[j]);
  return ProbabilityVector(std::move(out));
}

EvaluationResult smoothed_expectation(const SparseSystem& system, const ProbabilityVector& p, double epsilon,
                                      const EvalOptions& options) {
  return evaluate(system, p, epsilon, options, false);
}

EvaluationResult conditional_expectation(const SparseSystem& system, const ProbabilityVector& p,
                                         const PartialAssignment& assignment, double epsilon,
                                         const EvalOptions& options) {
  if (p.size() != system.cols()) throw InputError("p must have one entry per variable");
  return smoothed_expectation(restrict(system, assignment), restrict(p, assignment), epsilon, options);
}

EvaluationResult smoothed_expectation_geometric(const SparseSystem& system, const ProbabilityVector& p,
                                                double epsilon, const EvalOptions& options) {
  return evaluate(system, p, epsilon, options, true);
}

}  // namespace smoothcount
