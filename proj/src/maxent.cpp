#include "smoothcount/maxent.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <string>

#include "smoothcount/error.hpp"

namespace smoothcount {
namespace {

double softplus(double s) { return std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s))); }

double logistic(double s) {
  return s >= 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
}

struct DualState {
  Eigen::VectorXd score;  // A^T y
  Eigen::VectorXd p;
  double objective = 0.0;
};

}  // namespace

double entropy(std::span<const double> x) {
  double h = 0.0;
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("entropy argument must lie in [0, 1]");
    if (v > 0.0) h -= v * std::log(v);
    if (v < 1.0) h -= (1.0 - v) * std::log1p(-v);
  }
  return h;
}

MaxEntSolution solve_maxent(const SparseSystem& system, const MaxEntOptions& options) {
  const std::size_t n = system.cols();
  const std::size_t m = system.rows();
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  {
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t j = 0; j < n; ++j) {
      for (const ColumnEntry& e : system.column(j)) {
        t.emplace_back(static_cast<int>(e.row), static_cast<int>(j), e.value);
      }
    }
    a.setFromTriplets(t.begin(), t.end());
  }
  const Eigen::Map<const Eigen::VectorXd> b(system.beta().data(), static_cast<Eigen::Index>(m));

  auto evaluate = [&](const Eigen::VectorXd& y) {
    DualState s;
    s.score = a.transpose() * y;
    s.p.resize(static_cast<Eigen::Index>(n));
    s.objective = -b.dot(y);
    for (Eigen::Index j = 0; j < s.score.size(); ++j) {
      s.p[j] = logistic(s.score[j]);
      s.objective += softplus(s.score[j]);
    }
    return s;
  };

  MaxEntSolution out;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  DualState state = evaluate(y);
  Eigen::VectorXd grad = a * state.p - b;
  out.objective_trace.push_back(state.objective);

  auto fail = [&](const std::string& why) {
    throw SolverError("no interior point detected or ill-conditioned (" + why + "); best residual " +
                      std::to_string(grad.lpNorm<Eigen::Infinity>()) + " after " +
                      std::to_string(out.iterations) + " iterations");
  };

  while (m > 0 && grad.lpNorm<Eigen::Infinity>() > options.tolerance) {
    if (out.iterations >= options.max_iterations) fail("iteration cap reached");
    ++out.iterations;
    const Eigen::VectorXd w = state.p.array() * (1.0 - state.p.array());
    Eigen::MatrixXd hess = Eigen::MatrixXd(a * w.asDiagonal() * a.transpose());
    hess.diagonal().array() += options.ridge;
    const Eigen::VectorXd step = hess.ldlt().solve(-grad);
    if (!step.allFinite()) fail("singular Newton system");

    const double slope = grad.dot(step);
    double t = 1.0;
    DualState next = evaluate(y + step);
    while (!(next.objective <= state.objective + 1e-4 * t * slope)) {
      t *= 0.5;
      if (t < 1e-20) break;
      next = evaluate(y + t * step);
    }
    if (t < 1e-20) {
      // No decrease possible at working precision; accept only if converged.
      break;
    }
    y += t * step;
    state = std::move(next);
    grad = a * state.p - b;
    out.objective_trace.push_back(state.objective);
  }

  out.residual = m > 0 ? grad.lpNorm<Eigen::Infinity>() : 0.0;
  if (out.residual > options.tolerance) fail("line search stalled");
  for (Eigen::Index j = 0; j < state.p.size(); ++j) {
    if (state.p[j] < options.boundary || state.p[j] > 1.0 - options.boundary) {
      fail("marginal of variable " + std::to_string(j) + " converges to the cube boundary");
    }
  }
  std::vector<double> p(state.p.data(), state.p.data() + state.p.size());
  if (m == 0) p.assign(n, 0.5);
  out.entropy = entropy(p);
  out.p = ProbabilityVector(std::move(p));
  out.dual.assign(y.data(), y.data() + y.size());
  return out;
}

CountBound count_bound(const MaxEntSolution& solution) {
  return {std::exp(solution.entropy), solution.entropy};
}

CountBound smoothed_count_bound(const SparseSystem& system, const MaxEntSolution& solution, double epsilon,
                                const EvalOptions& options) {
  EvalOptions strict = options;
  strict.force = false;
  const EvaluationResult e = smoothed_expectation(system, solution.p, epsilon, strict);
  CountBound out;
  out.log_value = solution.entropy + e.log_value + std::log1p(epsilon);
  out.value = std::exp(out.log_value);
  return out;
}

}  // namespace smoothcount
