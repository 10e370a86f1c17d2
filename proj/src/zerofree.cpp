#include "smoothcount/zerofree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "smoothcount/error.hpp"

namespace smoothcount {
namespace {

constexpr double kBisectionTolerance = 1e-9;
constexpr int kBisectionMaxIterations = 200;

// Largest point of [lo, hi] where a monotone predicate still holds, given
// pred(lo) == true and pred(hi) == false.
template <class Pred>
double bisect_last_true(double lo, double hi, Pred&& pred) {
  for (int it = 0; it < kBisectionMaxIterations && hi - lo > kBisectionTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Doubles hi until the predicate fails.
template <class Pred>
double bracket_failure(double hi, Pred&& pred) {
  for (int it = 0; it < 64 && pred(hi); ++it) hi *= 2.0;
  return hi;
}

void validate_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
}

}  // namespace

std::string describe(const ConstraintCheck& check) {
  std::ostringstream os;
  os.precision(17);
  if (check.kind == ConstraintCheck::Kind::Column) {
    os << "column " << check.index << ": lambda = " << check.value << " (bound < 1)";
  } else {
    os << "row " << check.index << ": weighted sum = " << check.value << " (bound <= " << check.bound << ")";
  }
  return os.str();
}

PolydiscReport check_polydisc(const SparseSystem& system, std::span<const double> rho) {
  const std::size_t n = system.cols();
  const std::size_t m = system.rows();
  if (rho.size() != n) throw InputError("rho must have one entry per column");

  PolydiscReport report;
  Certificate& cert = report.certificate;
  cert.c = column_max_nonzeros(system);
  cert.rho.assign(rho.begin(), rho.end());
  cert.lambda.resize(n);
  cert.margin = std::numeric_limits<double>::infinity();

  auto consider = [&](const ConstraintCheck& check, bool ok) {
    if (!ok) report.violated.push_back(check);
    if (!report.binding || check.slack() < report.binding->slack()) report.binding = check;
    cert.margin = std::min(cert.margin, check.slack());
  };

  std::vector<double> row_sum(m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(rho[j] > 0.0) || !std::isfinite(rho[j])) throw InputError("rho must be positive and finite");
    double exponent = 0.0;
    for (const ColumnEntry& e : system.column(j)) {
      exponent += system.gamma()[e.row] * system.beta()[e.row] * e.value;
    }
    const double lambda = rho[j] * std::exp(exponent);
    cert.lambda[j] = lambda;
    consider({ConstraintCheck::Kind::Column, j, lambda, 1.0}, lambda < 1.0);
    const double weight =
        lambda < 1.0 ? lambda / (1.0 - lambda) : std::numeric_limits<double>::infinity();
    for (const ColumnEntry& e : system.column(j)) row_sum[e.row] += weight * std::abs(e.value);
  }

  const double bound = 1.0 / (2.0 * std::sqrt(static_cast<double>(std::max<std::size_t>(cert.c, 1))));
  for (std::size_t i = 0; i < m; ++i) {
    const double value = std::sqrt(system.gamma()[i]) * row_sum[i];
    consider({ConstraintCheck::Kind::Row, i, value, bound}, value <= bound);
  }
  report.passed = report.violated.empty();
  return report;
}

PolydiscReport certify(const SparseSystem& system, std::span<const double> x, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw InputError("delta must lie in [0, 1)");
  std::vector<double> rho(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] > 0.0)) throw InputError("evaluation point must be positive");
    rho[j] = x[j] / (1.0 - delta);
  }
  PolydiscReport report = check_polydisc(system, rho);
  report.certificate.delta = delta;
  return report;
}

std::optional<double> max_delta(const SparseSystem& system, std::span<const double> x) {
  auto passes = [&](double delta) { return certify(system, x, delta).passed; };
  if (!passes(0.0)) return std::nullopt;
  const double best = bisect_last_true(0.0, 1.0, passes);
  if (best <= 0.0) return std::nullopt;
  return best;
}

UniformGamma max_gamma_uniform(std::size_t k, double delta, std::optional<std::size_t> degree) {
  if (k < 1) throw InputError("k must be at least 1");
  if (degree && *degree < 3) throw InputError("degree must be at least 3");
  validate_delta(delta);

  auto admissible = [&](double t) {
    if (!degree) return std::exp(t) * 2.0 * std::sqrt(t) <= 1.0 - delta;
    const double d = static_cast<double>(*degree);
    return std::exp(t) * (1.0 + 2.0 * d * std::sqrt(t)) <= (1.0 - delta) * (d - 1.0);
  };
  if (degree && !admissible(0.0)) throw InputError("no positive gamma is admissible at this delta");
  const double hi = bracket_failure(1.0, admissible);
  const double t = bisect_last_true(0.0, hi, admissible);
  return {t, t / static_cast<double>(k)};
}

MatchingGamma max_gamma_matching(std::size_t k, std::size_t degree, double omega, double delta) {
  if (k < 1) throw InputError("k must be at least 1");
  if (degree < 3) throw InputError("degree must be at least 3");
  if (!(omega > 0.0 && omega <= 1.0)) throw InputError("omega must lie in (0, 1]");
  validate_delta(delta);

  const double d = static_cast<double>(degree);
  auto admissible = [&](double t) {
    const double lambda = omega * std::exp(t) / ((1.0 - delta) * (d - 1.0));
    if (!(lambda < 1.0)) return false;
    if (t == 0.0) return true;
    return lambda / (1.0 - lambda) <= 1.0 / (2.0 * d * std::sqrt(t));
  };
  if (!admissible(0.0)) throw InputError("no positive gamma is admissible at this delta");
  const double hi = bracket_failure(1.0, admissible);
  const double t = bisect_last_true(0.0, hi, admissible);

  MatchingGamma out;
  out.t = t;
  out.gamma = t / static_cast<double>(k);
  const double target_t = std::log(1.0 / omega);
  out.target_gamma = target_t / static_cast<double>(k);
  out.target_admissible = admissible(target_t);
  return out;
}

SparseGamma suggest_gamma_sparse(const SparseSystem& system) {
  const std::size_t n = system.cols();
  const std::size_t m = system.rows();
  std::vector<std::vector<ColumnEntry>> rows(m);  // (column, value) stored in ColumnEntry::row
  for (std::size_t j = 0; j < n; ++j) {
    for (const ColumnEntry& e : system.column(j)) {
      if (std::abs(e.value) > 1.0) {
        throw InputError("entry (" + std::to_string(e.row) + ", " + std::to_string(j) +
                         ") exceeds 1 in absolute value");
      }
      rows[e.row].push_back({j, e.value});
    }
  }
  const double c = static_cast<double>(std::max<std::size_t>(column_max_nonzeros(system), 1));

  SparseGamma out;
  out.gamma.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = system.row_nonzeros(i);
    out.gamma[i] = r == 0 ? 1.0 : 1.0 / (c * static_cast<double>(r));
  }

  out.column_sums.assign(n, 0.0);
  std::vector<double> coupling(n, 0.0);
  std::vector<std::size_t> touched;
  for (std::size_t j = 0; j < n; ++j) {
    touched.clear();
    for (const ColumnEntry& e : system.column(j)) {
      for (const ColumnEntry& other : rows[e.row]) {
        const std::size_t k = other.row;
        if (k == j) continue;
        if (coupling[k] == 0.0) touched.push_back(k);
        coupling[k] += -0.5 * out.gamma[e.row] * e.value * other.value;
      }
    }
    double sum = 0.0;
    for (std::size_t k : touched) {
      sum += std::abs(coupling[k]);
      coupling[k] = 0.0;
    }
    out.column_sums[j] = sum;
  }
  out.holds = std::all_of(out.column_sums.begin(), out.column_sums.end(),
                          [](double s) { return s <= 0.5; });
  return out;
}

}  // namespace smoothcount
