// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "smoothcount/evaluator.hpp"
#include "smoothcount/hypergraph.hpp"
#include "smoothcount/interpolation.hpp"
#include "smoothcount/ising.hpp"
#include "smoothcount/maxent.hpp"
#include "smoothcount/oracle.hpp"
#include "smoothcount/random_instance.hpp"
#include "smoothcount/rounding.hpp"
#include "smoothcount/zerofree.hpp"
#include "support.hpp"

using namespace smoothcount;
using cplx = std::complex<double>;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> body;
};

std::string fmt(const char* format, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

// Criterion 1
Verdict gamma_constants() {
  const double t3 = max_gamma_uniform(3, 1e-6, 3).t;
  const double tinf = max_gamma_uniform(3, 1e-6, std::nullopt).t;
  return {t3 >= 0.025 && t3 < 0.026 && tinf >= 0.17 && tinf < 0.18,
          fmt("t*(Delta=3) = %.6f, t*(Delta=inf) = %.6f", t3, tinf)};
}

struct OracleSuite {
  int instances = 0;
  int truncated = 0;
  double worst_relative = 0.0;
  double worst_tail_ratio = 0.0;  // |log error| / tail_bound on truncated runs
  bool tail_ok = true;
};

OracleSuite run_oracle_suite() {
  static OracleSuite cached;
  static bool done = false;
  if (done) return cached;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick_n(4, 14), pick_m(1, 6);
  constexpr double eps = 1e-3;
  while (cached.instances < 120) {
    RandomSystemSpec spec;
    spec.n = pick_n(rng);
    spec.m = pick_m(rng);
    const SparseSystem s = random_system(spec, rng);
    const auto p = random_certified_probabilities(s, rng, 1e-3, 0.6);
    if (!p) continue;
    const EvaluationResult r = smoothed_expectation(s, *p, eps);
    const OracleValue ref = brute_force_expectation(s, *p);
    const double log_err = std::abs(r.log_value - ref.log_value);
    cached.worst_relative = std::max(cached.worst_relative, std::abs(std::expm1(r.log_value - ref.log_value)));
    if (!r.exact) {
      ++cached.truncated;
      cached.worst_tail_ratio = std::max(cached.worst_tail_ratio, log_err / r.tail_bound);
      if (log_err > r.tail_bound + 1e-12) cached.tail_ok = false;
    }
    ++cached.instances;
  }
  done = true;
  return cached;
}

// Criterion 2
Verdict oracle_equivalence() {
  const OracleSuite s = run_oracle_suite();
  return {s.instances >= 100 && s.worst_relative <= 1e-3,
          fmt("%g instances (%g truncated), worst relative error %.3e", s.instances, s.truncated,
              s.worst_relative)};
}

// Criterion 3
Verdict bound_soundness() {
  const OracleSuite s = run_oracle_suite();
  return {s.worst_relative <= 1e-3 && s.tail_ok && s.truncated > 0,
          fmt("worst relative error %.3e <= eps; worst |log error| / tail_bound = %.3e over %g truncated runs",
              s.worst_relative, s.worst_tail_ratio, s.truncated)};
}

// Criterion 4
Verdict zero_freeness() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_n(2, 10), pick_m(1, 6);
  int instances = 0;
  double min_abs = std::numeric_limits<double>::infinity();
  while (instances < 50) {
    RandomSystemSpec spec;
    spec.n = pick_n(rng);
    spec.m = pick_m(rng);
    const SparseSystem s = random_system(spec, rng);
    const auto p = random_certified_probabilities(s, rng, 1e-2, 0.6);
    if (!p) continue;
    const std::vector<double> x = p->odds();
    const double delta = *max_delta(s, x) - 1e-6;
    const PolydiscReport cert = certify(s, x, delta);
    if (!cert.passed) return {false, "certificate did not re-verify"};
    std::vector<cplx> z(s.cols());
    for (int k = 0; k < 1000; ++k) {
      for (std::size_t j = 0; j < z.size(); ++j) {
        // radius in [0, rho) with mass pushed toward the boundary
        const double r = cert.certificate.rho[j] * std::sqrt(unit(rng)) * (1.0 - 1e-12);
        z[j] = std::polar(r, 2.0 * M_PI * unit(rng));
      }
      min_abs = std::min(min_abs, std::abs(brute_force_P(s, z)));
    }
    ++instances;
  }

  int trials = 0;
  double min_sum = std::numeric_limits<double>::infinity();
  while (trials < 500) {
    RandomSystemSpec spec;
    spec.n = pick_n(rng);
    spec.m = 1 + trials % 8;
    const SparseSystem a = random_system(spec, rng);
    const std::size_t c = std::max<std::size_t>(1, a.column_max());
    // lambda_j = t u_j with t scaled so the largest row sum equals 1/(2 sqrt c)
    std::vector<double> u(a.cols());
    for (double& v : u) v = 0.2 + 0.8 * unit(rng);
    auto worst_row = [&](double t) {
      std::vector<double> row(a.rows(), 0.0);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const double l = t * u[j];
        for (const ColumnEntry& e : a.column(j)) row[e.row] += l * std::abs(e.value) / (1.0 - l);
      }
      double w = 0.0;
      for (double v : row) w = std::max(w, v);
      return w;
    };
    const double bound = 1.0 / (2.0 * std::sqrt(static_cast<double>(c)));
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (worst_row(mid) <= bound ? lo : hi) = mid;
    }
    std::vector<cplx> z(a.cols());
    for (std::size_t j = 0; j < z.size(); ++j) {
      z[j] = std::polar(lo * u[j] * unit(rng), 2.0 * M_PI * unit(rng));
    }
    min_sum = std::min(min_sum, std::abs(proposition31_sum(a, z)));
    ++trials;
  }
  return {min_abs > 0.0 && min_sum > 1e-12,
          fmt("50 instances x 1000 points: min |P| = %.3e; 500 sign-sum trials: min |sum| = %.3e", min_abs,
              min_sum)};
}

// Criterion 5
Verdict rounding_guarantee() {
  constexpr double eps = 0.05;
  double worst = std::numeric_limits<double>::infinity();  // achieved / ((1 - eps) oracle)
  int cases = 0;
  auto check = [&](const SparseSystem& s, const ProbabilityVector& p) {
    const RoundingResult r = derandomize(s, p, eps);
    const double oracle = brute_force_expectation(s, p).value;
    worst = std::min(worst, r.achieved() / ((1.0 - eps) * oracle));
    ++cases;
  };
  const HypergraphInstance k4 = perfect_matching_instance(testing::k4(), 0.025 / 2.0);
  check(k4.system, k4.p);
  const HypergraphInstance fano = perfect_matching_instance(testing::fano(), std::nullopt);
  check(fano.system, fano.p);

  std::mt19937_64 rng(555);
  std::uniform_int_distribution<std::size_t> pick_n(6, 16), pick_m(2, 6);
  int random_cases = 0;
  while (random_cases < 20) {
    RandomSystemSpec spec;
    spec.n = pick_n(rng);
    spec.m = pick_m(rng);
    spec.nonnegative = true;
    const SparseSystem s = random_system(spec, rng);
    const auto p = random_certified_probabilities(s, rng, 0.02, 0.6);
    if (!p) continue;
    check(s, *p);
    ++random_cases;
  }
  return {worst >= 1.0, fmt("%g cases; min achieved / ((1 - eps) oracle) = %.4f", cases, worst)};
}

// Criterion 6
Verdict ising_identity() {
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<std::size_t> pick_n(1, 10), pick_m(1, 6);
  std::uniform_real_distribution<double> pick_p(0.02, 0.98);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    RandomSystemSpec spec;
    spec.n = pick_n(rng);
    spec.m = pick_m(rng);
    const SparseSystem s = random_system(spec, rng);
    std::vector<double> pv(spec.n);
    for (double& v : pv) v = pick_p(rng);
    const ProbabilityVector p(pv);
    const IsingConversion conv = to_ising(s, p);
    const double lhs = brute_force_expectation(s, p).log_value;
    const double rhs = conv.log_constant + partition_bruteforce(conv.model).log_value;
    worst = std::max(worst, std::abs(std::expm1(rhs - lhs)));
  }
  const SparseSystem hand = testing::dense_system({{1, 1}}, {1}, {1});
  const ProbabilityVector half({0.5, 0.5});
  const IsingConversion conv = to_ising(hand, half);
  const double via_ising = std::exp(conv.log_constant) * partition_bruteforce(conv.model).value;
  const double direct = brute_force_expectation(hand, half).value;
  const bool hand_ok = std::abs(conv.model.g(0, 1) + 0.5) < 1e-15 && std::abs(via_ising - 0.683940) < 5e-7 &&
                       std::abs(direct - 0.683940) < 5e-7;
  return {worst <= 1e-10 && hand_ok,
          fmt("worst relative gap %.3e over 50 instances; hand case g12 = %.3f, totals %.6f / %.6f", worst,
              conv.model.g(0, 1), via_ising, direct)};
}

// Criterion 7
Verdict reverse_construction() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> pick_n(1, 8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = pick_n(rng);
    Interaction g(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = k + 1; j < n; ++j) g.set(k, j, u(rng));
    }
    const ReverseIsing rev = from_ising(g);
    const std::vector<double> a = rev.system.dense();
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (k == j) continue;
        double ata = 0.0;
        for (std::size_t i = 0; i < rev.system.rows(); ++i) ata += a[i * n + k] * a[i * n + j];
        worst = std::max(worst, std::abs(-0.5 * ata - g(k, j)));
      }
    }
  }
  return {worst <= 1e-8, fmt("worst off-diagonal residual %.3e over 50 matrices", worst)};
}

// Criterion 8
Verdict max_entropy() {
  const HypergraphInstance k4 = perfect_matching_instance(testing::k4(), std::nullopt);
  const MaxEntSolution sol = solve_maxent(k4.system);
  double worst_p = 0.0;
  for (double v : sol.p.values()) worst_p = std::max(worst_p, std::abs(v - 1.0 / 3.0));
  const double h = 6.0 * (std::log(3.0) - 2.0 / 3.0 * std::log(2.0));
  const double eh = count_bound(sol).value;
  const double smooth = smoothed_count_bound(k4.system, sol, 1e-3).value;
  bool ok = worst_p <= 1e-6 && std::abs(sol.entropy - h) <= 1e-9 && smooth >= 3.0 && smooth <= eh;

  std::mt19937_64 rng(88);
  int violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 8 + 4 * static_cast<std::size_t>(trial % 3);
    const double gamma = 0.005 + 0.02 * (trial % 5) / 4.0;
    const SparseSystem s = testing::block_design(n, 2, gamma, rng);
    const MaxEntSolution m = solve_maxent(s);
    const double bound = smoothed_count_bound(s, m, 1e-3).value;
    const double count = static_cast<double>(count_solutions(s));
    if (bound < count) ++violations;
    if (count > 0) min_ratio = std::min(min_ratio, bound / count);
  }
  ok = ok && violations == 0;
  return {ok, fmt("K4: max |p - 1/3| = %.1e, H = %.6f, 3 <= %.4f <= e^H = %.4f", worst_p, sol.entropy, smooth, eh) +
                  fmt("; 50 random systems, min bound / count = %.3f", min_ratio)};
}

// Criterion 9
Verdict geometric_variant() {
  const SparseSystem s = testing::dense_system({{1}}, {1}, {1});
  EvalOptions o;
  o.force = true;
  const EvaluationResult r = smoothed_expectation_geometric(s, ProbabilityVector({0.5}), 1e-4, o);
  const double reference = testing::ref_geometric(s, {0.5}, 200);
  const bool ok = std::abs(r.value() - 0.481073) <= 1e-4 && std::abs(r.value() - reference) <= 1e-4 * reference;
  return {ok, fmt("value %.7f (reference %.7f), certified = %g", r.value(), reference, r.certified ? 1 : 0)};
}

// Criterion 10
Verdict degree_scaling() {
  const std::size_t N = required_degree(10, 0.5, 0.1);
  bool ok = N == 6;
  const auto tri = testing::pascal(14);
  for (std::size_t n = 6; n <= 14; ++n) {
    const std::vector<double> x(n, 0.01);
    const SparseSystem s = testing::zero_system(1, n);
    const CoefficientSeries series = taylor_coefficients(s, x, n);
    double total = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      ok = ok && series.terms[k - 1] == tri[n][k];
      total += static_cast<double>(tri[n][k]);
    }
    ok = ok && subset_term_count(n, n) == total;
  }
  // the evaluator uses exactly the predicted degree
  std::mt19937_64 rng(10);
  RandomSystemSpec spec;
  spec.n = 10;
  spec.m = 4;
  const SparseSystem s = random_system(spec, rng);
  const std::vector<double> x(10, 0.02);
  const G1Value v = evaluate_g1(s, x, 0.5, 0.1);
  ok = ok && v.certified && v.degree == 6;
  return {ok, fmt("required_degree(10, 0.5, 0.1) = %g, evaluator degree %g; term counts match Pascal for n = 6..14",
                  static_cast<double>(N), static_cast<double>(v.degree))};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "gamma constants", 1.0, gamma_constants},
      {2, "oracle equivalence", 300.0, oracle_equivalence},
      {3, "a-priori bound soundness", 300.0, bound_soundness},
      {4, "zero-freeness", 300.0, zero_freeness},
      {5, "rounding guarantee", 600.0, rounding_guarantee},
      {6, "Ising identity", 60.0, ising_identity},
      {7, "reverse construction", 60.0, reverse_construction},
      {8, "maximum entropy", 120.0, max_entropy},
      {9, "geometric variant", 1.0, geometric_variant},
      {10, "degree scaling", 60.0, degree_scaling},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = v.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s [%2d] %s: %s (%.2f s of %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                seconds, c.budget_seconds);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
