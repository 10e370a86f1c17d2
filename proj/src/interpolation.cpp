#include "smoothcount/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "smoothcount/detail/logsum.hpp"
#include "smoothcount/detail/parallel.hpp"
#include "smoothcount/error.hpp"
#include "smoothcount/zerofree.hpp"

namespace smoothcount {
namespace {

using detail::LogSum;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

__extension__ using Wide = unsigned __int128;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Wide r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

// First subset (sorted ascending) of rank `rank` in colex order of k-subsets.
std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k) {
  std::vector<std::size_t> subset(k);
  for (std::size_t i = k; i >= 1; --i) {
    std::size_t c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    subset[i - 1] = c;
    rank -= binomial(c, i);
  }
  return subset;
}

// Advances to the colex successor; false after the last subset.
bool colex_next(std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t limit = i + 1 < k ? subset[i + 1] : n;
    if (subset[i] + 1 < limit) {
      ++subset[i];
      for (std::size_t l = 0; l < i; ++l) subset[l] = l;
      return true;
    }
  }
  return false;
}

void validate_point(const SparseSystem& system, std::span<const double> x) {
  if (x.size() != system.cols()) throw InputError("evaluation point must have one entry per variable");
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("evaluation point must be positive and finite");
  }
}

void check_work(double terms, const ComputeOptions& options) {
  if (terms > options.work_limit) {
    throw WorkLimitError("enumeration needs " + std::to_string(terms) + " terms, limit is " +
                         std::to_string(options.work_limit));
  }
}

// log of x^xi exp(pen0 - penalty(xi)) given the residual vector of xi.
double log_weight(const SparseSystem& system, std::span<const double> residual, double pen0,
                  double log_monomial) {
  double pen = 0.0;
  for (std::size_t i = 0; i < residual.size(); ++i) pen += system.gamma()[i] * residual[i] * residual[i];
  return log_monomial + pen0 - pen;
}

LogSum subset_degree(const SparseSystem& system, std::span<const double> log_x, double pen0, std::size_t k,
                     const ComputeOptions& options) {
  const std::size_t n = system.cols();
  const std::uint64_t total = binomial(n, k);
  const std::uint64_t chunks = detail::chunk_count(total);
  std::vector<LogSum> partial(chunks);
  detail::for_each_chunk(chunks, options.threads, [&](std::uint64_t chunk) {
    const std::uint64_t begin = chunk * detail::kChunkSize;
    const std::uint64_t end = std::min(total, begin + detail::kChunkSize);
    std::vector<std::size_t> subset = colex_unrank(begin, k);
    std::vector<double> residual(system.rows());
    LogSum acc;
    for (std::uint64_t r = begin; r < end; ++r) {
      for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = -system.beta()[i];
      double log_monomial = 0.0;
      for (std::size_t j : subset) {
        log_monomial += log_x[j];
        for (const ColumnEntry& e : system.column(j)) residual[e.row] += e.value;
      }
      acc.add(log_weight(system, residual, pen0, log_monomial));
      if (r + 1 < end) colex_next(subset, n);
    }
    partial[chunk] = acc;
  });
  LogSum sum;
  for (const LogSum& p : partial) sum.merge(p);
  return sum;
}

// Weak compositions of k into n parts, lexicographic with the first part largest first.
LogSum composition_degree(const SparseSystem& system, std::span<const double> log_x, double pen0,
                          std::size_t k) {
  const std::size_t n = system.cols();
  LogSum acc;
  if (n == 0) return acc;
  std::vector<double> residual(system.rows());
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = -system.beta()[i];

  auto shift = [&](std::size_t j, double amount) {
    for (const ColumnEntry& e : system.column(j)) residual[e.row] += amount * e.value;
  };
  // Recursion over variables; `remaining` units still to place.
  auto visit = [&](auto&& self, std::size_t j, std::size_t remaining, double log_monomial) -> void {
    if (j + 1 == n) {
      const double count = static_cast<double>(remaining);
      shift(j, count);
      acc.add(log_weight(system, residual, pen0, log_monomial + count * log_x[j]));
      shift(j, -count);
      return;
    }
    for (std::size_t v = remaining + 1; v-- > 0;) {
      const double count = static_cast<double>(v);
      shift(j, count);
      self(self, j + 1, remaining - v, log_monomial + count * log_x[j]);
      shift(j, -count);
    }
  };
  visit(visit, 0, k, 0.0);
  return acc;
}

CoefficientSeries make_series(double log_a0, std::vector<LogSum> degrees, std::vector<std::uint64_t> terms) {
  CoefficientSeries s;
  s.log_a0 = log_a0;
  s.degree = degrees.size();
  s.terms = std::move(terms);
  for (const LogSum& d : degrees) {
    const double v = d.value();
    s.log_normalized.push_back(v);
    s.normalized.push_back(std::exp(v));
  }
  return s;
}

std::vector<double> log_x_of(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = std::log(x[j]);
  return out;
}

double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double b : v) s += b;
  return s;
}

}  // namespace

double truncation_bound(std::size_t n, std::size_t degree, double delta) {
  const double m = static_cast<double>(degree + 1);
  return static_cast<double>(n) * std::pow(1.0 - delta, m) / (m * delta);
}

std::size_t required_degree(std::size_t n, double delta, double epsilon, bool cap) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  const double target = std::log(epsilon / 2.0);
  const double log_n = std::log(static_cast<double>(std::max<std::size_t>(n, 1)));
  const double log_q = std::log1p(-delta);
  const double log_delta = std::log(delta);
  constexpr std::size_t kMaxUncapped = 1'000'000;
  for (std::size_t N = 0;; ++N) {
    if (cap && N >= n) return n;
    const double m = static_cast<double>(N + 1);
    if (log_n + m * log_q - std::log(m) - log_delta <= target) return N;
    if (N >= kMaxUncapped) throw WorkLimitError("required degree exceeds " + std::to_string(kMaxUncapped));
  }
}

double subset_term_count(std::size_t n, std::size_t degree) {
  double total = 0.0;
  for (std::size_t k = 1; k <= std::min(degree, n); ++k) total += static_cast<double>(binomial(n, k));
  return total;
}

double composition_term_count(std::size_t n, std::size_t degree) {
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t k = 1; k <= degree; ++k) total += static_cast<double>(binomial(k + n - 1, n - 1));
  return total;
}

CoefficientSeries taylor_coefficients(const SparseSystem& system, std::span<const double> x, std::size_t degree,
                                      const ComputeOptions& options) {
  const std::size_t n = system.cols();
  if (degree > n) throw InputError("degree " + std::to_string(degree) + " exceeds the number of variables");
  validate_point(system, x);
  check_work(subset_term_count(n, degree), options);

  const double pen0 = penalty_at_zero(system);
  const std::vector<double> log_x = log_x_of(x);
  std::vector<LogSum> degrees;
  std::vector<std::uint64_t> terms;
  for (std::size_t k = 1; k <= degree; ++k) {
    degrees.push_back(subset_degree(system, log_x, pen0, k, options));
    terms.push_back(binomial(n, k));
  }
  return make_series(-pen0, std::move(degrees), std::move(terms));
}

CoefficientSeries taylor_coefficients_geometric(const SparseSystem& system, std::span<const double> x,
                                                std::size_t degree, const ComputeOptions& options) {
  validate_point(system, x);
  for (double v : x) {
    if (!(v < 1.0)) throw InputError("geometric evaluation point must lie in (0, 1)");
  }
  const std::size_t n = system.cols();
  check_work(composition_term_count(n, degree), options);

  const double pen0 = penalty_at_zero(system);
  const std::vector<double> log_x = log_x_of(x);
  std::vector<LogSum> degrees;
  std::vector<std::uint64_t> terms;
  for (std::size_t k = 1; k <= degree; ++k) {
    degrees.push_back(composition_degree(system, log_x, pen0, k));
    terms.push_back(n == 0 ? 0 : binomial(k + n - 1, n - 1));
  }
  return make_series(-pen0, std::move(degrees), std::move(terms));
}

std::vector<double> log_taylor(std::span<const double> c) {
  const std::size_t N = c.size();
  std::vector<double> b(N);
  // c and b are 1-based in the recursion; c_0 = 1.
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * b[j - 1] * c[k - j - 1];
    b[k - 1] = c[k - 1] - s / static_cast<double>(k);
  }
  return b;
}

std::vector<double> log_taylor(const CoefficientSeries& series) { return log_taylor(series.normalized); }

std::vector<double> exp_series(std::span<const double> b) {
  const std::size_t N = b.size();
  std::vector<double> c(N);
  for (std::size_t k = 1; k <= N; ++k) {
    double s = static_cast<double>(k) * b[k - 1];
    for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * b[j - 1] * c[k - j - 1];
    c[k - 1] = s / static_cast<double>(k);
  }
  return c;
}

G1Value evaluate_g1(const SparseSystem& system, std::span<const double> x, double delta, double epsilon,
                    const G1Options& options) {
  validate_point(system, x);
  const std::size_t n = system.cols();
  G1Value out;
  if (n == 0) {
    out.log_value = -penalty_at_zero(system);
    out.exact = out.certified = true;
    return out;
  }
  const PolydiscReport report = certify(system, x, delta);
  out.certified = report.passed;
  if (!report.passed && !options.force) {
    throw CertificationError("polydisc check failed at delta = " + std::to_string(delta) + "; " +
                             describe(*report.binding));
  }

  const std::size_t N = report.passed ? required_degree(n, delta, epsilon) : n;
  if (N >= n) {
    const CoefficientSeries series = taylor_coefficients(system, x, n, options.compute);
    LogSum total;
    total.add(0.0);
    for (double v : series.log_normalized) total.add(v);
    out.log_value = series.log_a0 + total.value();
    out.degree = n;
    out.tail_bound = 0.0;
    out.exact = true;
    out.terms = subset_term_count(n, n);
    return out;
  }
  const CoefficientSeries series = taylor_coefficients(system, x, N, options.compute);
  out.log_value = series.log_a0 + sum_of(log_taylor(series));
  out.degree = N;
  out.tail_bound = truncation_bound(n, N, delta);
  out.terms = subset_term_count(n, N);
  return out;
}

G1Value evaluate_g1_geometric(const SparseSystem& system, std::span<const double> x, double delta,
                              double epsilon, const G1Options& options) {
  validate_point(system, x);
  const std::size_t n = system.cols();
  G1Value out;
  if (n == 0) {
    out.log_value = -penalty_at_zero(system);
    out.exact = out.certified = true;
    return out;
  }
  const PolydiscReport report = certify(system, x, delta);
  if (!report.passed) {
    if (!options.force) {
      throw CertificationError("polydisc check failed at delta = " + std::to_string(delta) + "; " +
                               describe(*report.binding));
    }
    return sum_geometric_directly(system, x, epsilon, options.compute);
  }
  const std::size_t N = required_degree(n, delta, epsilon, false);
  const CoefficientSeries series = taylor_coefficients_geometric(system, x, N, options.compute);
  out.log_value = series.log_a0 + sum_of(log_taylor(series));
  out.degree = N;
  out.tail_bound = truncation_bound(n, N, delta);
  out.certified = true;
  out.terms = composition_term_count(n, N);
  return out;
}

G1Value sum_geometric_directly(const SparseSystem& system, std::span<const double> x, double epsilon,
                               const ComputeOptions& options) {
  validate_point(system, x);
  for (double v : x) {
    if (!(v < 1.0)) throw InputError("geometric evaluation point must lie in (0, 1)");
  }
  const std::size_t n = system.cols();
  const double pen0 = penalty_at_zero(system);
  G1Value out;
  out.certified = false;
  out.tail_bound = std::numeric_limits<double>::infinity();
  if (n == 0) {
    out.log_value = -pen0;
    out.exact = true;
    out.tail_bound = 0.0;
    return out;
  }
  const std::vector<double> log_x = log_x_of(x);
  const double threshold = std::log(epsilon / 100.0);
  LogSum total;
  total.add(0.0);
  int quiet = 0;
  std::size_t k = 0;
  while (quiet < 3) {
    ++k;
    out.terms += static_cast<double>(binomial(k + n - 1, n - 1));
    check_work(out.terms, options);
    const double log_ck = composition_degree(system, log_x, pen0, k).value();
    quiet = log_ck - total.value() < threshold ? quiet + 1 : 0;
    total.add(log_ck);
  }
  out.degree = k;
  out.log_value = -pen0 + total.value();
  return out;
}

}  // namespace smoothcount
