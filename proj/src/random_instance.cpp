#include "smoothcount/random_instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smoothcount/zerofree.hpp"

namespace smoothcount {

SparseSystem random_system(const RandomSystemSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> rows(spec.m);
  std::iota(rows.begin(), rows.end(), 0);

  std::vector<std::vector<ColumnEntry>> columns(spec.n);
  const std::size_t cap = std::min(spec.max_col_nonzeros, spec.m);
  for (auto& col : columns) {
    const std::size_t count = cap == 0 ? 0 : std::uniform_int_distribution<std::size_t>(1, cap)(rng);
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t t = 0; t < count; ++t) {
      double v = spec.unit_coefficients ? 1.0 : 1.0 - unit(rng);  // (0, 1]
      if (!spec.nonnegative && unit(rng) < 0.5) v = -v;
      col.push_back({rows[t], v});
    }
  }
  std::vector<double> beta(spec.m), gamma(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    double b = spec.beta_max * unit(rng);
    if (!spec.nonnegative && unit(rng) < 0.5) b = -b;
    beta[i] = spec.integer_beta ? std::round(b) : b;
    gamma[i] = spec.gamma_min + (spec.gamma_max - spec.gamma_min) * unit(rng);
  }
  return SparseSystem::from_columns(spec.m, std::move(columns), std::move(beta), std::move(gamma));
}

std::optional<ProbabilityVector> random_certified_probabilities(const SparseSystem& system, std::mt19937_64& rng,
                                                                double min_odds, double max_odds,
                                                                int attempts) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = std::log(min_odds);
  const double hi = std::log(max_odds);
  for (int a = 0; a < attempts; ++a) {
    const double scale = std::exp(lo + (hi - lo) * unit(rng));
    std::vector<double> x(system.cols()), p(system.cols());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = scale * (0.2 + 0.8 * unit(rng));
      p[j] = x[j] / (1.0 + x[j]);
    }
    if (max_delta(system, x)) return ProbabilityVector(std::move(p));
  }
  return std::nullopt;
}

}  // namespace smoothcount
