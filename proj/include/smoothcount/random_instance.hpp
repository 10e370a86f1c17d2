#pragma once

#include <cstddef>
#include <optional>
#include <random>

#include "smoothcount/model.hpp"

namespace smoothcount {

/// Parameters for random sparse test instances.
struct RandomSystemSpec {
  std::size_t n = 8;
  std::size_t m = 4;
  std::size_t max_col_nonzeros = 3;
  bool nonnegative = false;        ///< coefficients in (0, 1] instead of [-1, 1]
  bool unit_coefficients = false;  ///< coefficients in {1} (or {-1, 1} when signed)
  double beta_max = 2.0;           ///< beta uniform in [0, beta_max] (nonnegative) or [-beta_max, beta_max]
  bool integer_beta = false;
  double gamma_min = 0.1;
  double gamma_max = 1.0;
};

SparseSystem random_system(const RandomSystemSpec& spec, std::mt19937_64& rng);

/// Draws odds x_j = scale * u_j (u_j uniform in [0.2, 1], scale log-uniform
/// in [min_odds, max_odds]) and returns p = x / (1 + x) once the polydisc
/// check admits some delta. Gives up after `attempts` draws.
std::optional<ProbabilityVector> random_certified_probabilities(const SparseSystem& system, std::mt19937_64& rng,
                                                                double min_odds = 1e-3, double max_odds = 0.5,
                                                                int attempts = 200);

}  // namespace smoothcount
