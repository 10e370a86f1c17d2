#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smoothcount/model.hpp"

namespace smoothcount {

// Sufficient condition for the partition polynomial
//
//   P(z) = sum_{x in {0,1}^n} z^x exp(-sum_i gamma_i (l_i(x) - b_i)^2)
//
// to have no zeros in the polydisc |z_j| < rho_j. With c the maximum column
// count and lambda_j = rho_j exp(sum_i gamma_i b_i a_ij), the condition is
//
//   lambda_j < 1                                            for every column j,
//   sqrt(gamma_i) sum_j |a_ij| lambda_j / (1 - lambda_j) <= 1 / (2 sqrt(c))
//                                                           for every row i.
//
// Equality in the row inequality is accepted.

/// A verified zero-free polydisc.
struct Certificate {
  std::vector<double> rho;
  std::vector<double> lambda;
  double delta = 0.0;   ///< x_j = (1 - delta) rho_j; 0 when rho was given directly.
  double margin = 0.0;  ///< smallest slack over all constraints
  std::size_t c = 0;
};

struct ConstraintCheck {
  enum class Kind { Column, Row };
  Kind kind;
  std::size_t index;
  double value;
  double bound;  // the constraint is value < bound (column) or value <= bound (row)
  double slack() const { return bound - value; }
};

struct PolydiscReport {
  bool passed = false;
  Certificate certificate;                 // filled even on failure
  std::vector<ConstraintCheck> violated;   // every failing constraint
  std::optional<ConstraintCheck> binding;  // constraint with the least slack
};

std::string describe(const ConstraintCheck& check);

PolydiscReport check_polydisc(const SparseSystem& system, std::span<const double> rho);

/// check_polydisc at rho_j = x_j / (1 - delta), with delta recorded.
PolydiscReport certify(const SparseSystem& system, std::span<const double> x, double delta);

/// Largest delta in (0,1) for which certify(system, x, delta) passes,
/// found by bisection to absolute tolerance 1e-9. None if no delta works.
std::optional<double> max_delta(const SparseSystem& system, std::span<const double> x);

struct UniformGamma {
  double t;      ///< largest admissible gamma * k
  double gamma;  ///< t / k
};

/// Largest gamma = t / k for a k-uniform hypergraph with vertex degree
/// `degree` (nullopt for the large-degree limit) satisfying
///   e^t <= (1 - delta)(degree - 1) / (1 + 2 degree sqrt(t))
/// or, in the limit, e^t <= (1 - delta) / (2 sqrt(t)).
UniformGamma max_gamma_uniform(std::size_t k, double delta, std::optional<std::size_t> degree);

struct MatchingGamma {
  double t;
  double gamma;               ///< largest admissible gamma
  double target_gamma;        ///< ln(1/omega) / k
  bool target_admissible;     ///< whether target_gamma satisfies the same conditions
};

/// Matching regime: edges selected with probability omega / degree.
/// Largest gamma with lambda = omega e^{gamma k} / ((1 - delta)(degree - 1)) < 1
/// and lambda / (1 - lambda) <= 1 / (2 degree sqrt(gamma k)).
MatchingGamma max_gamma_matching(std::size_t k, std::size_t degree, double omega, double delta);

struct SparseGamma {
  std::vector<double> gamma;         ///< 1 / (c r_i); rows without entries get 1
  std::vector<double> column_sums;   ///< sum_{k != j} |g_jk| of the induced Ising couplings
  bool holds = false;                ///< every column sum <= 1/2
};

/// Weights gamma_i = 1/(c r_i) for a matrix with entries bounded by 1 in
/// absolute value, plus a direct check of the induced coupling bound.
SparseGamma suggest_gamma_sparse(const SparseSystem& system);

}  // namespace smoothcount
