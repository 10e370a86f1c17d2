#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace smoothcount {

/// One stored coefficient of a column.
struct ColumnEntry {
  std::size_t row;
  double value;
};

/// Coordinate-form input to SparseSystem.
struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// 0-1 vector, one byte per coordinate.
using Bits = std::vector<std::uint8_t>;

// A weighted linear system  sum_j a_ij x_j = b_i  over 0-1 variables,
// stored column-major. Rows may be entirely empty; they still contribute
// the constant factor exp(-gamma_i * b_i^2) to the smoothed expectation.
// Immutable after construction.
class SparseSystem {
 public:
  SparseSystem() = default;

  /// Builds from coordinate triplets. Exact zeros are dropped; duplicate
  /// (row, col) pairs, out-of-range indices, non-finite values and
  /// non-positive weights throw InputError.
  SparseSystem(std::size_t rows, std::size_t cols, std::span<const Triplet> entries,
               std::vector<double> beta, std::vector<double> gamma);

  /// Builds from per-column entry lists (row indices need not be sorted).
  static SparseSystem from_columns(std::size_t rows, std::vector<std::vector<ColumnEntry>> columns,
                                   std::vector<double> beta, std::vector<double> gamma);

  std::size_t rows() const { return beta_.size(); }
  std::size_t cols() const { return columns_.size(); }

  std::span<const ColumnEntry> column(std::size_t j) const { return columns_[j]; }
  std::span<const double> beta() const { return beta_; }
  std::span<const double> gamma() const { return gamma_; }

  /// Number of stored coefficients in row i.
  std::size_t row_nonzeros(std::size_t i) const { return row_nonzeros_[i]; }
  std::size_t nonzeros() const;
  /// Cached maximum column count; see column_max_nonzeros().
  std::size_t column_max() const { return column_max_; }

  /// Same matrix and right-hand sides with new weights.
  SparseSystem with_gamma(std::vector<double> gamma) const;

  /// Dense row-major copy of the matrix (rows() x cols()).
  std::vector<double> dense() const;

 private:
  void validate_and_index();

  std::vector<std::vector<ColumnEntry>> columns_;
  std::vector<double> beta_;
  std::vector<double> gamma_;
  std::vector<std::size_t> row_nonzeros_;
  std::size_t column_max_ = 0;
};

/// Bernoulli parameters, each strictly inside (0, 1).
class ProbabilityVector {
 public:
  ProbabilityVector() = default;
  explicit ProbabilityVector(std::vector<double> p);

  /// n copies of the same probability.
  static ProbabilityVector uniform(std::size_t n, double p);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t j) const { return p_[j]; }
  std::span<const double> values() const { return p_; }

  /// Odds p_j / (1 - p_j), the point where the partition polynomial is evaluated.
  std::vector<double> odds() const;

 private:
  std::vector<double> p_;
};

/// A set of variables fixed to 0 or 1.
class PartialAssignment {
 public:
  PartialAssignment() = default;

  /// Throws InputError when j is already fixed to a different value.
  PartialAssignment& fix(std::size_t j, bool value);

  bool contains(std::size_t j) const { return fixed_.count(j) != 0; }
  std::size_t size() const { return fixed_.size(); }
  bool empty() const { return fixed_.empty(); }
  const std::map<std::size_t, bool>& entries() const { return fixed_; }

 private:
  std::map<std::size_t, bool> fixed_;
};

/// Maximum number of nonzeros in any column (0 for an empty matrix).
std::size_t column_max_nonzeros(const SparseSystem& system);

/// Fixes the assigned variables: their columns are removed and, for
/// variables set to 1, the column is subtracted from the right-hand side.
/// Remaining columns keep their relative order; all rows are kept.
SparseSystem restrict(const SparseSystem& system, const PartialAssignment& assignment);

/// Indices of the variables not fixed by the assignment, ascending.
std::vector<std::size_t> free_indices(std::size_t n, const PartialAssignment& assignment);

/// Residuals  -b_i + sum_j a_ij x_j  for a 0-1 vector.
std::vector<double> residuals(const SparseSystem& system, std::span<const std::uint8_t> x);

/// sum_i gamma_i (l_i(x) - b_i)^2.
double penalty(const SparseSystem& system, std::span<const std::uint8_t> x);

/// Penalty of the all-zero vector, sum_i gamma_i b_i^2.
double penalty_at_zero(const SparseSystem& system);

}  // namespace smoothcount
