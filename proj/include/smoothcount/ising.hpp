#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smoothcount/interpolation.hpp"
#include "smoothcount/model.hpp"

namespace smoothcount {

/// Dense symmetric n x n matrix with zero diagonal, row-major.
class Interaction {
 public:
  Interaction() = default;
  explicit Interaction(std::size_t n) : n_(n), g_(n * n, 0.0) {}
  /// Throws InputError unless square, exactly symmetric, zero-diagonal and finite.
  Interaction(std::size_t n, std::vector<double> row_major);

  std::size_t size() const { return n_; }
  double operator()(std::size_t k, std::size_t j) const { return g_[k * n_ + j]; }
  /// Sets both (k, j) and (j, k); k != j.
  void set(std::size_t k, std::size_t j, double value);
  std::span<const double> data() const { return g_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> g_;
};

// Partition function sum_{eta in {-1,1}^n} exp(sum_{k<j} g_kj eta_k eta_j + sum_j f_j eta_j).
struct IsingModel {
  Interaction g;
  std::vector<double> f;
};

struct IsingConversion {
  IsingModel model;
  double log_constant = 0.0;  ///< expectation = exp(log_constant) * partition function
};

/// Substitution xi = (eta + 1)/2 turning the smoothed expectation into an
/// Ising partition function times a constant.
IsingConversion to_ising(const SparseSystem& system, const ProbabilityVector& p);

struct PartitionValue {
  double value = 0.0;
  double log_value = 0.0;
};

struct BruteForceOptions {
  ComputeOptions compute;
  std::size_t cap = 24;  ///< maximum number of spins / variables
};

/// Exact sum over all 2^n spin vectors, accumulated in log space.
PartitionValue partition_bruteforce(const IsingModel& model, const BruteForceOptions& options = {});

struct LipschitzReport {
  bool passed = false;
  std::vector<double> column_sums;  ///< sum_{j != k} |g_jk| per k
  double bound = 0.0;               ///< 1 - delta
};

/// Checks sum_{j != k} |g_jk| <= 1 - delta for every k.
LipschitzReport lipschitz_condition(const IsingModel& model, double delta);
LipschitzReport lipschitz_condition(const Interaction& g, double delta);

struct EigenDecomposition {
  std::vector<double> values;   ///< eigenvalues, ascending
  std::vector<double> vectors;  ///< column i (row-major n x n) is the eigenvector of values[i]
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
/// 1e-12 times the matrix Frobenius norm (or absolutely, for tiny matrices).
EigenDecomposition jacobi_eigen(std::span<const double> symmetric, std::size_t n);

struct ReverseIsing {
  SparseSystem system;     ///< n x n, gamma = 1, beta = 0
  double lambda_max = 0.0; ///< largest eigenvalue of G
  double residual = 0.0;   ///< max over k != j of |-(1/2)(A^T A)_kj - g_kj|
};

/// Writes g_kj = -(1/2) sum_i a_ik a_ij (k != j) via 2(lambda I - G) = A^T A.
/// Throws SolverError if the off-diagonal residual exceeds 1e-8.
ReverseIsing from_ising(const Interaction& g);

/// Per-variable threshold on Re f_j below which the partition function with
/// complex field stays nonzero, for a system from from_ising and radii rho:
///   (1/2) ln rho_j - (1/2) sum_i a_ij sum_k a_ik.
std::vector<double> field_threshold(const SparseSystem& system, std::span<const double> rho);

}  // namespace smoothcount
