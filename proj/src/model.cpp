#include "smoothcount/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smoothcount/error.hpp"

namespace smoothcount {

SparseSystem::SparseSystem(std::size_t rows, std::size_t cols, std::span<const Triplet> entries,
                           std::vector<double> beta, std::vector<double> gamma)
    : columns_(cols), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  if (beta_.size() != rows || gamma_.size() != rows) {
    throw InputError("beta and gamma must have one entry per row (" + std::to_string(rows) + ")");
  }
  for (const Triplet& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw InputError("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    columns_[t.col].push_back({t.row, t.value});
  }
  validate_and_index();
}

SparseSystem SparseSystem::from_columns(std::size_t rows, std::vector<std::vector<ColumnEntry>> columns,
                                        std::vector<double> beta, std::vector<double> gamma) {
  if (beta.size() != rows || gamma.size() != rows) {
    throw InputError("beta and gamma must have one entry per row (" + std::to_string(rows) + ")");
  }
  SparseSystem s;
  s.columns_ = std::move(columns);
  s.beta_ = std::move(beta);
  s.gamma_ = std::move(gamma);
  for (const auto& col : s.columns_) {
    for (const ColumnEntry& e : col) {
      if (e.row >= rows) throw InputError("row index " + std::to_string(e.row) + " out of range");
    }
  }
  s.validate_and_index();
  return s;
}

void SparseSystem::validate_and_index() {
  for (std::size_t i = 0; i < beta_.size(); ++i) {
    if (!std::isfinite(beta_[i])) throw InputError("beta[" + std::to_string(i) + "] is not finite");
    if (!(gamma_[i] > 0.0) || !std::isfinite(gamma_[i])) {
      throw InputError("gamma[" + std::to_string(i) + "] must be positive and finite");
    }
  }
  row_nonzeros_.assign(beta_.size(), 0);
  column_max_ = 0;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    auto& col = columns_[j];
    std::erase_if(col, [](const ColumnEntry& e) { return e.value == 0.0; });
    std::sort(col.begin(), col.end(),
              [](const ColumnEntry& a, const ColumnEntry& b) { return a.row < b.row; });
    for (std::size_t k = 0; k < col.size(); ++k) {
      if (!std::isfinite(col[k].value)) {
        throw InputError("coefficient in column " + std::to_string(j) + " is not finite");
      }
      if (k > 0 && col[k].row == col[k - 1].row) {
        throw InputError("duplicate entry (" + std::to_string(col[k].row) + ", " + std::to_string(j) + ")");
      }
      ++row_nonzeros_[col[k].row];
    }
    column_max_ = std::max(column_max_, col.size());
  }
}

std::size_t SparseSystem::nonzeros() const {
  std::size_t total = 0;
  for (const auto& col : columns_) total += col.size();
  return total;
}

SparseSystem SparseSystem::with_gamma(std::vector<double> gamma) const {
  return from_columns(rows(), columns_, beta_, std::move(gamma));
}

std::vector<double> SparseSystem::dense() const {
  std::vector<double> a(rows() * cols(), 0.0);
  for (std::size_t j = 0; j < cols(); ++j) {
    for (const ColumnEntry& e : columns_[j]) a[e.row * cols() + j] = e.value;
  }
  return a;
}

ProbabilityVector::ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
  for (std::size_t j = 0; j < p_.size(); ++j) {
    if (!(p_[j] > 0.0 && p_[j] < 1.0)) {
      throw InputError("probability p[" + std::to_string(j) + "] = " + std::to_string(p_[j]) +
                       " is not strictly between 0 and 1");
    }
  }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n, double p) {
  return ProbabilityVector(std::vector<double>(n, p));
}

std::vector<double> ProbabilityVector::odds() const {
  std::vector<double> x(p_.size());
  for (std::size_t j = 0; j < p_.size(); ++j) x[j] = p_[j] / (1.0 - p_[j]);
  return x;
}

PartialAssignment& PartialAssignment::fix(std::size_t j, bool value) {
  auto [it, inserted] = fixed_.emplace(j, value);
  if (!inserted && it->second != value) {
    throw InputError("variable " + std::to_string(j) + " fixed to both 0 and 1");
  }
  return *this;
}

std::size_t column_max_nonzeros(const SparseSystem& system) { return system.column_max(); }

std::vector<std::size_t> free_indices(std::size_t n, const PartialAssignment& assignment) {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!assignment.contains(j)) out.push_back(j);
  }
  return out;
}

SparseSystem restrict(const SparseSystem& system, const PartialAssignment& assignment) {
  const std::size_t n = system.cols();
  std::vector<double> beta(system.beta().begin(), system.beta().end());
  for (const auto& [j, value] : assignment.entries()) {
    if (j >= n) {
      throw InputError("assignment index " + std::to_string(j) + " out of range for " +
                       std::to_string(n) + " variables");
    }
    if (value) {
      for (const ColumnEntry& e : system.column(j)) beta[e.row] -= e.value;
    }
  }
  std::vector<std::vector<ColumnEntry>> columns;
  columns.reserve(n - assignment.size());
  for (std::size_t j = 0; j < n; ++j) {
    if (assignment.contains(j)) continue;
    auto col = system.column(j);
    columns.emplace_back(col.begin(), col.end());
  }
  return SparseSystem::from_columns(system.rows(), std::move(columns), std::move(beta),
                                    std::vector<double>(system.gamma().begin(), system.gamma().end()));
}

std::vector<double> residuals(const SparseSystem& system, std::span<const std::uint8_t> x) {
  if (x.size() != system.cols()) {
    throw InputError("vector has " + std::to_string(x.size()) + " components, system has " +
                     std::to_string(system.cols()) + " variables");
  }
  std::vector<double> r(system.rows());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -system.beta()[i];
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 1) throw InputError("component " + std::to_string(j) + " is not 0 or 1");
    if (x[j] == 0) continue;
    for (const ColumnEntry& e : system.column(j)) r[e.row] += e.value;
  }
  return r;
}

double penalty(const SparseSystem& system, std::span<const std::uint8_t> x) {
  const std::vector<double> r = residuals(system, x);
  double total = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) total += system.gamma()[i] * r[i] * r[i];
  return total;
}

double penalty_at_zero(const SparseSystem& system) {
  double total = 0.0;
  for (std::size_t i = 0; i < system.rows(); ++i) {
    total += system.gamma()[i] * system.beta()[i] * system.beta()[i];
  }
  return total;
}

}  // namespace smoothcount
