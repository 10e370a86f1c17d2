#include "smoothcount/ising.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smoothcount/detail/logsum.hpp"
#include "smoothcount/detail/parallel.hpp"
#include "smoothcount/error.hpp"

namespace smoothcount {

Interaction::Interaction(std::size_t n, std::vector<double> row_major) : n_(n), g_(std::move(row_major)) {
  if (g_.size() != n * n) throw InputError("interaction matrix must be n x n");
  for (std::size_t k = 0; k < n; ++k) {
    if (g_[k * n + k] != 0.0) throw InputError("interaction matrix must have a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(g_[k * n + j])) throw InputError("interaction matrix has a non-finite entry");
      if (g_[k * n + j] != g_[j * n + k]) throw InputError("interaction matrix must be symmetric");
    }
  }
}

void Interaction::set(std::size_t k, std::size_t j, double value) {
  if (k >= n_ || j >= n_) throw InputError("interaction index out of range");
  if (k == j) throw InputError("interaction diagonal must stay zero");
  g_[k * n_ + j] = value;
  g_[j * n_ + k] = value;
}

IsingConversion to_ising(const SparseSystem& system, const ProbabilityVector& p) {
  const std::size_t n = system.cols();
  const std::size_t m = system.rows();
  if (p.size() != n) throw InputError("p must have one entry per variable");

  // shift_i = -b_i + (1/2) sum_k a_ik
  std::vector<double> shift(m);
  for (std::size_t i = 0; i < m; ++i) shift[i] = -system.beta()[i];
  std::vector<std::vector<ColumnEntry>> rows(m);
  double squares = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (const ColumnEntry& e : system.column(j)) {
      shift[e.row] += 0.5 * e.value;
      rows[e.row].push_back({j, e.value});
      squares += system.gamma()[e.row] * e.value * e.value;
    }
  }

  IsingConversion out;
  std::vector<double> g(n * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = -0.5 * system.gamma()[i];
    const auto& r = rows[i];  // ascending column order
    for (std::size_t a = 0; a < r.size(); ++a) {
      for (std::size_t b = a + 1; b < r.size(); ++b) g[r[a].row * n + r[b].row] += w * r[a].value * r[b].value;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j < n; ++j) g[j * n + k] = g[k * n + j];
  }
  out.model.g = Interaction(n, std::move(g));

  out.model.f.resize(n);
  double log_c = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double field = 0.5 * std::log(p[j] / (1.0 - p[j]));
    for (const ColumnEntry& e : system.column(j)) field -= system.gamma()[e.row] * e.value * shift[e.row];
    out.model.f[j] = field;
    log_c += 0.5 * (std::log(p[j]) + std::log1p(-p[j]));
  }
  for (std::size_t i = 0; i < m; ++i) log_c -= system.gamma()[i] * shift[i] * shift[i];
  log_c -= 0.25 * squares;
  out.log_constant = log_c;
  return out;
}

PartitionValue partition_bruteforce(const IsingModel& model, const BruteForceOptions& options) {
  const std::size_t n = model.g.size();
  if (model.f.size() != n) throw InputError("field must have one entry per spin");
  if (n > options.cap || n >= 63) {
    throw WorkLimitError("brute force over " + std::to_string(n) + " spins exceeds the cap of " +
                         std::to_string(options.cap));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = detail::chunk_count(total);
  std::vector<detail::LogSum> partial(chunks);
  detail::for_each_chunk(chunks, options.compute.threads, [&](std::uint64_t chunk) {
    const std::uint64_t begin = chunk * detail::kChunkSize;
    const std::uint64_t end = std::min(total, begin + detail::kChunkSize);
    std::vector<double> eta(n);
    detail::LogSum acc;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      for (std::size_t j = 0; j < n; ++j) eta[j] = (mask >> j) & 1 ? 1.0 : -1.0;
      double energy = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        energy += model.f[k] * eta[k];
        for (std::size_t j = k + 1; j < n; ++j) energy += model.g(k, j) * eta[k] * eta[j];
      }
      acc.add(energy);
    }
    partial[chunk] = acc;
  });
  detail::LogSum sum;
  for (const auto& p : partial) sum.merge(p);
  PartitionValue out;
  out.log_value = sum.value();
  out.value = std::exp(out.log_value);
  return out;
}

LipschitzReport lipschitz_condition(const Interaction& g, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw InputError("delta must lie in [0, 1)");
  const std::size_t n = g.size();
  LipschitzReport out;
  out.bound = 1.0 - delta;
  out.column_sums.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) out.column_sums[k] += std::abs(g(j, k));
    }
  }
  out.passed = std::all_of(out.column_sums.begin(), out.column_sums.end(),
                           [&](double s) { return s <= out.bound; });
  return out;
}

LipschitzReport lipschitz_condition(const IsingModel& model, double delta) {
  return lipschitz_condition(model.g, delta);
}

EigenDecomposition jacobi_eigen(std::span<const double> symmetric, std::size_t n) {
  if (symmetric.size() != n * n) throw InputError("matrix must be n x n");
  std::vector<double> a(symmetric.begin(), symmetric.end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double frob = 0.0;
  for (double x : a) frob += x * x;
  const double tol = 1e-12 * std::max(1.0, std::sqrt(frob));

  EigenDecomposition out;
  constexpr std::size_t kMaxSweeps = 100;
  for (; out.sweeps < kMaxSweeps; ++out.sweeps) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q) off += a[p * n + q] * a[p * n + q];
      }
    }
    if (std::sqrt(off) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t col = 0; col < n; ++col) {
    out.values[col] = a[order[col] * n + order[col]];
    for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + col] = v[k * n + order[col]];
  }
  return out;
}

ReverseIsing from_ising(const Interaction& g) {
  const std::size_t n = g.size();
  ReverseIsing out;
  if (n == 0) {
    out.system = SparseSystem::from_columns(0, {}, {}, {});
    return out;
  }
  const EigenDecomposition eig = jacobi_eigen(g.data(), n);
  out.lambda_max = eig.values.back();

  // Row r of A is sqrt(2 (lambda - mu_r)) v_r^T, largest scale first.
  double scale_max = 0.0;
  std::vector<double> a(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double w = 2.0 * (out.lambda_max - eig.values[r]);
    if (w < 1e-12) w = 0.0;
    const double scale = std::sqrt(w);
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(eig.vectors[k * n + r]) > 1e-12) {
        sign = eig.vectors[k * n + r] < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      a[r * n + k] = sign * scale * eig.vectors[k * n + r];
      scale_max = std::max(scale_max, std::abs(a[r * n + k]));
    }
  }
  const double chop = 1e-14 * scale_max;
  std::vector<std::vector<ColumnEntry>> columns(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(a[r * n + k]) > chop) columns[k].push_back({r, a[r * n + k]});
    }
  }
  out.system = SparseSystem::from_columns(n, std::move(columns), std::vector<double>(n, 0.0),
                                          std::vector<double>(n, 1.0));

  const std::vector<double> dense = out.system.dense();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j < n; ++j) {
      double gram = 0.0;
      for (std::size_t r = 0; r < n; ++r) gram += dense[r * n + k] * dense[r * n + j];
      out.residual = std::max(out.residual, std::abs(-0.5 * gram - g(k, j)));
    }
  }
  if (out.residual > 1e-8) {
    throw SolverError("factorization residual " + std::to_string(out.residual) + " exceeds 1e-8");
  }
  return out;
}

std::vector<double> field_threshold(const SparseSystem& system, std::span<const double> rho) {
  const std::size_t n = system.cols();
  if (rho.size() != n) throw InputError("rho must have one entry per variable");
  std::vector<double> row_sum(system.rows(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const ColumnEntry& e : system.column(j)) row_sum[e.row] += e.value;
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(rho[j] > 0.0)) throw InputError("rho must be positive");
    double s = 0.0;
    for (const ColumnEntry& e : system.column(j)) s += e.value * row_sum[e.row];
    out[j] = 0.5 * std::log(rho[j]) - 0.5 * s;
  }
  return out;
}

}  // namespace smoothcount
