#include "smoothcount/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "smoothcount/detail/logsum.hpp"
#include "smoothcount/detail/parallel.hpp"
#include "smoothcount/error.hpp"

namespace smoothcount {
namespace {

void check_cap(std::size_t size, std::size_t cap, const char* what) {
  if (size > cap || size >= 63) {
    throw WorkLimitError(std::string("exhaustive oracle over ") + std::to_string(size) + " " + what +
                         " exceeds the cap of " + std::to_string(cap));
  }
}

template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Calls visit(mask, residual) for each 0-1 vector of a chunk.
template <class Visit>
void for_each_vector_in_chunk(const SparseSystem& system, std::uint64_t chunk, std::uint64_t total,
                              Visit&& visit) {
  const std::uint64_t begin = chunk * detail::kChunkSize;
  const std::uint64_t end = std::min(total, begin + detail::kChunkSize);
  std::vector<double> residual(system.rows());
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = -system.beta()[i];
    for (std::size_t j = 0; j < system.cols(); ++j) {
      if ((mask >> j) & 1) {
        for (const ColumnEntry& e : system.column(j)) residual[e.row] += e.value;
      }
    }
    visit(mask, std::span<const double>(residual));
  }
}

double weighted_square(const SparseSystem& system, std::span<const double> residual) {
  double pen = 0.0;
  for (std::size_t i = 0; i < residual.size(); ++i) pen += system.gamma()[i] * residual[i] * residual[i];
  return pen;
}

}  // namespace

std::complex<double> brute_force_P(const SparseSystem& system, std::span<const std::complex<double>> z,
                                   const OracleOptions& options) {
  const std::size_t n = system.cols();
  if (z.size() != n) throw InputError("z must have one entry per variable");
  check_cap(n, options.cap, "variables");
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = detail::chunk_count(total);
  std::vector<std::complex<double>> partial(chunks);
  detail::for_each_chunk(chunks, options.threads, [&](std::uint64_t chunk) {
    std::complex<double> acc = 0.0;
    for_each_vector_in_chunk(system, chunk, total, [&](std::uint64_t mask, std::span<const double> r) {
      std::complex<double> monomial = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if ((mask >> j) & 1) monomial *= z[j];
      }
      acc += monomial * std::exp(-weighted_square(system, r));
    });
    partial[chunk] = acc;
  });
  return pairwise_sum(std::span<const std::complex<double>>(partial));
}

OracleValue brute_force_expectation(const SparseSystem& system, const ProbabilityVector& p,
                                    const OracleOptions& options) {
  const std::size_t n = system.cols();
  if (p.size() != n) throw InputError("p must have one entry per variable");
  check_cap(n, options.cap, "variables");
  std::vector<double> log_p(n), log_q(n);
  for (std::size_t j = 0; j < n; ++j) {
    log_p[j] = std::log(p[j]);
    log_q[j] = std::log1p(-p[j]);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = detail::chunk_count(total);
  std::vector<detail::LogSum> partial(chunks);
  detail::for_each_chunk(chunks, options.threads, [&](std::uint64_t chunk) {
    detail::LogSum acc;
    for_each_vector_in_chunk(system, chunk, total, [&](std::uint64_t mask, std::span<const double> r) {
      double log_prob = 0.0;
      for (std::size_t j = 0; j < n; ++j) log_prob += ((mask >> j) & 1) ? log_p[j] : log_q[j];
      acc.add(log_prob - weighted_square(system, r));
    });
    partial[chunk] = acc;
  });
  detail::LogSum sum;
  for (const auto& part : partial) sum.merge(part);
  OracleValue out;
  out.log_value = sum.value();
  out.value = std::exp(out.log_value);
  return out;
}

std::uint64_t count_solutions(const SparseSystem& system, double tolerance, const OracleOptions& options) {
  const std::size_t n = system.cols();
  check_cap(n, options.cap, "variables");
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = detail::chunk_count(total);
  std::vector<std::uint64_t> partial(chunks, 0);
  detail::for_each_chunk(chunks, options.threads, [&](std::uint64_t chunk) {
    std::uint64_t count = 0;
    for_each_vector_in_chunk(system, chunk, total, [&](std::uint64_t, std::span<const double> r) {
      if (std::all_of(r.begin(), r.end(), [&](double v) { return std::abs(v) <= tolerance; })) ++count;
    });
    partial[chunk] = count;
  });
  std::uint64_t total_count = 0;
  for (std::uint64_t c : partial) total_count += c;
  return total_count;
}

std::complex<double> proposition31_sum(const SparseSystem& matrix, std::span<const std::complex<double>> z,
                                       const OracleOptions& options) {
  const std::size_t n = matrix.cols();
  const std::size_t m = matrix.rows();
  if (z.size() != n) throw InputError("z must have one entry per column");
  check_cap(m, std::min<std::size_t>(options.cap, 20), "sign variables");
  const std::uint64_t total = std::uint64_t{1} << m;
  const std::uint64_t chunks = detail::chunk_count(total);
  std::vector<std::complex<double>> partial(chunks);
  detail::for_each_chunk(chunks, options.threads, [&](std::uint64_t chunk) {
    const std::uint64_t begin = chunk * detail::kChunkSize;
    const std::uint64_t end = std::min(total, begin + detail::kChunkSize);
    std::complex<double> acc = 0.0;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      std::complex<double> product = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        double phase = 0.0;
        for (const ColumnEntry& e : matrix.column(j)) phase += ((mask >> e.row) & 1) ? e.value : -e.value;
        product *= 1.0 + z[j] * std::polar(1.0, phase);
      }
      acc += product;
    }
    partial[chunk] = acc;
  });
  return pairwise_sum(std::span<const std::complex<double>>(partial));
}

}  // namespace smoothcount
