#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smoothcount/model.hpp"

namespace smoothcount {

/// Vertices 0..vertices-1 and a list of edges (vertex sets).
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Throws InputError on empty edges, out-of-range or repeated vertices.
  Hypergraph(std::size_t vertices, std::vector<std::vector<std::size_t>> edges);

  std::size_t vertices() const { return vertices_; }
  const std::vector<std::vector<std::size_t>>& edges() const { return edges_; }
  std::vector<std::size_t> degrees() const;

 private:
  std::size_t vertices_ = 0;
  std::vector<std::vector<std::size_t>> edges_;
};

struct Regularity {
  bool ok = false;
  std::size_t k = 0;       ///< common edge size
  std::size_t degree = 0;  ///< common vertex degree (Delta)
  std::string violation;   ///< first violation, empty when ok
  std::vector<std::size_t> offending_vertices;
};

Regularity validate_uniform_regular(const Hypergraph& h);

/// Default polydisc parameter for automatic gamma selection.
inline constexpr double kDefaultHypergraphDelta = 1e-3;

struct HypergraphInstance {
  SparseSystem system;
  ProbabilityVector p;
  std::size_t k = 0;
  std::size_t degree = 0;
  double gamma = 0.0;
  double delta = 0.0;                       ///< used for automatic gamma
  double evaluation_point = 0.0;            ///< p / (1 - p)
  std::optional<double> target_gamma;       ///< matching regime only
  std::optional<bool> target_admissible;    ///< matching regime only
};

/// Vertex-by-edge incidence system: one row per vertex, a_vs = 1 iff v in s,
/// b_v = 1, gamma_v = gamma. No regularity required.
SparseSystem incidence_system(const Hypergraph& h, double gamma);

/// Perfect matchings of a k-uniform Delta-regular hypergraph (Delta >= 3),
/// edges selected with probability 1/Delta. Without an explicit gamma the
/// largest admissible uniform gamma at `delta` is used.
HypergraphInstance perfect_matching_instance(const Hypergraph& h, std::optional<double> gamma,
                                             double delta = kDefaultHypergraphDelta);

/// Matchings: edges selected with probability omega/Delta. Automatic gamma is
/// min(ln(1/omega)/k, largest admissible matching gamma).
HypergraphInstance matching_instance(const Hypergraph& h, double omega, std::optional<double> gamma,
                                     double delta = kDefaultHypergraphDelta);

/// sum_v (#(C, v) - 1)^2 for an edge subset C given by edge indices.
std::uint64_t coverage_penalty(const Hypergraph& h, std::span<const std::size_t> edge_subset);

}  // namespace smoothcount
