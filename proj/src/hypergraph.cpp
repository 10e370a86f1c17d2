#include "smoothcount/hypergraph.hpp"

#include <algorithm>
#include <cmath>

#include "smoothcount/error.hpp"
#include "smoothcount/zerofree.hpp"

namespace smoothcount {

Hypergraph::Hypergraph(std::size_t vertices, std::vector<std::vector<std::size_t>> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  for (std::size_t s = 0; s < edges_.size(); ++s) {
    const auto& e = edges_[s];
    if (e.empty()) throw InputError("edge " + std::to_string(s) + " is empty");
    std::vector<std::size_t> sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= vertices_) {
      throw InputError("edge " + std::to_string(s) + " has vertex " + std::to_string(sorted.back()) +
                       " out of range");
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("edge " + std::to_string(s) + " repeats a vertex");
    }
  }
}

std::vector<std::size_t> Hypergraph::degrees() const {
  std::vector<std::size_t> deg(vertices_, 0);
  for (const auto& e : edges_) {
    for (std::size_t v : e) ++deg[v];
  }
  return deg;
}

Regularity validate_uniform_regular(const Hypergraph& h) {
  Regularity r;
  if (h.edges().empty()) {
    r.violation = "hypergraph has no edges";
    return r;
  }
  r.k = h.edges().front().size();
  for (std::size_t s = 0; s < h.edges().size(); ++s) {
    if (h.edges()[s].size() != r.k) {
      r.violation = "edge " + std::to_string(s) + " has size " + std::to_string(h.edges()[s].size()) +
                    ", expected " + std::to_string(r.k);
      return r;
    }
  }
  const std::vector<std::size_t> deg = h.degrees();
  r.degree = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] != r.degree) r.offending_vertices.push_back(v);
  }
  if (!r.offending_vertices.empty()) {
    const std::size_t v = r.offending_vertices.front();
    r.violation = "vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]) + ", expected " +
                  std::to_string(r.degree);
    return r;
  }
  r.ok = true;
  return r;
}

SparseSystem incidence_system(const Hypergraph& h, double gamma) {
  std::vector<std::vector<ColumnEntry>> columns;
  columns.reserve(h.edges().size());
  for (const auto& e : h.edges()) {
    std::vector<ColumnEntry> col;
    for (std::size_t v : e) col.push_back({v, 1.0});
    columns.push_back(std::move(col));
  }
  return SparseSystem::from_columns(h.vertices(), std::move(columns), std::vector<double>(h.vertices(), 1.0),
                                    std::vector<double>(h.vertices(), gamma));
}

namespace {

Regularity require_regular(const Hypergraph& h) {
  Regularity r = validate_uniform_regular(h);
  if (!r.ok) throw InputError("hypergraph is not uniform and regular: " + r.violation);
  if (r.degree < 3) throw InputError("vertex degree must be at least 3");
  return r;
}

void validate_gamma(std::optional<double> gamma) {
  if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) throw InputError("gamma must be positive");
}

}  // namespace

HypergraphInstance perfect_matching_instance(const Hypergraph& h, std::optional<double> gamma, double delta) {
  const Regularity r = require_regular(h);
  validate_gamma(gamma);
  HypergraphInstance out;
  out.k = r.k;
  out.degree = r.degree;
  out.delta = delta;
  out.gamma = gamma ? *gamma : max_gamma_uniform(r.k, delta, r.degree).gamma;
  out.system = incidence_system(h, out.gamma);
  const double d = static_cast<double>(r.degree);
  out.p = ProbabilityVector::uniform(h.edges().size(), 1.0 / d);
  out.evaluation_point = 1.0 / (d - 1.0);
  return out;
}

HypergraphInstance matching_instance(const Hypergraph& h, double omega, std::optional<double> gamma,
                                     double delta) {
  if (!(omega > 0.0 && omega <= 1.0)) throw InputError("omega must lie in (0, 1]");
  const Regularity r = require_regular(h);
  validate_gamma(gamma);
  const MatchingGamma mg = max_gamma_matching(r.k, r.degree, omega, delta);
  HypergraphInstance out;
  out.k = r.k;
  out.degree = r.degree;
  out.delta = delta;
  out.target_gamma = mg.target_gamma;
  out.target_admissible = mg.target_admissible;
  if (gamma) {
    out.gamma = *gamma;
  } else {
    out.gamma = std::min(mg.target_gamma, mg.gamma);
    // omega = 1 gives a zero target; fall back to the admissible maximum.
    if (!(out.gamma > 0.0)) out.gamma = mg.gamma;
  }
  if (!(out.gamma > 0.0)) throw InputError("no positive gamma is admissible");
  out.system = incidence_system(h, out.gamma);
  const double d = static_cast<double>(r.degree);
  out.p = ProbabilityVector::uniform(h.edges().size(), omega / d);
  out.evaluation_point = omega / (d - omega);
  return out;
}

std::uint64_t coverage_penalty(const Hypergraph& h, std::span<const std::size_t> edge_subset) {
  std::vector<std::int64_t> cover(h.vertices(), 0);
  for (std::size_t s : edge_subset) {
    if (s >= h.edges().size()) throw InputError("edge index " + std::to_string(s) + " out of range");
    for (std::size_t v : h.edges()[s]) ++cover[v];
  }
  std::uint64_t total = 0;
  for (std::int64_t c : cover) total += static_cast<std::uint64_t>((c - 1) * (c - 1));
  return total;
}

}  // namespace smoothcount
