#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "smoothcount/hypergraph.hpp"
#include "smoothcount/ising.hpp"
#include "smoothcount/model.hpp"

namespace smoothcount::io {

using nlohmann::json;

// Instance schema (indices 0-based):
//   {"m": int, "n": int, "entries": [[i, j, alpha], ...],
//    "beta": [...], "gamma": [...], "p": [...] (optional)}
struct Instance {
  SparseSystem system;
  std::optional<ProbabilityVector> p;
};

Instance parse_instance(const json& doc);
json instance_to_json(const SparseSystem& system, const std::optional<ProbabilityVector>& p = std::nullopt);

// Hypergraph schema: {"vertices": int, "edges": [[v, ...], ...]}
Hypergraph parse_hypergraph(const json& doc);
json hypergraph_to_json(const Hypergraph& h);

// Ising schema: {"n": int (optional), "g": [[k, j, value], ...],
//                "f": [...] or "exp_f": [...]}
// Each pair may be listed once or twice (with equal values).
IsingModel parse_ising(const json& doc);
/// Interaction matrix only; "f" is optional.
Interaction parse_interaction(const json& doc);
json ising_to_json(const IsingModel& model);

/// Reads and parses a JSON file. Parse errors become InputError carrying
/// the byte position.
json read_json_file(const std::string& path);
json parse_json_text(const std::string& text);

/// Serializes with every floating-point number printed to 17 significant
/// digits; non-finite numbers become null. Newline-terminated.
void write_json(std::ostream& os, const json& doc);
std::string dump(const json& doc);

}  // namespace smoothcount::io
