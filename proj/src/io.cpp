#include "smoothcount/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "smoothcount/error.hpp"

namespace smoothcount::io {
namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.is_object()) throw InputError("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t as_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(std::string(what) + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double as_number(const json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> as_numbers(const json& v, const char* what) {
  if (!v.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) out.push_back(as_number(x, what));
  return out;
}

void write_value(std::ostream& os, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        os << "null";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        os << buf;
      }
      break;
    }
    case json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        break;
      }
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const json& e : v) {
        if (!first) os << ',';
        if (flat) {
          if (!first) os << ' ';
        } else {
          os << '\n' << inner;
        }
        write_value(os, e, indent + 1);
        first = false;
      }
      if (!flat) os << '\n' << pad;
      os << ']';
      break;
    }
    case json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        break;
      }
      os << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ',';
        os << '\n' << inner << json(it.key()).dump() << ": ";
        write_value(os, it.value(), indent + 1);
        first = false;
      }
      os << '\n' << pad << '}';
      break;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

Instance parse_instance(const json& doc) {
  try {
    const std::size_t m = as_index(require(doc, "m"), "m");
    const std::size_t n = as_index(require(doc, "n"), "n");
    std::vector<Triplet> entries;
    const json& list = require(doc, "entries");
    if (!list.is_array()) throw InputError("entries must be an array of [i, j, alpha]");
    for (const json& e : list) {
      if (!e.is_array() || e.size() != 3) throw InputError("each entry must be [i, j, alpha]");
      entries.push_back({as_index(e[0], "entry row"), as_index(e[1], "entry column"), as_number(e[2], "alpha")});
    }
    Instance out{SparseSystem(m, n, entries, as_numbers(require(doc, "beta"), "beta"),
                              as_numbers(require(doc, "gamma"), "gamma")),
                 std::nullopt};
    if (auto it = doc.find("p"); it != doc.end() && !it->is_null()) {
      std::vector<double> p = as_numbers(*it, "p");
      if (p.size() != n) throw InputError("p must have n entries");
      out.p = ProbabilityVector(std::move(p));
    }
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("instance: ") + e.what());
  }
}

json instance_to_json(const SparseSystem& system, const std::optional<ProbabilityVector>& p) {
  json entries = json::array();
  for (std::size_t j = 0; j < system.cols(); ++j) {
    for (const ColumnEntry& e : system.column(j)) entries.push_back(json::array({e.row, j, e.value}));
  }
  json out = {{"m", system.rows()},
              {"n", system.cols()},
              {"entries", std::move(entries)},
              {"beta", std::vector<double>(system.beta().begin(), system.beta().end())},
              {"gamma", std::vector<double>(system.gamma().begin(), system.gamma().end())}};
  if (p) out["p"] = std::vector<double>(p->values().begin(), p->values().end());
  return out;
}

Hypergraph parse_hypergraph(const json& doc) {
  try {
    const std::size_t vertices = as_index(require(doc, "vertices"), "vertices");
    const json& list = require(doc, "edges");
    if (!list.is_array()) throw InputError("edges must be an array of vertex lists");
    std::vector<std::vector<std::size_t>> edges;
    for (const json& e : list) {
      if (!e.is_array()) throw InputError("each edge must be an array of vertices");
      std::vector<std::size_t> edge;
      for (const json& v : e) edge.push_back(as_index(v, "vertex"));
      edges.push_back(std::move(edge));
    }
    return Hypergraph(vertices, std::move(edges));
  } catch (const json::exception& e) {
    throw InputError(std::string("hypergraph: ") + e.what());
  }
}

json hypergraph_to_json(const Hypergraph& h) { return {{"vertices", h.vertices()}, {"edges", h.edges()}}; }

Interaction parse_interaction(const json& doc) {
  try {
    const json& list = require(doc, "g");
    if (!list.is_array()) throw InputError("g must be an array of [k, j, value]");
    std::size_t n = 0;
    if (auto it = doc.find("n"); it != doc.end()) n = as_index(*it, "n");
    if (auto it = doc.find("f"); it != doc.end()) n = std::max(n, it->size());
    if (auto it = doc.find("exp_f"); it != doc.end()) n = std::max(n, it->size());
    struct Coupling {
      std::size_t k, j;
      double value;
    };
    std::vector<Coupling> couplings;
    for (const json& e : list) {
      if (!e.is_array() || e.size() != 3) throw InputError("each coupling must be [k, j, value]");
      Coupling c{as_index(e[0], "k"), as_index(e[1], "j"), as_number(e[2], "coupling")};
      if (c.k == c.j) throw InputError("couplings must be off-diagonal");
      n = std::max({n, c.k + 1, c.j + 1});
      couplings.push_back(c);
    }
    Interaction g(n);
    std::vector<char> seen(n * n, 0);
    for (const Coupling& c : couplings) {
      if (seen[c.k * n + c.j] && g(c.k, c.j) != c.value) {
        throw InputError("conflicting values for coupling (" + std::to_string(c.k) + ", " + std::to_string(c.j) +
                         ")");
      }
      seen[c.k * n + c.j] = seen[c.j * n + c.k] = 1;
      g.set(c.k, c.j, c.value);
    }
    return g;
  } catch (const json::exception& e) {
    throw InputError(std::string("ising: ") + e.what());
  }
}

IsingModel parse_ising(const json& doc) {
  IsingModel model;
  model.g = parse_interaction(doc);
  const std::size_t n = model.g.size();
  const bool has_f = doc.contains("f");
  const bool has_exp = doc.contains("exp_f");
  if (has_f == has_exp) throw InputError("ising: exactly one of \"f\" and \"exp_f\" is required");
  if (has_f) {
    model.f = as_numbers(doc["f"], "f");
  } else {
    for (double e : as_numbers(doc["exp_f"], "exp_f")) {
      if (!(e > 0.0)) throw InputError("exp_f entries must be positive");
      model.f.push_back(std::log(e));
    }
  }
  if (model.f.size() != n) throw InputError("ising: field must have one entry per spin");
  return model;
}

json ising_to_json(const IsingModel& model) {
  json g = json::array();
  const std::size_t n = model.g.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (model.g(k, j) != 0.0) g.push_back(json::array({k, j, model.g(k, j)}));
    }
  }
  return {{"n", n}, {"g", std::move(g)}, {"f", model.f}};
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json(std::ostream& os, const json& doc) {
  write_value(os, doc, 0);
  os << '\n';
}

std::string dump(const json& doc) {
  std::ostringstream os;
  write_json(os, doc);
  return os.str();
}

}  // namespace smoothcount::io
