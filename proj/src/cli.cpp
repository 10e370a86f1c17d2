#include "smoothcount/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "smoothcount/error.hpp"
#include "smoothcount/evaluator.hpp"
#include "smoothcount/hypergraph.hpp"
#include "smoothcount/io.hpp"
#include "smoothcount/ising.hpp"
#include "smoothcount/maxent.hpp"
#include "smoothcount/oracle.hpp"
#include "smoothcount/random_instance.hpp"
#include "smoothcount/rounding.hpp"
#include "smoothcount/zerofree.hpp"

namespace smoothcount::cli {
namespace {

using io::json;

struct Settings {
  double epsilon = 1e-3;
  std::optional<double> delta;
  std::string input;
  double work_limit = 1e9;
  std::size_t threads = 1;
  std::uint64_t seed = 0;

  bool geometric = false;
  bool force = false;
  bool evaluate = false;
  bool general = false;
  std::optional<double> general_p;
  std::vector<std::string> fixes;
  std::vector<std::size_t> order;
  std::vector<double> rho;
  std::size_t k = 0;
  std::string degree = "inf";
  double omega = 0.5;
  std::optional<double> gamma;
  double tolerance = 1e-9;
  std::size_t gen_n = 8;
  std::size_t gen_m = 4;
  bool nonnegative = false;
};

struct Outcome {
  json doc;
  int code = kExitOk;
};

class Context {
 public:
  Context(const Settings& s, std::istream& in) : s_(s), in_(in) {}

  const Settings& settings() const { return s_; }

  json document() const {
    if (s_.input.empty() || s_.input == "-") {
      std::ostringstream buf;
      buf << in_.rdbuf();
      return io::parse_json_text(buf.str());
    }
    return io::read_json_file(s_.input);
  }

  io::Instance instance() const { return io::parse_instance(document()); }

  ComputeOptions compute() const { return {s_.threads, s_.work_limit}; }

  EvalOptions eval_options() const { return {compute(), s_.delta, s_.force}; }

  OracleOptions oracle_options() const {
    OracleOptions o;
    o.threads = s_.threads;
    return o;
  }

 private:
  const Settings& s_;
  std::istream& in_;
};

const ProbabilityVector& require_p(const io::Instance& inst) {
  if (!inst.p) throw InputError("this command needs a \"p\" field in the instance");
  return *inst.p;
}

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json evaluation_json(const EvaluationResult& r) {
  return {{"log_value", r.log_value},   {"value", r.value()},         {"epsilon", r.epsilon},
          {"delta", r.delta},           {"degree", r.degree},         {"certified", r.certified},
          {"tail_bound", r.tail_bound}, {"exact", r.exact},           {"geometric", r.geometric},
          {"radius_assumption", r.radius_assumption},                 {"terms", r.terms}};
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

std::optional<std::size_t> parse_degree(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::nullopt;
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw InputError("--Delta must be a positive integer or \"inf\"");
  return value;
}

PartialAssignment parse_fixes(const std::vector<std::string>& fixes, std::size_t n) {
  PartialAssignment a;
  for (const std::string& f : fixes) {
    const auto eq = f.find('=');
    const std::string index = f.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : f.substr(eq + 1);
    if (eq == 0 || index.find_first_not_of("0123456789") != std::string::npos || (value != "0" && value != "1")) {
      throw InputError("--fix expects j=0 or j=1, got \"" + f + "\"");
    }
    const std::size_t j = std::stoul(index);
    if (j >= n) throw InputError("--fix index " + index + " out of range");
    a.fix(j, value == "1");
  }
  return a;
}

std::vector<std::complex<double>> evaluation_points(const json& doc, const io::Instance& inst) {
  const std::size_t n = inst.system.cols();
  std::vector<std::complex<double>> z;
  if (auto it = doc.find("z"); it != doc.end()) {
    if (!it->is_array() || it->size() != n) throw InputError("\"z\" must have one entry per variable");
    for (const json& v : *it) {
      if (v.is_number()) {
        z.emplace_back(v.get<double>(), 0.0);
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        z.emplace_back(v[0].get<double>(), v[1].get<double>());
      } else {
        throw InputError("\"z\" entries must be numbers or [re, im] pairs");
      }
    }
    return z;
  }
  for (double x : require_p(inst).odds()) z.emplace_back(x, 0.0);
  return z;
}

json certificate_json(const PolydiscReport& report) {
  json violated = json::array();
  for (const ConstraintCheck& c : report.violated) violated.push_back(describe(c));
  return {{"passed", report.passed},
          {"rho", report.certificate.rho},
          {"lambda", report.certificate.lambda},
          {"delta", report.certificate.delta},
          {"margin", report.certificate.margin},
          {"c", report.certificate.c},
          {"violated", std::move(violated)},
          {"binding", report.binding ? json(describe(*report.binding)) : json(nullptr)}};
}

Outcome cmd_check(const Context& ctx) {
  const Settings& s = ctx.settings();
  const io::Instance inst = ctx.instance();
  const std::size_t n = inst.system.cols();
  PolydiscReport report;
  std::optional<double> best;
  if (!s.rho.empty()) {
    if (s.rho.size() != 1 && s.rho.size() != n) throw InputError("--rho takes one value or one per variable");
    const std::vector<double> rho = s.rho.size() == 1 ? std::vector<double>(n, s.rho[0]) : s.rho;
    report = check_polydisc(inst.system, rho);
  } else {
    const std::vector<double> x = require_p(inst).odds();
    best = max_delta(inst.system, x);
    report = certify(inst.system, x, s.delta.value_or(best.value_or(0.0)));
  }
  json doc = certificate_json(report);
  doc["max_delta"] = number_or_null(best);
  return {std::move(doc), report.passed ? kExitOk : kExitCertification};
}

Outcome cmd_gamma_uniform(const Context& ctx) {
  const Settings& s = ctx.settings();
  const double delta = s.delta.value_or(kDefaultHypergraphDelta);
  const std::optional<std::size_t> degree = parse_degree(s.degree);
  const UniformGamma g = max_gamma_uniform(s.k, delta, degree);
  return {{{"k", s.k},
           {"Delta", degree ? json(*degree) : json("inf")},
           {"delta", delta},
           {"t", g.t},
           {"gamma", g.gamma}}};
}

Outcome cmd_gamma_matching(const Context& ctx) {
  const Settings& s = ctx.settings();
  const double delta = s.delta.value_or(kDefaultHypergraphDelta);
  const std::optional<std::size_t> degree = parse_degree(s.degree);
  if (!degree) throw InputError("the matching regime needs a finite --Delta");
  const MatchingGamma g = max_gamma_matching(s.k, *degree, s.omega, delta);
  return {{{"k", s.k},
           {"Delta", *degree},
           {"omega", s.omega},
           {"delta", delta},
           {"t", g.t},
           {"gamma", g.gamma},
           {"target_gamma", g.target_gamma},
           {"target_admissible", g.target_admissible}}};
}

Outcome cmd_gamma_sparse(const Context& ctx) {
  const SparseGamma g = suggest_gamma_sparse(ctx.instance().system);
  return {{{"gamma", g.gamma}, {"column_sums", g.column_sums}, {"holds", g.holds}}};
}

Outcome cmd_eval(const Context& ctx) {
  const Settings& s = ctx.settings();
  const io::Instance inst = ctx.instance();
  const ProbabilityVector& p = require_p(inst);
  const EvaluationResult r = s.geometric ? smoothed_expectation_geometric(inst.system, p, s.epsilon, ctx.eval_options())
                                         : smoothed_expectation(inst.system, p, s.epsilon, ctx.eval_options());
  return {evaluation_json(r)};
}

Outcome cmd_cond(const Context& ctx) {
  const Settings& s = ctx.settings();
  const io::Instance inst = ctx.instance();
  const PartialAssignment a = parse_fixes(s.fixes, inst.system.cols());
  const EvaluationResult r = conditional_expectation(inst.system, require_p(inst), a, s.epsilon, ctx.eval_options());
  json doc = evaluation_json(r);
  json fixed = json::array();
  for (const auto& [j, v] : a.entries()) fixed.push_back(json::array({j, v ? 1 : 0}));
  doc["assignment"] = std::move(fixed);
  return {std::move(doc)};
}

Outcome cmd_round(const Context& ctx) {
  const Settings& s = ctx.settings();
  const io::Instance inst = ctx.instance();
  RoundingOptions options{ctx.compute(), s.order, s.force};
  const RoundingResult r = derandomize(inst.system, require_p(inst), s.epsilon, options);
  std::vector<int> bits(r.x0.begin(), r.x0.end());
  return {{{"x0", bits},
           {"epsilon", s.epsilon},
           {"achieved", r.achieved()},
           {"log_achieved", r.log_achieved},
           {"reference", r.reference()},
           {"log_reference", r.log_reference}}};
}

Outcome hyper_output(const Context& ctx, const HypergraphInstance& hi) {
  json doc = io::instance_to_json(hi.system, hi.p);
  json meta = {{"k", hi.k},
               {"Delta", hi.degree},
               {"gamma", hi.gamma},
               {"delta", hi.delta},
               {"evaluation_point", hi.evaluation_point}};
  if (hi.target_gamma) meta["target_gamma"] = *hi.target_gamma;
  if (hi.target_admissible) meta["target_admissible"] = *hi.target_admissible;
  doc["meta"] = std::move(meta);
  if (ctx.settings().evaluate) {
    doc["evaluation"] =
        evaluation_json(smoothed_expectation(hi.system, hi.p, ctx.settings().epsilon, ctx.eval_options()));
  }
  return {std::move(doc)};
}

Outcome cmd_hyper_general(const Context& ctx, const Hypergraph& h) {
  const Settings& s = ctx.settings();
  if (!s.gamma) throw InputError("--general needs an explicit --gamma");
  const SparseSystem system = incidence_system(h, *s.gamma);
  std::optional<ProbabilityVector> p;
  if (s.general_p) p = ProbabilityVector::uniform(system.cols(), *s.general_p);
  json doc = io::instance_to_json(system, p);
  doc["meta"] = {{"general", true}, {"gamma", *s.gamma}};
  if (s.evaluate) {
    if (!p) throw InputError("--evaluate with --general needs --p");
    doc["evaluation"] = evaluation_json(smoothed_expectation(system, *p, s.epsilon, ctx.eval_options()));
  }
  return {std::move(doc)};
}

Outcome cmd_hyper_perfect(const Context& ctx) {
  const Settings& s = ctx.settings();
  const Hypergraph h = io::parse_hypergraph(ctx.document());
  if (s.general) return cmd_hyper_general(ctx, h);
  return hyper_output(ctx, perfect_matching_instance(h, s.gamma, s.delta.value_or(kDefaultHypergraphDelta)));
}

Outcome cmd_hyper_matching(const Context& ctx) {
  const Settings& s = ctx.settings();
  const Hypergraph h = io::parse_hypergraph(ctx.document());
  return hyper_output(ctx, matching_instance(h, s.omega, s.gamma, s.delta.value_or(kDefaultHypergraphDelta)));
}

Outcome cmd_ising_to(const Context& ctx) {
  const io::Instance inst = ctx.instance();
  const IsingConversion conv = to_ising(inst.system, require_p(inst));
  json doc = io::ising_to_json(conv.model);
  doc["log_constant"] = conv.log_constant;
  return {std::move(doc)};
}

Outcome cmd_ising_from(const Context& ctx) {
  const ReverseIsing rev = from_ising(io::parse_interaction(ctx.document()));
  json doc = io::instance_to_json(rev.system);
  doc["lambda_max"] = rev.lambda_max;
  doc["residual"] = rev.residual;
  return {std::move(doc)};
}

Outcome cmd_ising_check(const Context& ctx) {
  const double delta = ctx.settings().delta.value_or(0.0);
  const LipschitzReport r = lipschitz_condition(io::parse_interaction(ctx.document()), delta);
  return {{{"passed", r.passed}, {"column_sums", r.column_sums}, {"bound", r.bound}},
          r.passed ? kExitOk : kExitCertification};
}

Outcome cmd_ising_bruteforce(const Context& ctx) {
  BruteForceOptions options;
  options.compute = ctx.compute();
  const PartitionValue z = partition_bruteforce(io::parse_ising(ctx.document()), options);
  return {{{"value", z.value}, {"log_value", z.log_value}}};
}

Outcome cmd_maxent(const Context& ctx) {
  const Settings& s = ctx.settings();
  const io::Instance inst = ctx.instance();
  const MaxEntSolution sol = solve_maxent(inst.system);
  const CountBound plain = count_bound(sol);
  json doc = {{"p", std::vector<double>(sol.p.values().begin(), sol.p.values().end())},
              {"dual", sol.dual},
              {"entropy", sol.entropy},
              {"residual", sol.residual},
              {"iterations", sol.iterations},
              {"count_bound", plain.value},
              {"log_count_bound", plain.log_value},
              {"epsilon", s.epsilon}};
  EvalOptions options = ctx.eval_options();
  options.force = false;
  try {
    const CountBound smooth = smoothed_count_bound(inst.system, sol, s.epsilon, options);
    doc["smoothed_count_bound"] = smooth.value;
    doc["log_smoothed_count_bound"] = smooth.log_value;
    doc["smoothed_certified"] = true;
  } catch (const CertificationError& e) {
    doc["smoothed_count_bound"] = nullptr;
    doc["log_smoothed_count_bound"] = nullptr;
    doc["smoothed_certified"] = false;
    doc["smoothed_error"] = e.what();
  }
  return {std::move(doc)};
}

Outcome cmd_oracle_p(const Context& ctx) {
  const json doc = ctx.document();
  const io::Instance inst = io::parse_instance(doc);
  const auto z = evaluation_points(doc, inst);
  return {complex_json(brute_force_P(inst.system, z, ctx.oracle_options()))};
}

Outcome cmd_oracle_expect(const Context& ctx) {
  const io::Instance inst = ctx.instance();
  const OracleValue v = brute_force_expectation(inst.system, require_p(inst), ctx.oracle_options());
  return {{{"value", v.value}, {"log_value", v.log_value}}};
}

Outcome cmd_oracle_count(const Context& ctx) {
  const io::Instance inst = ctx.instance();
  const double tol = ctx.settings().tolerance;
  return {{{"count", count_solutions(inst.system, tol, ctx.oracle_options())}, {"tolerance", tol}}};
}

Outcome cmd_oracle_prop31(const Context& ctx) {
  const json doc = ctx.document();
  const io::Instance inst = io::parse_instance(doc);
  const auto z = evaluation_points(doc, inst);
  return {complex_json(proposition31_sum(inst.system, z, ctx.oracle_options()))};
}

Outcome cmd_gen(const Context& ctx) {
  const Settings& s = ctx.settings();
  RandomSystemSpec spec;
  spec.n = s.gen_n;
  spec.m = s.gen_m;
  spec.nonnegative = s.nonnegative;
  std::mt19937_64 rng(s.seed);
  const SparseSystem system = random_system(spec, rng);
  return {io::instance_to_json(system, random_certified_probabilities(system, rng))};
}

json error_json(const char* kind, const std::string& message) { return {{"error", kind}, {"message", message}}; }

int report_error(std::ostream& out, std::ostream& err, const char* kind, const std::string& message, int code) {
  err << "error: " << message << '\n';
  io::write_json(out, error_json(kind, message));
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Smoothed counting of 0-1 solutions to linear systems", "smoothcount"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> delta;
  std::optional<double> gamma;
  std::optional<double> general_p;
  app.add_option("--epsilon", s.epsilon, "Requested relative error")->check(CLI::Range(0.0, 1.0));
  app.add_option("--delta", delta, "Polydisc parameter in [0, 1)")->check(CLI::Range(0.0, 1.0));
  app.add_option("--input", s.input, "Input JSON file (stdin when absent or -)");
  app.add_option("--work-limit", s.work_limit, "Maximum number of enumerated terms")->check(CLI::PositiveNumber);
  app.add_option("--threads", s.threads, "Worker threads for the parallel kernels")->check(CLI::PositiveNumber);
  app.add_option("--seed", s.seed, "Seed for instance generation");

  std::vector<std::pair<CLI::App*, Outcome (*)(const Context&)>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  Outcome (*handler)(const Context&)) {
    CLI::App* sub = parent->add_subcommand(name, help);
    leaves.emplace_back(sub, handler);
    return sub;
  };

  CLI::App* check = leaf(&app, "check", "Zero-free polydisc certificate", cmd_check);
  check->add_option("--rho", s.rho, "Radii to check directly (one value or one per variable)");

  CLI::App* gamma_cmd = app.add_subcommand("gamma", "Admissible smoothing weights");
  gamma_cmd->require_subcommand(1);
  gamma_cmd->add_option("--k", s.k, "Edge size")->check(CLI::PositiveNumber);
  gamma_cmd->add_option("--Delta", s.degree, "Vertex degree, or inf");
  gamma_cmd->add_option("--omega", s.omega, "Matching activity in (0, 1]");
  leaf(gamma_cmd, "uniform", "Perfect-matching regime", cmd_gamma_uniform);
  leaf(gamma_cmd, "matching", "Matching regime", cmd_gamma_matching);
  leaf(gamma_cmd, "sparse", "Per-row weights for a sparse matrix", cmd_gamma_sparse);

  CLI::App* eval = leaf(&app, "eval", "Smoothed expectation", cmd_eval);
  eval->add_flag("--geometric", s.geometric, "Geometric instead of Bernoulli variables");
  eval->add_flag("--force", s.force, "Evaluate without a certificate");

  CLI::App* cond = leaf(&app, "cond", "Conditional smoothed expectation", cmd_cond);
  cond->add_option("--fix", s.fixes, "Fixed coordinate j=v (repeatable)");
  cond->add_flag("--force", s.force, "Evaluate without a certificate");

  CLI::App* round = leaf(&app, "round", "Derandomized rounding", cmd_round);
  round->add_option("--order", s.order, "Variable visiting order");
  round->add_flag("--force", s.force, "Allow uncertified branch evaluations");

  CLI::App* hyper = app.add_subcommand("hyper", "Hypergraph matching instances");
  hyper->require_subcommand(1);
  hyper->add_option("--gamma", gamma, "Explicit smoothing weight")->check(CLI::PositiveNumber);
  hyper->add_option("--omega", s.omega, "Matching activity in (0, 1]");
  hyper->add_flag("--evaluate", s.evaluate, "Also evaluate the smoothed expectation");
  CLI::App* perfect = leaf(hyper, "perfect", "Perfect matchings", cmd_hyper_perfect);
  perfect->add_flag("--general", s.general, "Build the incidence system without regularity checks");
  perfect->add_option("--p", general_p, "Edge probability for --general")->check(CLI::Range(0.0, 1.0));
  leaf(hyper, "matching", "Matchings", cmd_hyper_matching);

  CLI::App* ising = app.add_subcommand("ising", "Ising model conversions");
  ising->require_subcommand(1);
  leaf(ising, "to", "Smoothed expectation to Ising model", cmd_ising_to);
  leaf(ising, "from", "Interaction matrix to linear system", cmd_ising_from);
  leaf(ising, "check", "Coupling row-sum condition", cmd_ising_check);
  leaf(ising, "bruteforce", "Exact partition function", cmd_ising_bruteforce);

  leaf(&app, "maxent", "Maximum-entropy distribution and count bounds", cmd_maxent);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive reference computations");
  oracle->require_subcommand(1);
  oracle->add_option("--tolerance", s.tolerance, "Constraint tolerance for count")->check(CLI::NonNegativeNumber);
  leaf(oracle, "p", "Partition polynomial", cmd_oracle_p);
  leaf(oracle, "expect", "Smoothed expectation", cmd_oracle_expect);
  leaf(oracle, "count", "Exact solution count", cmd_oracle_count);
  leaf(oracle, "prop31", "Signed exponential sum", cmd_oracle_prop31);

  CLI::App* gen = leaf(&app, "gen", "Random test instance", cmd_gen);
  gen->add_option("--n", s.gen_n, "Variables");
  gen->add_option("--m", s.gen_m, "Constraints");
  gen->add_flag("--nonnegative", s.nonnegative, "Nonnegative coefficients and right-hand sides");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(out, err, "usage", e.what(), kExitInput);
  }
  s.delta = delta;
  s.gamma = gamma;
  s.general_p = general_p;
  if (s.omega <= 0.0 || s.omega > 1.0) return report_error(out, err, "input", "--omega must lie in (0, 1]", kExitInput);
  if (s.delta && *s.delta >= 1.0) return report_error(out, err, "input", "--delta must lie in [0, 1)", kExitInput);

  const Context ctx(s, in);
  try {
    for (const auto& [sub, handler] : leaves) {
      if (sub->parsed()) {
        const Outcome outcome = handler(ctx);
        io::write_json(out, outcome.doc);
        return outcome.code;
      }
    }
    return report_error(out, err, "usage", "no command given", kExitInput);
  } catch (const InputError& e) {
    return report_error(out, err, "input", e.what(), kExitInput);
  } catch (const CertificationError& e) {
    return report_error(out, err, "certification", e.what(), kExitCertification);
  } catch (const WorkLimitError& e) {
    return report_error(out, err, "work_limit", e.what(), kExitWorkLimit);
  } catch (const SolverError& e) {
    return report_error(out, err, "solver", e.what(), kExitFailure);
  } catch (const std::exception& e) {
    return report_error(out, err, "internal", e.what(), kExitFailure);
  }
}

}  // namespace smoothcount::cli
