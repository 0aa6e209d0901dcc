#include "derand/app.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "derand/compress.hpp"
#include "derand/constructions.hpp"
#include "derand/error.hpp"
#include "derand/games.hpp"
#include "derand/routing.hpp"
#include "derand/solve.hpp"

namespace derand {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k = {
      "command", "name",       "input",        "gen",          "gen_seed",  "trials",    "seed",
      "confidence", "threads", "format",       "output",       "claim",     "statistic", "search",
      "k",       "beta",       "colors",       "bits",         "members",   "universe_bits", "m",
      "dim",     "rounds",     "start",        "goal",         "budget",    "tie_seed",  "relabel_seed",
      "permutation", "adversary", "distribution", "functions", "tests"};
  return k;
}

namespace {

template <class T>
T typed(const nlohmann::json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, std::uint64_t> || std::is_same_v<T, unsigned>) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw InvalidArgument("config key '" + key + "' must be a nonnegative integer");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw InvalidArgument("config key '" + key + "' must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw InvalidArgument("config key '" + key + "' must be a string");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw InvalidArgument("config key '" + key + "' must be true or false");
    }
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config key '" + key + "': " + e.what());
  }
}

}  // namespace

void ExperimentConfig::merge(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    const auto& known = keys();
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidArgument("unknown config key '" + key + "'");
    using u64 = std::uint64_t;
    if (key == "command") command = typed<std::string>(v, key);
    else if (key == "name") name = typed<std::string>(v, key);
    else if (key == "input") input = typed<std::string>(v, key);
    else if (key == "gen") gen = typed<std::string>(v, key);
    else if (key == "gen_seed") gen_seed = typed<u64>(v, key);
    else if (key == "trials") trials = typed<u64>(v, key);
    else if (key == "seed") seed = typed<u64>(v, key);
    else if (key == "confidence") confidence = typed<double>(v, key);
    else if (key == "threads") threads = typed<unsigned>(v, key);
    else if (key == "format") format = typed<std::string>(v, key);
    else if (key == "output") output = typed<std::string>(v, key);
    else if (key == "claim") claim = typed<double>(v, key);
    else if (key == "statistic") statistic = typed<bool>(v, key);
    else if (key == "search") search = typed<bool>(v, key);
    else if (key == "k") k = typed<u64>(v, key);
    else if (key == "beta") beta = typed<u64>(v, key);
    else if (key == "colors") colors = typed<u64>(v, key);
    else if (key == "bits") bits = typed<u64>(v, key);
    else if (key == "members") members = typed<u64>(v, key);
    else if (key == "universe_bits") universe_bits = typed<u64>(v, key);
    else if (key == "m") m = typed<u64>(v, key);
    else if (key == "dim") dim = typed<u64>(v, key);
    else if (key == "rounds") rounds = typed<u64>(v, key);
    else if (key == "start") start = typed<u64>(v, key);
    else if (key == "goal") goal = typed<u64>(v, key);
    else if (key == "budget") budget = typed<u64>(v, key);
    else if (key == "tie_seed") tie_seed = typed<u64>(v, key);
    else if (key == "relabel_seed") relabel_seed = typed<u64>(v, key);
    else if (key == "permutation") permutation = typed<std::string>(v, key);
    else if (key == "adversary") adversary = typed<std::string>(v, key);
    else if (key == "distribution") distribution = v;
    else if (key == "functions") functions = v;
    else if (key == "tests") tests = v;
  }
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("confidence must lie in (0, 1)");
  if (format != "json" && format != "csv") throw InvalidArgument("format must be json or csv");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.merge(j);
  return c;
}

ojson ExperimentConfig::echo() const {
  ojson j;
  j["command"] = command;
  j["name"] = name;
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("input", input);
  put("gen", gen);
  put("gen_seed", gen_seed);
  j["trials"] = trials;
  j["seed"] = seed;
  j["confidence"] = confidence;
  put("claim", claim);
  if (statistic) j["statistic"] = true;
  if (search) j["search"] = true;
  put("k", k);
  put("beta", beta);
  put("colors", colors);
  put("bits", bits);
  put("members", members);
  put("universe_bits", universe_bits);
  put("m", m);
  put("dim", dim);
  put("rounds", rounds);
  put("start", start);
  put("goal", goal);
  put("budget", budget);
  put("tie_seed", tie_seed);
  put("relabel_seed", relabel_seed);
  put("permutation", permutation);
  put("adversary", adversary);
  if (distribution) j["distribution"] = ojson::parse(distribution->dump());
  if (functions) j["functions"] = ojson::parse(functions->dump());
  if (tests) j["tests"] = ojson::parse(tests->dump());
  return j;
}

// ---------------------------------------------------------------------------
// Instances

GenSpec GenSpec::parse(const std::string& text) {
  GenSpec g;
  const auto colon = text.find(':');
  g.kind = text.substr(0, colon);
  if (g.kind.empty()) throw InvalidArgument("empty generator spec");
  if (colon == std::string::npos) return g;
  std::istringstream in(text.substr(colon + 1));
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("generator argument '" + item + "' is not key=value");
    g.args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return g;
}

std::uint64_t GenSpec::get(const std::string& key) const {
  const auto it = args.find(key);
  if (it == args.end()) throw InvalidArgument("generator '" + kind + "' needs " + key + "=");
  try {
    std::size_t used = 0;
    const auto v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("generator argument " + key + "=" + it->second + " is not an integer");
  }
}

std::uint64_t GenSpec::get(const std::string& key, std::uint64_t fallback) const {
  return args.count(key) ? get(key) : fallback;
}

InstanceKind gen_kind(const GenSpec& spec) {
  const auto& k = spec.kind;
  if (k == "kcnf") return InstanceKind::Cnf;
  if (k == "hypergraph") return InstanceKind::Hypergraph;
  if (k == "latin") return InstanceKind::IntMatrix;
  if (k == "binary") return InstanceKind::BinaryMatrix;
  if (k == "vectors") return InstanceKind::UnitVectors;
  if (k == "family") return InstanceKind::SetFamily;
  return InstanceKind::Graph;
}

namespace {

std::uint64_t gen_seed_of(const ExperimentConfig& cfg) { return cfg.gen_seed.value_or(cfg.seed); }

Graph graph_from_spec(const GenSpec& g, std::uint64_t seed) {
  if (g.kind == "regular") return gen_random_regular(g.get("n"), g.get("k"), seed);
  if (g.kind == "gnm") return gen_random_graph(g.get("n"), g.get("m"), seed);
  if (g.kind == "hypercube") return gen_hypercube(static_cast<unsigned>(g.get("dim")));
  if (g.kind == "transitive") {
    const auto it = g.args.find("kind");
    if (it == g.args.end()) throw InvalidArgument("generator 'transitive' needs kind=");
    return gen_vertex_transitive(parse_transitive_kind(it->second), g.get("size"));
  }
  if (!g.args.empty()) throw InvalidArgument("unknown generator '" + g.kind + "'");
  return named_graph(g.kind);
}

template <class T>
T require_kind(const GenSpec& g, InstanceKind want, const char* what) {
  if (gen_kind(g) != want) throw InvalidArgument("generator '" + g.kind + "' does not produce " + what);
  return T{};
}

template <class T, class Parse, class Gen>
T load(const ExperimentConfig& cfg, InstanceKind kind, const char* what, Parse parse, Gen gen) {
  if (cfg.input && cfg.gen) throw InvalidArgument("give either input or gen, not both");
  if (cfg.input) return parse(read_file(*cfg.input));
  if (!cfg.gen) throw InvalidArgument(cfg.name + " needs an instance: pass input or gen");
  const auto spec = GenSpec::parse(*cfg.gen);
  if (gen_kind(spec) != kind) throw InvalidArgument("generator '" + spec.kind + "' does not produce " + what);
  return gen(spec, gen_seed_of(cfg));
}

}  // namespace

Graph load_graph(const ExperimentConfig& cfg) {
  return load<Graph>(cfg, InstanceKind::Graph, "a graph", parse_edge_list, graph_from_spec);
}

CnfFormula load_cnf(const ExperimentConfig& cfg) {
  return load<CnfFormula>(cfg, InstanceKind::Cnf, "a CNF formula", parse_dimacs, [](const GenSpec& g, std::uint64_t s) {
    return gen_random_kcnf(g.get("n"), g.get("m"), g.get("k"), g.get("max_int"), s);
  });
}

Hypergraph load_hypergraph(const ExperimentConfig& cfg) {
  return load<Hypergraph>(cfg, InstanceKind::Hypergraph, "a hypergraph", parse_hypergraph,
                          [](const GenSpec& g, std::uint64_t s) {
                            return gen_random_hypergraph(g.get("n"), g.get("m"), g.get("k"), g.get("max_int"), s);
                          });
}

BinaryMatrix load_binary_matrix(const ExperimentConfig& cfg) {
  return load<BinaryMatrix>(cfg, InstanceKind::BinaryMatrix, "a binary matrix", parse_binary_matrix,
                            [](const GenSpec& g, std::uint64_t s) { return gen_binary_matrix(g.get("n"), s); });
}

IntMatrix load_int_matrix(const ExperimentConfig& cfg) {
  return load<IntMatrix>(cfg, InstanceKind::IntMatrix, "an integer matrix", parse_int_matrix,
                         [](const GenSpec& g, std::uint64_t s) { return gen_latin_matrix(g.get("n"), g.get("k"), s); });
}

UnitVectors load_unit_vectors(const ExperimentConfig& cfg) {
  return load<UnitVectors>(cfg, InstanceKind::UnitVectors, "unit vectors", parse_unit_vectors,
                           [](const GenSpec& g, std::uint64_t s) {
                             return gen_unit_vectors(g.get("n"), g.get("dim", g.get("n")), s);
                           });
}

SetFamily load_set_family(const ExperimentConfig& cfg) {
  if (!cfg.input && !cfg.gen && cfg.members) {
    const auto bits = static_cast<unsigned>(cfg.universe_bits.value_or(24));
    return gen_set_family(bits, *cfg.members, gen_seed_of(cfg));
  }
  return load<SetFamily>(cfg, InstanceKind::SetFamily, "a set family", parse_set_family,
                         [](const GenSpec& g, std::uint64_t s) {
                           return gen_set_family(static_cast<unsigned>(g.get("bits")), g.get("m"), s);
                         });
}

std::string generate_instance_text(const std::string& text, std::uint64_t seed) {
  const auto g = GenSpec::parse(text);
  switch (gen_kind(g)) {
    case InstanceKind::Cnf:
      return serialize_dimacs(gen_random_kcnf(g.get("n"), g.get("m"), g.get("k"), g.get("max_int"), seed));
    case InstanceKind::Hypergraph:
      return serialize_hypergraph(gen_random_hypergraph(g.get("n"), g.get("m"), g.get("k"), g.get("max_int"), seed));
    case InstanceKind::IntMatrix: return serialize_matrix(gen_latin_matrix(g.get("n"), g.get("k"), seed));
    case InstanceKind::BinaryMatrix: return serialize_matrix(gen_binary_matrix(g.get("n"), seed));
    case InstanceKind::UnitVectors:
      return serialize_unit_vectors(gen_unit_vectors(g.get("n"), g.get("dim", g.get("n")), seed));
    case InstanceKind::SetFamily:
      return serialize_set_family(gen_set_family(static_cast<unsigned>(g.get("bits")), g.get("m"), seed));
    case InstanceKind::Graph: return serialize_edge_list(graph_from_spec(g, seed));
  }
  return {};
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

DiscreteDistribution distribution_from(const std::optional<nlohmann::json>& j) {
  if (!j) return DiscreteDistribution::uniform(1, 4);
  if (j->is_string()) {
    const auto s = j->get<std::string>();
    unsigned long long lo = 0, hi = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "uniform:%llu:%llu%c", &lo, &hi, &tail) == 2)
      return DiscreteDistribution::uniform(lo, hi);
    throw InvalidArgument("distribution '" + s + "' is not uniform:lo:hi");
  }
  DiscreteDistribution d;
  try {
    d.values = j->at("values").get<std::vector<std::uint64_t>>();
    d.probs = j->at("probs").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("distribution needs values and probs: ") + e.what());
  }
  d.validate();
  return d;
}

CostFn cost_from(const std::string& s) {
  double a = 0, b = 0;
  char tail = 0;
  if (s == "identity") return [](std::uint64_t x) { return static_cast<double>(x); };
  if (s == "square") return [](std::uint64_t x) { return static_cast<double>(x) * static_cast<double>(x); };
  if (s == "cube") return [](std::uint64_t x) { return std::pow(static_cast<double>(x), 3.0); };
  if (std::sscanf(s.c_str(), "const:%lf%c", &a, &tail) == 1) return [a](std::uint64_t) { return a; };
  if (std::sscanf(s.c_str(), "linear:%lf:%lf%c", &a, &b, &tail) == 2)
    return [a, b](std::uint64_t x) { return a * static_cast<double>(x) + b; };
  if (std::sscanf(s.c_str(), "inf-above:%lf%c", &a, &tail) == 1)
    return [a](std::uint64_t x) {
      return static_cast<double>(x) > a ? std::numeric_limits<double>::infinity() : static_cast<double>(x);
    };
  throw InvalidArgument("unknown cost function '" + s +
                        "' (identity, square, cube, const:c, linear:a:b, inf-above:t)");
}

std::vector<CostFn> functions_from(const std::optional<nlohmann::json>& j) {
  if (!j) return {cost_from("square")};
  if (!j->is_array()) throw InvalidArgument("functions must be a list of names");
  std::vector<CostFn> out;
  for (const auto& f : *j) {
    if (!f.is_string()) throw InvalidArgument("functions must be a list of names");
    out.push_back(cost_from(f.get<std::string>()));
  }
  return out;
}

std::size_t latin_multiplicity(const IntMatrix& a) {
  if (a.entries().empty()) return 0;
  return static_cast<std::size_t>(std::count(a.entries().begin(), a.entries().end(), a.entries().front()));
}

std::size_t default_frugal_colors(const Graph& g, std::size_t beta) {
  const double d = static_cast<double>(g.max_degree());
  return static_cast<std::size_t>(std::ceil(std::pow(d, 1.0 + 4.0 / static_cast<double>(beta)) / 2.0 - 1e-9));
}

NodeMap routing_destinations(const ExperimentConfig& cfg, unsigned dim) {
  if (cfg.input) return parse_destination_map(read_file(*cfg.input), dim);
  return named_permutation(cfg.permutation.value_or("reversal"), dim);
}

}  // namespace

Construction build_from_config(const ExperimentConfig& cfg) {
  const auto& n = cfg.name;
  if (n == "ksat") {
    const auto f = load_cnf(cfg);
    const std::size_t k = cfg.k.value_or(f.num_clauses() ? f.clauses().front().size() : 3);
    return build_ksat(f, k);
  }
  if (n == "max3sat") return build_max_3sat(load_cnf(cfg));
  if (n == "hyper-union") return build_hypergraph_color_union(load_hypergraph(cfg));
  if (n == "hyper-lll") return build_hypergraph_2color_lll(load_hypergraph(cfg));
  if (n == "cycles") {
    const auto g = load_graph(cfg);
    return build_disjoint_cycles(g, cfg.k.value_or(g.regular_degree().value_or(g.max_degree())));
  }
  if (n == "frugal") {
    const auto g = load_graph(cfg);
    const std::size_t beta = cfg.beta.value_or(2);
    if (beta == 0) throw InvalidArgument("beta must be positive");
    return build_frugal_coloring(g, beta, cfg.colors.value_or(default_frugal_colors(g, beta)));
  }
  if (n == "coloring") {
    const auto g = load_graph(cfg);
    return build_graph_coloring(g, cfg.colors.value_or(std::max<std::size_t>(2 * g.max_degree(), 1)));
  }
  if (n == "maxcut") return build_max_cut(load_graph(cfg));
  if (n == "indepset") return build_independent_set(load_graph(cfg));
  if (n == "domset") return build_dominating_set(load_graph(cfg));
  if (n == "balance-matrix") return build_balance_matrix(load_binary_matrix(cfg));
  if (n == "balance-vectors") return build_balance_unit_vectors(load_unit_vectors(cfg));
  if (n == "bloom") {
    if (!cfg.bits) throw InvalidArgument("bloom needs bits (filter size)");
    return build_bloom(load_set_family(cfg), static_cast<std::uint32_t>(*cfg.bits));
  }
  if (n == "latin") {
    const auto a = load_int_matrix(cfg);
    return build_latin_transversal(a, cfg.k.value_or(latin_multiplicity(a)));
  }
  if (n == "funcmin") return build_function_min(distribution_from(cfg.distribution), functions_from(cfg.functions));
  if (n == "superset") return build_super_set(load_set_family(cfg), static_cast<unsigned>(cfg.m.value_or(1)));
  if (n == "routing") {
    const auto dim = static_cast<unsigned>(cfg.dim.value_or(3));
    TieRule tie;
    if (cfg.tie_seed) tie = {TieRule::Kind::Seeded, *cfg.tie_seed};
    return build_routing_construction(dim, routing_destinations(cfg, dim), tie);
  }
  throw InvalidArgument("unknown construction '" + n + "'");
}

// ---------------------------------------------------------------------------
// Commands

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Report base_report(const ExperimentConfig& cfg, const std::string& name) {
  Report r;
  r.name = name;
  r.params["config"] = cfg.echo();
  r.params["instance"] = ojson::object();
  r.params["results"] = ojson::object();
  r.seed = cfg.seed;
  r.version = version();
  r.verdict = "NONE";
  return r;
}

ojson to_ojson(const nlohmann::json& j) { return ojson::parse(j.dump()); }

int exit_for(const Verdict& v) { return v.status == VerdictStatus::Refuted ? kExitRefuted : kExitOk; }

void apply_verdict(Report& r, const Estimate& est, double claimed, const std::string& expr) {
  r.claimed_bound = claimed;
  r.claimed_expr = expr;
  r.verdict = to_string(verdict_against_bound(est, claimed).status);
}

ojson mean_json(const MeanEstimate& m) {
  return {{"mean", m.mean}, {"stddev", m.stddev}, {"ci_lower", m.ci_lower}, {"ci_upper", m.ci_upper},
          {"trials", m.trials}};
}

}  // namespace

CommandResult cmd_verify(const ExperimentConfig& cfg) {
  const auto t0 = Clock::now();
  Construction c = build_from_config(cfg);
  if (cfg.claim) {
    c.claimed_prob = *cfg.claim;
    c.claimed_expr = "override " + std::to_string(*cfg.claim) + " (construction claims " + c.claimed_expr + ")";
  }
  const TrialOptions opt{cfg.confidence, cfg.threads};
  const auto ev = evaluate(c, cfg.trials, cfg.seed, opt);

  CommandResult out;
  Report r = base_report(cfg, c.name);
  r.params["instance"] = to_ojson(c.params);
  fill_estimate(r, ev.estimate);
  r.claimed_bound = c.claimed_prob;
  r.claimed_expr = c.claimed_expr;
  r.premise = premise_to_json(c.premise);
  auto& results = r.params["results"];
  if (c.enumerate && c.space_size <= 65536) results["exact_good_fraction"] = exact_good_fraction(c);
  if (cfg.statistic && c.statistic) {
    auto stat = mean_json(estimate_statistic(c, cfg.trials, cfg.seed, opt));
    stat["name"] = c.statistic_name;
    if (c.statistic_expected) stat["expected"] = *c.statistic_expected;
    results["statistic"] = stat;
  }
  if (c.premise.ok) {
    r.verdict = to_string(ev.verdict.status);
    out.exit_code = exit_for(ev.verdict);
  } else {
    r.verdict = "NON-BINDING";
    r.premise["unbound_verdict"] = to_string(ev.verdict.status);
    out.exit_code = kExitError;
    out.message = "premise not satisfied: " + c.premise.diagnostic;
  }
  r.wall_ms = elapsed_ms(t0);
  out.report = std::move(r);
  return out;
}

CommandResult cmd_solve(const ExperimentConfig& cfg) {
  const auto t0 = Clock::now();
  const Construction c = build_from_config(cfg);
  const auto& n = cfg.name;
  SolveResult s;
  if (n == "ksat") {
    s = solve_with_resampling(c, ksat_event_system(load_cnf(cfg)), cfg.seed, cfg.budget);
  } else if (n == "hyper-lll") {
    s = solve_with_resampling(c, hypergraph_event_system(load_hypergraph(cfg)), cfg.seed, cfg.budget);
  } else if (n == "frugal") {
    s = solve_with_resampling(
        c, frugal_event_system(load_graph(cfg), c.params.at("beta").get<std::size_t>(), c.params.at("colors").get<std::size_t>()),
        cfg.seed, cfg.budget);
  } else if (n == "latin") {
    s = solve_latin(c, load_int_matrix(cfg), cfg.seed, cfg.budget);
  } else {
    s = solve_by_rejection(c, cfg.seed, cfg.budget.value_or(kDefaultRejectionAttempts));
  }

  CommandResult out;
  Report r = base_report(cfg, c.name);
  r.params["instance"] = to_ojson(c.params);
  r.premise = premise_to_json(c.premise);
  r.trials = 1;
  r.successes = s.found && s.valid ? 1 : 0;
  r.p_hat = static_cast<double>(r.successes);
  r.ci_lower = r.p_hat;
  r.ci_upper = r.p_hat;
  r.claimed_bound = c.claimed_prob;
  r.claimed_expr = c.claimed_expr;
  auto& results = r.params["results"];
  results["method"] = s.method;
  results["work"] = s.work;
  results["budget"] = s.budget;
  results["found"] = s.found;
  results["valid"] = s.valid;
  if (s.found) {
    const auto bytes = to_bytes(s.solution);
    results["solution"] = to_text(s.solution);
    results["size_report"] = {{"compressed_bits", compressed_size_bits(bytes)},
                              {"raw_bits", 8 * bytes.size()},
                              {"normative", false}};
    out.text = to_text(s.solution) + "\n";
  }
  if (!s.found) {
    out.exit_code = kExitBudget;
    out.message = "not found within budget (" + std::to_string(s.budget) + ")";
  } else if (!s.valid) {
    out.exit_code = kExitError;
    out.message = "solution failed its validity check";
  }
  r.wall_ms = elapsed_ms(t0);
  out.report = std::move(r);
  return out;
}

const std::vector<std::string>& game_names() {
  static const std::vector<std::string> names = {"even-odds",  "graph-nav", "penalty-tests",
                                                 "cover-time", "min-cut",   "vertex-transitive"};
  return names;
}

namespace {

ExperimentConfig with_default_gen(ExperimentConfig cfg, const char* gen) {
  if (!cfg.input && !cfg.gen) cfg.gen = gen;
  return cfg;
}

Relabel relabel_of(const ExperimentConfig& cfg) {
  return cfg.relabel_seed ? seeded_relabel(*cfg.relabel_seed) : identity_relabel();
}

std::vector<PenaltyTest> tests_from(const std::optional<nlohmann::json>& j) {
  if (!j) return {parity_penalty_test()};
  if (!j->is_array() || j->empty()) throw InvalidArgument("tests must be a non-empty list");
  std::vector<PenaltyTest> out;
  for (const auto& t : *j) {
    PenaltyTest p;
    std::vector<double> penalty;
    try {
      p.dist.values = t.at("values").get<std::vector<std::uint64_t>>();
      p.dist.probs = t.at("probs").get<std::vector<double>>();
      penalty = t.at("penalty").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("each test needs values, probs and penalty: ") + e.what());
    }
    if (penalty.size() != p.dist.values.size()) throw InvalidArgument("penalty must match values");
    p.test = [values = p.dist.values, penalty](std::uint64_t a) {
      const auto it = std::find(values.begin(), values.end(), a);
      return it == values.end() ? 0.0 : penalty[static_cast<std::size_t>(it - values.begin())];
    };
    p.label = t.dump();
    out.push_back(std::move(p));
  }
  return out;
}

std::string bit_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

}  // namespace

CommandResult cmd_game(const ExperimentConfig& cfg_in) {
  const auto t0 = Clock::now();
  const TrialOptions opt{cfg_in.confidence, cfg_in.threads};
  const auto& n = cfg_in.name;
  CommandResult out;
  Report r = base_report(cfg_in, n);
  auto& inst = r.params["instance"];
  auto& results = r.params["results"];
  Estimate est;

  if (n == "even-odds") {
    const auto rounds = cfg_in.rounds.value_or(16);
    const auto adv_name = cfg_in.adversary.value_or("zero");
    const auto env = even_odds_env(rounds, even_odds_adversary(adv_name, cfg_in.seed));
    inst = {{"rounds", rounds}, {"adversary", adv_name}, {"threshold", even_odds_threshold(rounds)}};
    est = estimate_win_probability(*env, uniform_agent(), rounds, cfg_in.trials, cfg_in.seed, opt);
    const auto exact = even_odds_win_fraction(rounds);
    results["exact_win_fraction"] = to_string(exact);
    results["exact_win_probability"] = boost::rational_cast<double>(Rational(exact));
    apply_verdict(r, est, 1.0 / (8.0 * std::numbers::pi), "1/(8 pi), large N");
    if (cfg_in.search) {
      const auto bf = brute_force_agent(*env, rounds);
      results["search"] = {{"winner", bf.winner ? bit_string(*bf.winner) : ""},
                           {"winning_strings", bf.winners},
                           {"win_fraction", to_string(bf.win_fraction)},
                           {"matches_exact", bf.win_fraction == exact}};
      if (bf.winner) out.text = bit_string(*bf.winner) + "\n";
    }
  } else if (n == "graph-nav") {
    const auto cfg = with_default_gen(cfg_in, "petersen");
    const auto g = load_graph(cfg);
    const auto s = static_cast<std::uint32_t>(cfg.start.value_or(0));
    const auto goal = static_cast<std::uint32_t>(cfg.goal.value_or(g.num_vertices() - 1));
    const auto t = cfg.rounds.value_or(mixing_time(g));
    const auto env = graph_navigation_env(g, s, goal, t, relabel_of(cfg));
    inst = {{"vertices", g.num_vertices()}, {"edges", g.num_edges()}, {"start", s}, {"goal", goal}, {"rounds", t}};
    est = estimate_win_probability(*env, uniform_agent(), t, cfg.trials, cfg.seed, opt);
    results["exact_win_probability"] = exact_walk_distribution(g, s, t)[goal];
    results["stationary_goal"] = stationary_distribution(g)[goal];
    apply_verdict(r, est, 1.0 / (2.0 * static_cast<double>(g.num_edges())), "1/(2|E|)");
    if (g.degree(goal) < 2) r.premise["notes"] = {"goal degree below 2: the 1/(2|E|) threshold is not implied"};
    if (cfg.search) {
      const auto sr = search_winning_actions(*env, t);
      results["search"] = {{"nodes", sr.nodes}, {"capped", sr.capped}};
      if (sr.winner) results["search"]["winner"] = *sr.winner;
    }
  } else if (n == "penalty-tests") {
    const auto rounds = cfg_in.rounds.value_or(50);
    const auto tests = tests_from(cfg_in.tests);
    const auto env = penalty_tests_env(rounds, tests);
    const double limit = 2.0 * static_cast<double>(rounds);
    inst = {{"rounds", rounds}, {"tests", tests.size()}};
    const auto mean = estimate_penalty(*env, sampling_agent(), rounds + 1, cfg_in.trials, cfg_in.seed, opt);
    est = run_trials(
        [&](RngStream& rng) { return play(sampling_agent(), *env, rounds + 1, rng).penalty < limit; },
        cfg_in.trials, cfg_in.seed, opt);
    RngStream unused(cfg_in.seed, 0);
    const auto greedy = play(greedy_penalty_agent(tests), *env, rounds + 1, unused);
    results["mean_penalty"] = mean_json(mean);
    results["greedy_penalty"] = greedy.penalty;
    results["greedy_below_2N"] = greedy.penalty < limit;
    apply_verdict(r, est, 0.5, "Pr[penalty < 2N] >= 1/2 (Markov)");
  } else if (n == "cover-time") {
    const auto cfg = with_default_gen(cfg_in, "cycle6");
    const auto g = load_graph(cfg);
    const auto s = static_cast<std::uint32_t>(cfg.start.value_or(0));
    const auto env = cover_time_env(g, s, relabel_of(cfg));
    const double nv = static_cast<double>(g.num_vertices());
    const double bound = 2.0 * static_cast<double>(g.num_edges()) * (nv - 1.0);
    inst = {{"vertices", g.num_vertices()}, {"edges", g.num_edges()}, {"start", s}};
    const auto cap = static_cast<std::uint64_t>(std::max(1e6, 1000.0 * bound));
    const auto mean = estimate_penalty(*env, uniform_agent(), cap, cfg.trials, cfg.seed, opt);
    est = run_trials([&](RngStream& rng) { return play(uniform_agent(), *env, cap, rng).penalty < 2.0 * bound; },
                     cfg.trials, cfg.seed, opt);
    results["mean_cover_time"] = mean_json(mean);
    results["expected_bound_2m(n-1)"] = bound;
    results["asymptotic_4n^3/27"] = 4.0 * nv * nv * nv / 27.0;
    apply_verdict(r, est, 0.5, "Pr[cover time < 4m(n-1)] >= 1/2 (Markov on 2m(n-1))");
  } else if (n == "min-cut") {
    const auto cfg = with_default_gen(cfg_in, "cycle4");
    const auto g = load_graph(cfg);
    const auto env = karger_env(g, relabel_of(cfg));
    const double nv = static_cast<double>(g.num_vertices());
    inst = {{"vertices", g.num_vertices()}, {"edges", g.num_edges()}};
    est = estimate_win_probability(*env, uniform_agent(), g.num_vertices(), cfg.trials, cfg.seed, opt);
    results["min_cut"] = exact_min_cut(g);
    apply_verdict(r, est, 2.0 / (nv * (nv - 1.0)), "2/(n(n-1))");
    if (cfg.search) {
      const auto sr = search_winning_actions(*env, g.num_vertices());
      results["search"] = {{"nodes", sr.nodes}, {"capped", sr.capped}};
      if (sr.winner) results["search"]["winner"] = *sr.winner;
    }
  } else if (n == "vertex-transitive") {
    const auto cfg = with_default_gen(cfg_in, "cycle4");
    const auto g = load_graph(cfg);
    const auto u = static_cast<std::uint32_t>(cfg.start.value_or(0));
    const auto k = cfg.k.value_or(1);
    const auto env = vertex_transitive_env(g, u, k, relabel_of(cfg));
    inst = {{"vertices", g.num_vertices()}, {"start", u}, {"rounds", 2 * k}};
    est = estimate_win_probability(*env, uniform_agent(), 2 * k + 1, cfg.trials, cfg.seed, opt);
    const auto probs = walk_probabilities(g, u, 2 * k);
    bool dominant = true;
    for (const auto& p : probs) dominant = dominant && probs[u] >= p;
    results["return_probability"] = to_string(probs[u]);
    results["return_dominates"] = dominant;
    apply_verdict(r, est, 1.0 / static_cast<double>(g.num_vertices()), "1/n");
    if (cfg.search) {
      const auto sr = search_winning_actions(*env, 2 * k);
      results["search"] = {{"nodes", sr.nodes}, {"capped", sr.capped}};
      if (sr.winner) results["search"]["winner"] = *sr.winner;
    }
  } else {
    throw InvalidArgument("unknown game '" + n + "'");
  }
  fill_estimate(r, est);
  r.premise["ok"] = true;
  out.exit_code = r.verdict == "REFUTED" ? kExitRefuted : kExitOk;
  r.wall_ms = elapsed_ms(t0);
  out.report = std::move(r);
  return out;
}

CommandResult cmd_gen(const ExperimentConfig& cfg) {
  if (!cfg.gen) throw InvalidArgument("gen needs a generator spec");
  CommandResult out;
  out.text = generate_instance_text(*cfg.gen, gen_seed_of(cfg));
  return out;
}

CommandResult cmd_report_merge(const std::vector<std::string>& texts, const std::string& format) {
  CommandResult out;
  if (format == "csv") {
    out.text = csv_header();
    for (const auto& t : texts) out.text += csv_row(report_from_json(ojson::parse(t)));
  } else if (format == "json") {
    ojson all = ojson::array();
    for (const auto& t : texts) all.push_back(to_json(report_from_json(ojson::parse(t))));
    out.text = all.dump(2) + "\n";
  } else {
    throw InvalidArgument("format must be json or csv");
  }
  return out;
}

CommandResult run_command(const ExperimentConfig& cfg) {
  try {
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "solve") return cmd_solve(cfg);
    if (cfg.command == "game") return cmd_game(cfg);
    if (cfg.command == "gen") return cmd_gen(cfg);
    throw InvalidArgument("unknown command '" + cfg.command + "'");
  } catch (const std::exception& e) {
    CommandResult out;
    out.exit_code = kExitError;
    out.message = e.what();
    return out;
  }
}

std::string render_report(const Report& report, const std::string& format) {
  if (format == "csv") return csv_header() + csv_row(report);
  return render_json(report);
}

}  // namespace derand
