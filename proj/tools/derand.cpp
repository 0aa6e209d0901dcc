// derand: generate instances, verify claimed bounds, solve, play games and
// merge reports. Flags override keys read from --config.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "derand/app.hpp"
#include "derand/constructions.hpp"
#include "derand/error.hpp"

namespace {

using nlohmann::json;

enum class Kind { Int, Real, Text, Json, List };

struct Flag {
  const char* key;
  const char* name;
  Kind kind;
  const char* help;
};

// Config keys exposed as flags. Values are kept as text and converted once
// the subcommand is known, so an unset flag never overrides the config file.
const std::vector<Flag> kFlags = {
    {"input", "--input,-i", Kind::Text, "instance file"},
    {"gen", "--gen,-g", Kind::Text, "generator spec, e.g. regular:n=20,k=3 or petersen"},
    {"gen_seed", "--gen-seed", Kind::Int, "seed for the generator (default: --seed)"},
    {"trials", "--trials,-t", Kind::Int, "Monte Carlo trials"},
    {"seed", "--seed,-s", Kind::Int, "master seed"},
    {"confidence", "--confidence,-c", Kind::Real, "one-sided confidence level"},
    {"threads", "--threads,-j", Kind::Int, "worker threads (0 = hardware)"},
    {"format", "--format,-f", Kind::Text, "json or csv"},
    {"claim", "--claim", Kind::Real, "override the claimed probability"},
    {"k", "--k", Kind::Int, "clause size / degree / multiplicity / game length"},
    {"beta", "--beta", Kind::Int, "frugality"},
    {"colors", "--colors", Kind::Int, "number of colors"},
    {"bits", "--bits", Kind::Int, "bloom filter size"},
    {"members", "--members", Kind::Int, "bloom member count"},
    {"universe_bits", "--universe-bits", Kind::Int, "key width for generated families"},
    {"m", "--m", Kind::Int, "super-set size exponent"},
    {"dim", "--dim", Kind::Int, "hypercube dimension"},
    {"rounds", "--rounds", Kind::Int, "game rounds"},
    {"start", "--start", Kind::Int, "start vertex"},
    {"goal", "--goal", Kind::Int, "goal vertex"},
    {"budget", "--budget", Kind::Int, "resample or retry budget"},
    {"tie_seed", "--tie-seed", Kind::Int, "seeded queue tie-breaking for routing"},
    {"relabel_seed", "--relabel-seed", Kind::Int, "seeded neighbor relabeling for graph games"},
    {"permutation", "--permutation", Kind::Text, "identity, reversal or transpose"},
    {"adversary", "--adversary", Kind::Text, "even-odds adversary"},
    {"distribution", "--distribution", Kind::Json, "uniform:lo:hi or a JSON object"},
    {"functions", "--functions", Kind::List, "comma-separated cost functions"},
    {"tests", "--tests", Kind::Json, "JSON list of penalty tests"},
};

json convert(const Flag& f, const std::string& v) {
  switch (f.kind) {
    case Kind::Int: {
      std::size_t used = 0;
      unsigned long long x = 0;
      try {
        x = std::stoull(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != v.size() || v.empty() || v[0] == '-')
        throw derand::InvalidArgument(std::string(f.name) + " expects a nonnegative integer, got '" + v + "'");
      return x;
    }
    case Kind::Real: {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != v.size() || v.empty())
        throw derand::InvalidArgument(std::string(f.name) + " expects a number, got '" + v + "'");
      return x;
    }
    case Kind::Json:
      if (!v.empty() && (v[0] == '{' || v[0] == '[')) return json::parse(v);
      return v;
    case Kind::List: {
      if (!v.empty() && v[0] == '[') return json::parse(v);
      json out = json::array();
      std::istringstream in(v);
      std::string item;
      while (std::getline(in, item, ',')) out.push_back(item);
      return out;
    }
    case Kind::Text: break;
  }
  return v;
}

struct Common {
  std::map<std::string, std::string> values;
  std::string config_path;
  std::string output;
  bool statistic = false;
  bool search = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file");
  sub->add_option("--output,-o", c.output, "write the report here instead of stdout");
  static const char* const kTypeNames[] = {"INT", "REAL", "TEXT", "JSON", "LIST"};
  for (const auto& f : kFlags)
    sub->add_option(f.name, c.values[f.key], f.help)->type_name(kTypeNames[static_cast<int>(f.kind)]);
}

derand::ExperimentConfig make_config(CLI::App* sub, const Common& c, const std::string& command,
                                     const std::string& name) {
  json j = json::object();
  if (!c.config_path.empty()) {
    try {
      j = json::parse(derand::read_file(c.config_path));
    } catch (const json::exception& e) {
      throw derand::InvalidArgument("config " + c.config_path + ": " + e.what());
    }
    if (!j.is_object()) throw derand::InvalidArgument("config must be a JSON object");
  }
  for (const auto& f : kFlags) {
    const auto opt = sub->get_option(std::string("--") + (std::string(f.name).substr(2, std::string(f.name).find(',') - 2)));
    if (opt->count() > 0) j[f.key] = convert(f, c.values.at(f.key));
  }
  if (c.statistic) j["statistic"] = true;
  if (c.search) j["search"] = true;
  j["command"] = command;
  if (!name.empty()) j["name"] = name;
  else if (!j.contains("name")) throw derand::InvalidArgument(command + " needs a name");
  auto cfg = derand::ExperimentConfig::from_json(j);
  if (!c.output.empty()) cfg.output = c.output;
  return cfg;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw derand::Error("cannot write " + *path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized constructions: verify claimed bounds, solve, play games"};
  app.set_version_flag("--version", derand::version());
  app.require_subcommand(1);

  std::string gen_spec;
  Common gen_c, verify_c, solve_c, game_c;
  std::string name, solution_path, merge_format = "csv", merge_output;
  std::vector<std::string> merge_files;

  auto* gen = app.add_subcommand("gen", "write a generated instance");
  gen->add_option("spec", gen_spec, "generator spec")->required();
  add_common(gen, gen_c);

  auto* verify = app.add_subcommand("verify", "estimate a construction's success probability");
  verify->add_option("name", name, "construction name");
  verify->add_flag("--statistic", verify_c.statistic, "also estimate the construction's statistic");
  add_common(verify, verify_c);

  auto* solve = app.add_subcommand("solve", "find a good object and check it");
  solve->add_option("name", name, "construction name");
  solve->add_option("--solution", solution_path, "write the solution text here");
  add_common(solve, solve_c);

  auto* game = app.add_subcommand("game", "play a game with a random agent");
  game->add_option("name", name, "game name");
  game->add_flag("--search", game_c.search, "search for a winning deterministic agent");
  add_common(game, game_c);

  auto* merge = app.add_subcommand("report-merge", "merge JSON reports");
  merge->add_option("reports", merge_files, "report files")->required()->check(CLI::ExistingFile);
  merge->add_option("--format,-f", merge_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  merge->add_option("--output,-o", merge_output, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    derand::CommandResult res;
    std::optional<std::string> out_path;
    std::string format = "json";
    if (merge->parsed()) {
      std::vector<std::string> texts;
      for (const auto& f : merge_files) texts.push_back(derand::read_file(f));
      res = derand::cmd_report_merge(texts, merge_format);
      if (!merge_output.empty()) out_path = merge_output;
    } else {
      CLI::App* sub = gen->parsed() ? gen : verify->parsed() ? verify : solve->parsed() ? solve : game;
      const Common& c = gen->parsed() ? gen_c : verify->parsed() ? verify_c : solve->parsed() ? solve_c : game_c;
      auto cfg = make_config(sub, c, sub->get_name(), gen->parsed() ? std::string("gen") : name);
      if (gen->parsed()) cfg.gen = gen_spec;
      out_path = cfg.output;
      format = cfg.format;
      res = derand::run_command(cfg);
    }
    if (res.report) emit(derand::render_report(*res.report, format), out_path);
    else if (!res.text.empty()) emit(res.text, out_path);
    if (!solution_path.empty() && !res.text.empty()) emit(res.text, solution_path);
    if (!res.message.empty()) std::cerr << "derand: " << res.message << "\n";
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "derand: " << e.what() << "\n";
    return derand::kExitError;
  }
}
