#include <gtest/gtest.h>

#include "derand/app.hpp"
#include "derand/compress.hpp"
#include "derand/constructions.hpp"
#include "derand/error.hpp"
#include "derand/rng.hpp"

using namespace derand;
using nlohmann::json;

namespace {

ExperimentConfig cfg(json j) { return ExperimentConfig::from_json(j); }

}  // namespace

TEST(Config, RejectsUnknownAndMistyped) {
  EXPECT_THROW(cfg({{"name", "maxcut"}, {"colour", 3}}), InvalidArgument);
  EXPECT_THROW(cfg({{"trials", "many"}}), InvalidArgument);
  EXPECT_THROW(cfg({{"trials", -1}}), InvalidArgument);
  EXPECT_THROW(cfg({{"confidence", 1.5}}), InvalidArgument);
  EXPECT_THROW(cfg({{"format", "xml"}}), InvalidArgument);
  EXPECT_THROW(cfg(json::array()), InvalidArgument);
}

TEST(Config, MergeOverrides) {
  auto c = cfg({{"name", "maxcut"}, {"trials", 10}, {"seed", 3}});
  c.merge({{"trials", 20}});
  EXPECT_EQ(c.trials, 20u);
  EXPECT_EQ(c.seed, 3u);
}

TEST(Config, EchoSkipsExecutionKeys) {
  const auto c = cfg({{"command", "verify"}, {"name", "maxcut"}, {"threads", 8}, {"format", "csv"}, {"output", "x"}});
  const auto e = c.echo();
  EXPECT_FALSE(e.contains("threads"));
  EXPECT_FALSE(e.contains("format"));
  EXPECT_FALSE(e.contains("output"));
  EXPECT_EQ(e["name"], "maxcut");
}

TEST(GenSpecs, Parse) {
  const auto g = GenSpec::parse("regular:n=20,k=3");
  EXPECT_EQ(g.kind, "regular");
  EXPECT_EQ(g.get("n"), 20u);
  EXPECT_EQ(g.get("missing", 7), 7u);
  EXPECT_THROW(g.get("missing"), InvalidArgument);
  EXPECT_THROW(GenSpec::parse("regular:n"), InvalidArgument);
  EXPECT_THROW(GenSpec::parse("regular:n=x").get("n"), InvalidArgument);
  EXPECT_EQ(gen_kind(GenSpec::parse("kcnf:n=3")), InstanceKind::Cnf);
  EXPECT_EQ(gen_kind(GenSpec::parse("petersen")), InstanceKind::Graph);
}

TEST(GenSpecs, TextIsDeterministic) {
  EXPECT_EQ(generate_instance_text("kcnf:n=10,m=4,k=3,max_int=2", 5), generate_instance_text("kcnf:n=10,m=4,k=3,max_int=2", 5));
  EXPECT_EQ(parse_edge_list(generate_instance_text("petersen", 0)), petersen_graph());
  EXPECT_THROW(generate_instance_text("nosuch:n=3", 0), InvalidArgument);
}

TEST(Reports, JsonRoundTrip) {
  const auto res = cmd_verify(cfg({{"command", "verify"}, {"name", "maxcut"}, {"gen", "triangle"}, {"trials", 1000}}));
  ASSERT_TRUE(res.report.has_value());
  const auto j = to_json(*res.report);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, report_columns());
  EXPECT_EQ(report_from_json(j), *res.report);
  EXPECT_EQ(report_from_json(nlohmann::ordered_json::parse(render_json(*res.report))), *res.report);
  auto extra = j;
  extra["colour"] = 1;
  EXPECT_THROW(report_from_json(extra), InvalidArgument);
}

TEST(Reports, CsvColumnOrder) {
  std::string want;
  for (const auto& c : report_columns()) want += (want.empty() ? "" : ",") + c;
  EXPECT_EQ(csv_header(), want + "\n");
  EXPECT_EQ(report_columns().size(), 14u);
  EXPECT_EQ(report_columns().front(), "name");
  EXPECT_EQ(report_columns().back(), "version");
}

TEST(Verify, MaxCutTriangle) {
  const auto res =
      cmd_verify(cfg({{"command", "verify"}, {"name", "maxcut"}, {"gen", "triangle"}, {"trials", 100000}, {"seed", 7}}));
  EXPECT_EQ(res.exit_code, kExitOk);
  EXPECT_EQ(res.report->verdict, "CONSISTENT");
  EXPECT_EQ(res.report->params["results"]["exact_good_fraction"], 0.75);
  EXPECT_NEAR(res.report->p_hat, 0.75, 0.01);
}

TEST(Verify, PremiseFailureExitsOne) {
  const auto res = run_command(
      cfg({{"command", "verify"}, {"name", "ksat"}, {"input", DERAND_TEST_DATA "/intersecting3.cnf"}, {"trials", 100}}));
  EXPECT_EQ(res.exit_code, kExitError);
  EXPECT_NE(res.message.find("clause intersection degree"), std::string::npos);
  EXPECT_EQ(res.report->verdict, "NON-BINDING");
}

TEST(Verify, OverriddenClaimRefuted) {
  const auto res = run_command(
      cfg({{"command", "verify"}, {"name", "maxcut"}, {"gen", "triangle"}, {"claim", 0.99}, {"trials", 100000}}));
  EXPECT_EQ(res.exit_code, kExitRefuted);
  EXPECT_EQ(res.report->verdict, "REFUTED");
}

TEST(Verify, BloomReportsBound) {
  const auto res =
      run_command(cfg({{"command", "verify"}, {"name", "bloom"}, {"bits", 4096}, {"members", 1024}, {"trials", 500}}));
  EXPECT_EQ(res.exit_code, kExitOk);
  EXPECT_NE(res.report->claimed_expr.find("0.878^k"), std::string::npos);
  EXPECT_NEAR(res.report->params["instance"]["fp_bound"].get<double>(), 0.594262, 1e-6);
}

TEST(Verify, UsageErrors) {
  EXPECT_EQ(run_command(cfg({{"command", "verify"}, {"name", "nosuch"}, {"gen", "triangle"}})).exit_code, kExitError);
  EXPECT_EQ(run_command(cfg({{"command", "verify"}, {"name", "maxcut"}})).exit_code, kExitError);
  EXPECT_EQ(run_command(cfg({{"command", "verify"}, {"name", "maxcut"}, {"input", "/nonexistent"}})).exit_code,
            kExitError);
  EXPECT_EQ(run_command(cfg({{"command", "frobnicate"}})).exit_code, kExitError);
}

// Identical configs give byte-identical reports apart from wall-clock time,
// for any worker count.
TEST(Verify, DeterministicAcrossThreads) {
  for (const char* name : {"maxcut", "indepset", "domset"}) {
    json j = {{"command", "verify"}, {"name", name}, {"gen", "petersen"}, {"trials", 20000}, {"seed", 5}, {"statistic", true}};
    j["threads"] = 1;
    const auto a = render_json(*run_command(cfg(j)).report, false);
    j["threads"] = 8;
    const auto b = render_json(*run_command(cfg(j)).report, false);
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Solve, MaxCutTriangle) {
  const auto res = cmd_solve(cfg({{"command", "solve"}, {"name", "maxcut"}, {"gen", "triangle"}}));
  EXPECT_EQ(res.exit_code, kExitOk);
  const auto parts = res.report->params["results"]["solution"].get<std::string>();
  const auto g = cycle_graph(3);
  std::vector<std::uint32_t> side;
  for (char ch : parts.substr(parts.find(' ') + 1))
    if (ch != ' ') side.push_back(static_cast<std::uint32_t>(ch - '0'));
  EXPECT_DOUBLE_EQ(cut_weight(g, side), 2.0);
  EXPECT_EQ(res.report->params["results"]["size_report"]["normative"], false);
}

TEST(Solve, KsatWithResampling) {
  const auto res = cmd_solve(cfg({{"command", "solve"}, {"name", "ksat"}, {"gen", "kcnf:n=80,m=30,k=4,max_int=3"}}));
  EXPECT_EQ(res.exit_code, kExitOk);
  EXPECT_EQ(res.report->params["results"]["method"], "moser-tardos");
  EXPECT_TRUE(res.report->params["results"]["valid"].get<bool>());
  EXPECT_EQ(res.text.rfind("bits ", 0), 0u);
}

TEST(Solve, LatinDistinctIsImmediate) {
  const auto res = cmd_solve(cfg({{"command", "solve"}, {"name", "latin"}, {"gen", "latin:n=6,k=1"}}));
  EXPECT_EQ(res.exit_code, kExitOk);
  EXPECT_EQ(res.report->params["results"]["work"], 0);
}

TEST(Solve, BudgetExhaustion) {
  // K4 has no proper 2-colouring, so rejection sampling must give up.
  const auto res =
      run_command(cfg({{"command", "solve"}, {"name", "coloring"}, {"gen", "complete4"}, {"colors", 2}, {"budget", 50}}));
  EXPECT_EQ(res.exit_code, kExitBudget);
  EXPECT_NE(res.message.find("not found within budget"), std::string::npos);
}

TEST(Game, EvenOdds) {
  const auto res = cmd_game(cfg({{"command", "game"}, {"name", "even-odds"}, {"rounds", 16}, {"trials", 100000}}));
  EXPECT_NEAR(res.report->p_hat, 14893.0 / 65536, 0.005);
  EXPECT_EQ(res.report->params["results"]["exact_win_fraction"], "14893/65536");
  const auto search = cmd_game(cfg({{"command", "game"}, {"name", "even-odds"}, {"rounds", 16}, {"trials", 10}, {"search", true}}));
  EXPECT_EQ(search.text.size(), 17u);
  EXPECT_TRUE(search.report->params["results"]["search"]["matches_exact"].get<bool>());
}

TEST(Game, MinCutCycle) {
  const auto res = cmd_game(cfg({{"command", "game"}, {"name", "min-cut"}, {"gen", "cycle4"}, {"trials", 10000}}));
  EXPECT_GE(res.report->p_hat, 1.0 / 6);
  EXPECT_EQ(res.exit_code, kExitOk);
}

TEST(Game, PenaltyFromConfig) {
  const json tests = json::array({{{"values", {1, 2}}, {"probs", {0.5, 0.5}}, {"penalty", {0.0, 1.9}}}});
  const auto res = cmd_game(cfg({{"command", "game"}, {"name", "penalty-tests"}, {"rounds", 50}, {"trials", 5000}, {"tests", tests}}));
  EXPECT_LT(res.report->params["results"]["mean_penalty"]["mean"].get<double>(), 50.0);
  EXPECT_EQ(res.report->params["results"]["greedy_penalty"], 0.0);
}

TEST(Game, InvalidParams) {
  EXPECT_EQ(run_command(cfg({{"command", "game"}, {"name", "graph-nav"}, {"gen", "cycle4"}})).exit_code, kExitError);
  EXPECT_EQ(run_command(cfg({{"command", "game"}, {"name", "even-odds"}, {"adversary", "nobody"}})).exit_code, kExitError);
  EXPECT_EQ(run_command(cfg({{"command", "game"}, {"name", "chess"}})).exit_code, kExitError);
}

TEST(ReportMerge, CsvAndJson) {
  const auto a = run_command(cfg({{"command", "verify"}, {"name", "maxcut"}, {"gen", "triangle"}, {"trials", 100}}));
  const auto b = run_command(cfg({{"command", "verify"}, {"name", "coloring"}, {"gen", "triangle"}, {"trials", 100}}));
  const std::vector<std::string> texts = {render_json(*a.report), render_json(*b.report)};
  const auto csv = cmd_report_merge(texts, "csv");
  EXPECT_EQ(std::count(csv.text.begin(), csv.text.end(), '\n'), 3);
  EXPECT_EQ(csv.text.rfind(csv_header(), 0), 0u);
  const auto merged = json::parse(cmd_report_merge(texts, "json").text);
  EXPECT_EQ(merged.size(), 2u);
  EXPECT_THROW(cmd_report_merge({"{}"}, "csv"), InvalidArgument);
}

TEST(Compress, RoundTripAndSizes) {
  const std::vector<std::uint8_t> empty;
  EXPECT_EQ(compressed_size_bits(empty), 32u);
  EXPECT_EQ(lzw_decompress(lzw_compress(empty)), empty);
  const std::vector<std::uint8_t> zeros(128, 0);
  EXPECT_LT(compressed_size_bits(zeros), 1024u / 4);
  EXPECT_EQ(lzw_decompress(lzw_compress(zeros)), zeros);
  RngStream rng(2024, 0);
  std::vector<std::uint8_t> noise(128);
  for (auto& b : noise) b = static_cast<std::uint8_t>(rng.below(256));
  EXPECT_GE(compressed_size_bits(noise), 1024u * 9 / 10);
  EXPECT_EQ(lzw_decompress(lzw_compress(noise)), noise);
  std::vector<std::uint8_t> big(200000);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<std::uint8_t>(rng.below(4) + 'a');
  EXPECT_EQ(lzw_decompress(lzw_compress(big)), big);
  EXPECT_EQ(compressed_size_bits(big), lzw_compress(big).size() * 8 - (8 - compressed_size_bits(big) % 8) % 8);
  const std::vector<std::uint8_t> junk = {0, 0, 0, 9, 0xff, 0xff};
  EXPECT_THROW(lzw_decompress(junk), Error);
}
