// SPDX-License-Identifier: Apache-2.0
// binrank: gen / rank / test / bench front end.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "binrank/bm_format.hpp"
#include "binrank/errors.hpp"
#include "binrank/generators.hpp"
#include "binrank/harness.hpp"
#include "binrank/rng.hpp"
#include "binrank/solver.hpp"
#include "binrank/testers.hpp"

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kViolation = 3, kUnknown = 4 };

using namespace binrank;

struct GenArgs {
  std::string kind;
  Index n = 0;
  Index m = 0;
  unsigned d = 1;
  unsigned s = 1;
  std::uint64_t seed = 0;
  double eps = 0.1;
  std::string strategy = "tiny";
  double density = 0.5;
  std::string out;
  std::string cert;
};

int cmd_gen(const GenArgs& a) {
  InstanceSpec spec;
  const auto kind = parse_instance_kind(a.kind);
  if (!kind) throw ParseError("unknown kind '" + a.kind + "'");
  spec.kind = *kind;
  spec.n = a.n;
  spec.m = a.m;
  spec.d = a.d;
  spec.s = a.s;
  spec.seed = a.seed;
  spec.density = a.density;
  if (spec.kind == InstanceKind::Far) {
    spec.far_epsilon = a.eps;
    const auto strategy = parse_far_strategy(a.strategy);
    if (!strategy) throw ParseError("unknown strategy '" + a.strategy + "'");
    spec.strategy = *strategy;
  }
  const CertifiedInstance inst = generate(spec);
  save_bm(a.out, inst.matrix);
  if (!a.cert.empty()) {
    std::ofstream os(a.cert);
    if (!os) throw ParseError("cannot write " + a.cert);
    os << inst.certificate_json().dump(2) << '\n';
  }
  return kOk;
}

struct RankArgs {
  unsigned s = 1;
  int le = -1;
  std::uint64_t budget = 0;
  std::string file;
};

int cmd_rank(const RankArgs& a) {
  const BinaryMatrix mat = load_bm(a.file);
  SolverBudget budget;
  if (a.budget > 0) budget.max_nodes = a.budget;
  nlohmann::json out = {{"s", a.s}, {"n", mat.rows()}, {"m", mat.cols()}};
  Decision status;
  if (a.le >= 0) {
    const auto res = decide_rank_le(mat, static_cast<unsigned>(a.le), a.s, budget);
    status = res.status;
    out["d"] = a.le;
    out["decision"] = to_string(res.status);
    out["nodes"] = res.nodes;
    out["cover"] = res.witness ? cover_to_json(*res.witness) : nlohmann::json(nullptr);
  } else {
    const auto res = exact_rank(mat, a.s, budget);
    status = res.status;
    out["decision"] = to_string(res.status);
    out["nodes"] = res.nodes;
    if (res.status == Decision::Yes) {
      out["rank"] = res.rank;
      out["cover"] = cover_to_json(res.witness);
    }
  }
  std::cout << out.dump() << '\n';
  return status == Decision::Unknown ? kUnknown : kOk;
}

struct TestArgs {
  std::string mode = "le";
  std::string alg = "adaptive";
  unsigned d = 1;
  unsigned s = 1;
  double eps = 0.1;
  std::uint64_t seed = 0;
  unsigned trials = 1;
  unsigned amplify = 1;
  bool trace = false;
  bool verify = false;
  std::string file;
};

int cmd_test(const TestArgs& a) {
  const BinaryMatrix mat = load_bm(a.file);
  const auto alg = parse_algorithm(a.alg);
  if (!alg) throw ParseError("unknown algorithm '" + a.alg + "'");
  if (a.mode != "le" && a.mode != "eq") throw ParseError("mode must be le or eq");
  if (a.trials < 1) throw ParseError("--trials must be >= 1");

  TesterConfig cfg;
  cfg.d = a.d;
  cfg.s = a.s;
  cfg.epsilon = a.eps;
  cfg.mode = a.mode == "eq" ? Mode::Exactly : Mode::AtMost;
  cfg.amplification = a.amplify;
  cfg.record_trace = a.trace;
  cfg.verify = a.verify;
  cfg.validate();

  unsigned accepts = 0;
  bool unknown = false;
  bool violated = false;
  double sum = 0;
  std::uint64_t max_queries = 0;
  std::uint64_t budget = 0;
  for (unsigned t = 0; t < a.trials; ++t) {
    cfg.seed = a.trials == 1 ? a.seed : Rng::derive(a.seed, t);
    MatrixOracle oracle(mat);
    nlohmann::json line;
    try {
      const TesterReport rep = run_tester(*alg, oracle, cfg);
      line = rep.to_json();
      if (rep.verdict == Verdict::Accept) ++accepts;
      if (rep.verdict == Verdict::AbortUnknown) unknown = true;
      if (!rep.violations.empty() || (rep.query_budget > 0 && rep.queries > rep.query_budget)) violated = true;
      sum += static_cast<double>(rep.queries);
      max_queries = std::max(max_queries, rep.queries);
      budget = std::max(budget, rep.query_budget);
    } catch (const InvariantViolation& e) {
      violated = true;
      line = {{"verdict", "ERROR"}, {"error", e.what()}};
    }
    line["trial"] = t;
    std::cout << line.dump() << '\n';
  }
  nlohmann::json agg = {{"accept_rate", static_cast<double>(accepts) / a.trials},
                        {"mean_queries", sum / a.trials},
                        {"max_queries", max_queries},
                        {"budget", budget},
                        {"budget_utilization", budget == 0 ? nlohmann::json(nullptr)
                                                           : nlohmann::json(static_cast<double>(max_queries) /
                                                                            static_cast<double>(budget))}};
  std::cout << nlohmann::json{{"aggregate", agg}}.dump() << '\n';
  if (violated) return kViolation;
  if (unknown) return kUnknown;
  return kOk;
}

struct BenchArgs {
  std::string plan;
  std::string out;
  std::string compare;
  bool allow_unknown = false;
};

int cmd_bench(const BenchArgs& a) {
  std::ifstream in(a.plan);
  if (!in) throw ParseError("cannot read plan " + a.plan);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("plan: ") + e.what());
  }
  const auto base = std::filesystem::path(a.plan).parent_path().string();
  ExperimentPlan plan = parse_plan(j, base.empty() ? "." : base);
  if (const char* env = std::getenv("BINRANK_SEED")) {
    try {
      plan.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("BINRANK_SEED must be an unsigned integer");
    }
  }
  if (a.allow_unknown) plan.allow_unknown = true;
  if (!a.out.empty()) plan.output_path = a.out;

  const PlanResult result = run_plan(plan);
  const std::string text =
      plan.format == OutputFormat::Csv ? aggregates_csv(result.rows, plan.timing) : trials_jsonl(result);
  if (plan.output_path) {
    std::ofstream os(*plan.output_path, std::ios::binary);
    if (!os) throw ParseError("cannot write " + *plan.output_path);
    os << text;
  } else {
    std::cout << text;
  }
  if (!a.compare.empty()) {
    const auto comma = a.compare.find(',');
    if (comma == std::string::npos) throw ParseError("--compare expects reference,other");
    std::cerr << compare_table(result.rows, a.compare.substr(0, comma), a.compare.substr(comma + 1)).to_markdown();
  }
  for (const auto& msg : result.messages) std::cerr << msg << '\n';
  if (result.budget_violations > 0 || result.invariant_violations > 0) return kViolation;
  if (result.unknown > 0 && !plan.allow_unknown) {
    std::cerr << result.unknown << " ABORT_UNKNOWN verdicts\n";
    return kUnknown;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"s-binary rank property testing toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate an instance");
  g->add_option("kind", gen.kind, "rankle | tight | far | random")->required();
  g->add_option("--n", gen.n, "rows");
  g->add_option("--m", gen.m, "columns");
  g->add_option("--d", gen.d, "rank parameter");
  g->add_option("--s", gen.s, "multiplicity bound");
  g->add_option("--seed", gen.seed);
  g->add_option("--eps", gen.eps, "far: certified distance must exceed this");
  g->add_option("--strategy", gen.strategy, "far: tiny | block | lift");
  g->add_option("--density", gen.density);
  g->add_option("-o,--out", gen.out, "output .bm file")->required();
  g->add_option("--cert", gen.cert, "certificate JSON file");

  RankArgs rank;
  auto* r = app.add_subcommand("rank", "exact s-binary rank");
  r->add_option("--s", rank.s)->required();
  r->add_option("--le", rank.le, "decide br_s <= D instead of computing the rank");
  r->add_option("--budget", rank.budget, "search node limit per threshold");
  r->add_option("file", rank.file)->required();

  TestArgs test;
  auto* t = app.add_subcommand("test", "run a property tester");
  t->add_option("--mode", test.mode, "le | eq");
  t->add_option("--alg", test.alg, "adaptive | nonadaptive | baseline");
  t->add_option("--d", test.d)->required();
  t->add_option("--s", test.s)->required();
  t->add_option("--eps", test.eps)->required();
  t->add_option("--seed", test.seed);
  t->add_option("--trials", test.trials);
  t->add_option("--amplify", test.amplify, "majority vote over this many runs");
  t->add_flag("--trace", test.trace);
  t->add_flag("--verify", test.verify);
  t->add_option("file", test.file)->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "run an experiment plan");
  b->add_option("--plan", bench.plan)->required();
  b->add_option("--out", bench.out, "override the plan's output path");
  b->add_option("--compare", bench.compare, "print a ratio table, e.g. adaptive,baseline");
  b->add_flag("--allow-unknown", bench.allow_unknown);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*r) return cmd_rank(rank);
    if (*t) return cmd_test(test);
    if (*b) return cmd_bench(bench);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}
