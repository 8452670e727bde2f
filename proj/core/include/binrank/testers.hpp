// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "binrank/oracle.hpp"
#include "binrank/solver.hpp"

namespace binrank {

enum class Mode { AtMost, Exactly };
enum class Algorithm { Adaptive, NonAdaptive, Baseline };
enum class Verdict { Accept, Reject, AbortUnknown };
enum class RejectReason { None, RankCheck, SizeGuard, Exhaustive };

const char* to_string(Algorithm a) noexcept;
const char* to_string(Verdict v) noexcept;
const char* to_string(RejectReason r) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct TesterConfig {
  unsigned d = 1;
  unsigned s = 1;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  Mode mode = Mode::AtMost;
  /// Majority vote over this many independent runs; 1 keeps the plain tester.
  unsigned amplification = 1;
  /// Tester used by the exact-rank mode once the matrix is large enough.
  Algorithm exact_inner = Algorithm::Adaptive;
  bool record_trace = false;
  /// Extra self-checks: on a size-guard rejection the exact solver must confirm
  /// that the final M[X,Y] has rank > d.
  bool verify = false;
  SolverBudget solver_budget{};

  /// Throws ContractError unless 0 < epsilon < 1, d >= 1, s >= 1.
  void validate() const;
};

struct TraceEvent {
  std::uint64_t iteration = 0;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::uint64_t rows_drawn = 0;
  std::uint64_t cols_drawn = 0;
  std::uint64_t queries = 0;
  std::string event;
};

struct TesterReport {
  std::string algorithm;
  Verdict verdict = Verdict::AbortUnknown;
  RejectReason reason = RejectReason::None;
  /// Adaptive and baseline: distinct cells fetched. Non-adaptive: entries of
  /// the pre-query table D, i.e. sum_{i<=T} floor(T/i).
  std::uint64_t queries = 0;
  /// Distinct cells actually read from the source (equals `queries` except
  /// for the non-adaptive tester, whose table may repeat cells).
  std::uint64_t distinct_cells = 0;
  std::uint64_t rows_drawn = 0;
  std::uint64_t cols_drawn = 0;
  std::size_t final_x_size = 0;
  std::size_t final_y_size = 0;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget_t = 0;
  std::uint64_t budget_T = 0;
  /// Proven query bound for this run, 0 when none is proven (baseline).
  std::uint64_t query_budget = 0;
  std::uint64_t solver_nodes = 0;
  std::vector<std::string> violations;
  std::vector<TraceEvent> trace;

  nlohmann::json to_json() const;
};

/// t = ceil(9d/eps).
std::uint64_t adaptive_trials(unsigned d, double epsilon);
/// 2 * binom_le(d,s) * 2^d * t.
std::uint64_t adaptive_query_budget(unsigned d, unsigned s, double epsilon);
/// T = ceil(324 d^2 binom_le(d,s) 2^d / eps^2).
std::uint64_t nonadaptive_draws(unsigned d, unsigned s, double epsilon);
/// sum_{i=1..T} floor(T/i): the size of the pre-query table.
std::uint64_t nonadaptive_table_size(std::uint64_t draws);
/// ceil(18 * 2^d / eps) iterations of the baseline reconstruction.
std::uint64_t baseline_iterations(unsigned d, double epsilon);

/// One-sided adaptive tester for br_s(M) <= d. Starts from X = {0}, Y = {0}.
TesterReport adaptive_test(MatrixOracle& oracle, const TesterConfig& cfg);

/// Non-adaptive tester: draws T rows and T columns, queries every
/// (x_i, y_j) with i*j <= T up front, then replays the adaptive logic against
/// that table. Throws ReplayMissError if the replay ever needs a cell outside
/// the table.
TesterReport nonadaptive_test(MatrixOracle& oracle, const TesterConfig& cfg);

/// Tester for br_s(M) == d. Small matrices (n*m < 2d^2/eps) are read in full
/// and decided exactly; otherwise cfg.exact_inner runs at eps/2.
TesterReport exact_rank_test(MatrixOracle& oracle, const TesterConfig& cfg);

/// Reconstruction of the earlier square-growth tester, for query-count
/// comparison only. Its constants are not proven; see baseline_iterations().
TesterReport baseline_parnas_test(MatrixOracle& oracle, const TesterConfig& cfg);

/// Dispatches on cfg.mode and `alg`, applying cfg.amplification.
TesterReport run_tester(Algorithm alg, MatrixOracle& oracle, const TesterConfig& cfg);

}  // namespace binrank
