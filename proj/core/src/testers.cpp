// SPDX-License-Identifier: Apache-2.0
#include "binrank/testers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "binrank/combinatorics.hpp"
#include "binrank/errors.hpp"
#include "binrank/rng.hpp"
#include "binrank/selection.hpp"

namespace binrank {

const char* to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Adaptive:
      return "adaptive";
    case Algorithm::NonAdaptive:
      return "nonadaptive";
    case Algorithm::Baseline:
      return "baseline";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Accept:
      return "ACCEPT";
    case Verdict::Reject:
      return "REJECT";
    case Verdict::AbortUnknown:
      return "ABORT_UNKNOWN";
  }
  return "?";
}

const char* to_string(RejectReason r) noexcept {
  switch (r) {
    case RejectReason::None:
      return "none";
    case RejectReason::RankCheck:
      return "rank_check";
    case RejectReason::SizeGuard:
      return "size_guard";
    case RejectReason::Exhaustive:
      return "exhaustive";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "adaptive") return Algorithm::Adaptive;
  if (name == "nonadaptive") return Algorithm::NonAdaptive;
  if (name == "baseline") return Algorithm::Baseline;
  return std::nullopt;
}

void TesterConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ContractError("epsilon must lie in (0,1)");
  if (d < 1) throw ContractError("d must be >= 1");
  if (s < 1) throw ContractError("s must be >= 1");
  if (amplification < 1) throw ContractError("amplification must be >= 1");
}

nlohmann::json TesterReport::to_json() const {
  nlohmann::json j = {
      {"algorithm", algorithm},
      {"verdict", to_string(verdict)},
      {"reject_reason", to_string(reason)},
      {"queries", queries},
      {"distinct_cells", distinct_cells},
      {"rows_drawn", rows_drawn},
      {"cols_drawn", cols_drawn},
      {"final_X_size", final_x_size},
      {"final_Y_size", final_y_size},
      {"iterations", iterations},
      {"seed", seed},
      {"budget_t", budget_t},
      {"budget_T", budget_T},
      {"query_budget", query_budget},
      {"solver_nodes", solver_nodes},
      {"violations", violations},
  };
  if (!trace.empty()) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : trace)
      events.push_back({{"iteration", e.iteration},
                        {"X", e.x_size},
                        {"Y", e.y_size},
                        {"rows_drawn", e.rows_drawn},
                        {"cols_drawn", e.cols_drawn},
                        {"queries", e.queries},
                        {"event", e.event}});
    j["trace"] = std::move(events);
  }
  return j;
}

namespace {

// Real-valued parameters are rounded up. The slack absorbs binary
// representation error in decimal epsilons (9/0.1 must give 90, not 91).
std::uint64_t ceil_count(double x) {
  if (!(x < 9.0e18)) throw ResourceError("parameter overflow");
  return static_cast<std::uint64_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

constexpr unsigned kWarmStartMaxDepth = 6;

bool cell_ok(bool bit, std::uint64_t a, std::uint64_t b, unsigned s) {
  const auto w = static_cast<unsigned>(std::popcount(a & b));
  return bit ? (w >= 1 && w <= s) : w == 0;
}

// Extends a factorization of the leading part of `sel` by at most one new row
// and one new column, if some choice of label sets works.
std::optional<Factorization> try_extend(const Factorization& f, const SubmatrixSelection& sel, unsigned s) {
  const std::size_t r0 = f.rows();
  const std::size_t c0 = f.cols();
  const std::size_t r1 = sel.row_count();
  const std::size_t c1 = sel.col_count();
  const unsigned d = f.depth();
  if (r1 < r0 || c1 < c0 || r1 > r0 + 1 || c1 > c0 + 1 || d > kWarmStartMaxDepth) return std::nullopt;
  if (r1 == r0 && c1 == c0) return f;

  const std::uint64_t nvals = std::uint64_t{1} << d;
  const auto& A = f.row_sets();
  const auto& B = f.col_sets();
  const bool new_row = r1 > r0;
  const bool new_col = c1 > c0;

  for (std::uint64_t a = 0; a < (new_row ? nvals : 1); ++a) {
    bool ok = true;
    for (std::size_t j = 0; j < c0 && ok && new_row; ++j) ok = cell_ok(sel.entry(r0, j), a, B[j], s);
    if (!ok) continue;
    for (std::uint64_t b = 0; b < (new_col ? nvals : 1); ++b) {
      bool okc = true;
      for (std::size_t i = 0; i < r0 && okc && new_col; ++i) okc = cell_ok(sel.entry(i, c0), A[i], b, s);
      if (okc && new_row && new_col) okc = cell_ok(sel.entry(r0, c0), a, b, s);
      if (!okc) continue;
      auto rows = A;
      auto cols = B;
      if (new_row) rows.push_back(a);
      if (new_col) cols.push_back(b);
      return Factorization(d, std::move(rows), std::move(cols));
    }
  }
  return std::nullopt;
}

struct RankCheck {
  Decision status = Decision::Unknown;
  std::optional<Factorization> factorization;
};

// Decides br_s(M[X,Y]) <= d. A factorization of a previous (smaller)
// selection is only a warm start; a failed extension falls back to the full
// search, so NO answers are always recomputed.
RankCheck check_rank(const SubmatrixSelection& sel, const Factorization* hint, const TesterConfig& cfg,
                     std::uint64_t& nodes) {
  if (hint != nullptr) {
    if (auto f = try_extend(*hint, sel, cfg.s)) return {Decision::Yes, std::move(f)};
  }
  auto res = decide_factorization(sel.to_matrix(), cfg.d, cfg.s, cfg.solver_budget);
  nodes += res.nodes;
  return {res.status, std::move(res.factorization)};
}

void insert_sorted(std::vector<Index>& v, Index x) { v.insert(std::upper_bound(v.begin(), v.end(), x), x); }

// k-th element (0-based) of [0,universe) \ excluded, where excluded is sorted.
Index kth_outside(const std::vector<Index>& excluded, Index k) {
  Index candidate = k;
  for (Index e : excluded) {
    if (e <= candidate)
      ++candidate;
    else
      break;
  }
  return candidate;
}

// Where the adaptive logic gets its random rows/columns and entries from.
class DrawSource {
 public:
  virtual ~DrawSource() = default;
  virtual Index initial_row() = 0;
  virtual Index initial_col() = 0;
  /// Next random row given the current sorted X; nullopt when none is left.
  virtual std::optional<Index> draw_row(const std::vector<Index>& sorted_x) = 0;
  virtual std::optional<Index> draw_col(const std::vector<Index>& sorted_y) = 0;
  virtual bool entry(Index i, Index j) = 0;
};

// Live oracle; draws uniformly from [n] \ X and [m] \ Y.
class OracleSource final : public DrawSource {
 public:
  OracleSource(MatrixOracle& oracle, Rng& rng) : oracle_(oracle), rng_(rng) {}
  Index initial_row() override { return 0; }
  Index initial_col() override { return 0; }
  std::optional<Index> draw_row(const std::vector<Index>& sorted_x) override {
    if (sorted_x.size() >= oracle_.rows()) return std::nullopt;
    return kth_outside(sorted_x, rng_.below(oracle_.rows() - sorted_x.size()));
  }
  std::optional<Index> draw_col(const std::vector<Index>& sorted_y) override {
    if (sorted_y.size() >= oracle_.cols()) return std::nullopt;
    return kth_outside(sorted_y, rng_.below(oracle_.cols() - sorted_y.size()));
  }
  bool entry(Index i, Index j) override { return oracle_.query(i, j); }

 private:
  MatrixOracle& oracle_;
  Rng& rng_;
};

// Pre-drawn sequences x^(1..T), y^(1..T) and the table of pre-queried cells.
// A replayed draw may already lie in X (or Y); the caller then counts it as a
// failed draw.
class ReplaySource final : public DrawSource {
 public:
  ReplaySource(const std::vector<std::uint32_t>& xs, const std::vector<std::uint32_t>& ys,
               const std::vector<std::uint8_t>& table, Index cols)
      : xs_(xs), ys_(ys), table_(table), cols_(cols) {}
  Index initial_row() override { return next(xs_, u_, "row"); }
  Index initial_col() override { return next(ys_, w_, "column"); }
  std::optional<Index> draw_row(const std::vector<Index>&) override { return next(xs_, u_, "row"); }
  std::optional<Index> draw_col(const std::vector<Index>&) override { return next(ys_, w_, "column"); }
  bool entry(Index i, Index j) override {
    const std::uint8_t v = table_[i * cols_ + j];
    if (v == 0)
      throw ReplayMissError("non-adaptive replay needs M[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            "], which is not in the pre-query table");
    return v == 2;
  }

 private:
  static Index next(const std::vector<std::uint32_t>& seq, std::size_t& pos, const char* what) {
    if (pos >= seq.size()) throw ReplayMissError(std::string("non-adaptive replay ran out of pre-drawn ") + what + "s");
    return seq[pos++];
  }

  const std::vector<std::uint32_t>& xs_;
  const std::vector<std::uint32_t>& ys_;
  const std::vector<std::uint8_t>& table_;
  Index cols_;
  std::size_t u_ = 0;
  std::size_t w_ = 0;
};

// Adaptive-Test-Rank over an arbitrary DrawSource. `queries` reports the
// source's running query count for the trace.
template <typename QueryCounter>
void run_adaptive(DrawSource& src, Rng& rng, const TesterConfig& cfg, TesterReport& rep, QueryCounter queries) {
  const std::uint64_t t = adaptive_trials(cfg.d, cfg.epsilon);
  const std::uint64_t bound = product_bound(cfg.d, cfg.s);
  rep.budget_t = t;

  const Index x0 = src.initial_row();
  const Index y0 = src.initial_col();
  SubmatrixSelection sel(x0, y0, src.entry(x0, y0));
  std::vector<Index> sorted_x{x0};
  std::vector<Index> sorted_y{y0};
  rep.rows_drawn = 1;
  rep.cols_drawn = 1;
  std::optional<Factorization> witness;

  auto note = [&](const char* event) {
    if (cfg.record_trace)
      rep.trace.push_back({rep.iterations, sel.row_count(), sel.col_count(), rep.rows_drawn, rep.cols_drawn,
                           queries(), event});
  };
  auto finish_with = [&](Verdict v, RejectReason r) {
    rep.verdict = v;
    rep.reason = r;
    rep.final_x_size = sel.row_count();
    rep.final_y_size = sel.col_count();
  };

  while (static_cast<std::uint64_t>(sel.row_count()) * sel.col_count() <= bound) {
    ++rep.iterations;
    const std::uint64_t nx = sel.row_count();
    const std::uint64_t ny = sel.col_count();
    if (rep.rows_drawn > (nx + std::min(nx, ny - 1)) * t)
      rep.violations.push_back("row draws exceed (|X|+min(|X|,|Y|-1))t at iteration " + std::to_string(rep.iterations));
    if (rep.cols_drawn > (ny + std::min(nx, ny)) * t)
      rep.violations.push_back("column draws exceed (|Y|+min(|X|,|Y|))t at iteration " + std::to_string(rep.iterations));
    if (!sel.is_perfect())
      rep.violations.push_back("M[X,Y] not perfect at iteration " + std::to_string(rep.iterations));

    auto rc = check_rank(sel, witness ? &*witness : nullptr, cfg, rep.solver_nodes);
    if (rc.status == Decision::Unknown) {
      note("abort-unknown");
      return finish_with(Verdict::AbortUnknown, RejectReason::None);
    }
    if (rc.status == Decision::No) {
      note("reject-rank");
      return finish_with(Verdict::Reject, RejectReason::RankCheck);
    }
    witness = std::move(rc.factorization);

    bool finished = false;
    std::vector<Index> xp;  // multiset X'
    std::vector<Index> yp;  // multiset Y'
    std::vector<BitVector> xp_rows;  // M[x,Y] for x in X'
    std::vector<BitVector> yp_cols;  // M[X,y] for y in Y'

    auto row_phase = [&] {
      while (!finished && xp.size() < t) {
        const auto x = src.draw_row(sorted_x);
        if (!x) break;
        ++rep.rows_drawn;
        BitVector vals(sel.col_count());
        for (std::size_t b = 0; b < sel.col_count(); ++b) vals[b] = src.entry(*x, sel.cols()[b]);
        xp.push_back(*x);
        if (!sel.contains_row(*x) && sel.is_new_row(vals)) {
          sel.add_row(*x, vals);
          insert_sorted(sorted_x, *x);
          finished = true;
          note("new-row");
        }
        xp_rows.push_back(std::move(vals));
      }
    };
    auto col_phase = [&] {
      while (!finished && yp.size() < t) {
        const auto y = src.draw_col(sorted_y);
        if (!y) break;
        ++rep.cols_drawn;
        BitVector vals(sel.row_count());
        for (std::size_t a = 0; a < sel.row_count(); ++a) vals[a] = src.entry(sel.rows()[a], *y);
        yp.push_back(*y);
        if (!sel.contains_col(*y) && sel.is_new_column(vals)) {
          sel.add_column(*y, vals);
          insert_sorted(sorted_y, *y);
          finished = true;
          note("new-column");
        }
        yp_cols.push_back(std::move(vals));
      }
    };

    if (sel.row_count() >= sel.col_count()) {
      row_phase();
      if (!finished) col_phase();
    } else {
      col_phase();
      if (!finished) row_phase();
    }

    // Joint phase: pair a failed row with a failed column.
    while (!finished && !xp.empty() && !yp.empty()) {
      const auto ix = static_cast<std::size_t>(rng.below(xp.size()));
      const auto iy = static_cast<std::size_t>(rng.below(yp.size()));
      const Index x = xp[ix];
      const Index y = yp[iy];
      bool is_new = false;
      if (!sel.contains_row(x) && !sel.contains_col(y)) {
        const bool corner = src.entry(x, y);
        BitVector row_ext = xp_rows[ix];
        row_ext.push_back(corner);
        BitVector col_ext = yp_cols[iy];
        col_ext.push_back(corner);
        is_new = joint_extension_is_new(sel, row_ext, col_ext);
        if (is_new) {
          sel.add_column(y, yp_cols[iy]);
          sel.add_row(x, row_ext);
          insert_sorted(sorted_x, x);
          insert_sorted(sorted_y, y);
          finished = true;
          note("new-row-and-column");
        }
      }
      if (!is_new) {
        xp[ix] = xp.back();
        xp.pop_back();
        xp_rows[ix] = std::move(xp_rows.back());
        xp_rows.pop_back();
        yp[iy] = yp.back();
        yp.pop_back();
        yp_cols[iy] = std::move(yp_cols.back());
        yp_cols.pop_back();
      }
    }

    if (!finished) {
      note("accept");
      return finish_with(Verdict::Accept, RejectReason::None);
    }
  }

  note("reject-size-guard");
  finish_with(Verdict::Reject, RejectReason::SizeGuard);
  if (cfg.verify) {
    auto res = decide_rank_le(sel.to_matrix(), cfg.d, cfg.s, cfg.solver_budget);
    rep.solver_nodes += res.nodes;
    if (res.status == Decision::Yes)
      rep.violations.push_back("size-guard rejection but the solver finds br_s(M[X,Y]) <= d");
  }
}

}  // namespace

std::uint64_t adaptive_trials(unsigned d, double epsilon) { return ceil_count(9.0 * d / epsilon); }

std::uint64_t adaptive_query_budget(unsigned d, unsigned s, double epsilon) {
  return 2 * product_bound(d, s) * adaptive_trials(d, epsilon);
}

std::uint64_t nonadaptive_draws(unsigned d, unsigned s, double epsilon) {
  const double pb = static_cast<double>(product_bound(d, s));
  return ceil_count(324.0 * d * d * pb / (epsilon * epsilon));
}

std::uint64_t nonadaptive_table_size(std::uint64_t draws) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 1; i <= draws; ++i) total += draws / i;
  return total;
}

std::uint64_t baseline_iterations(unsigned d, double epsilon) {
  if (d >= 62) throw ResourceError("baseline: d too large");
  return ceil_count(18.0 * static_cast<double>(std::uint64_t{1} << d) / epsilon);
}

TesterReport adaptive_test(MatrixOracle& oracle, const TesterConfig& cfg) {
  cfg.validate();
  TesterReport rep;
  rep.algorithm = "adaptive";
  rep.seed = cfg.seed;
  rep.query_budget = adaptive_query_budget(cfg.d, cfg.s, cfg.epsilon);
  const auto start = oracle.query_count();
  Rng rng(cfg.seed);
  OracleSource src(oracle, rng);
  run_adaptive(src, rng, cfg, rep, [&] { return oracle.query_count() - start; });
  rep.queries = oracle.query_count() - start;
  rep.distinct_cells = rep.queries;
  return rep;
}

TesterReport nonadaptive_test(MatrixOracle& oracle, const TesterConfig& cfg) {
  cfg.validate();
  TesterReport rep;
  rep.algorithm = "nonadaptive";
  rep.seed = cfg.seed;
  const std::uint64_t draws = nonadaptive_draws(cfg.d, cfg.s, cfg.epsilon);
  if (draws > (std::uint64_t{1} << 31)) throw ResourceError("non-adaptive tester: T exceeds desk-scale limits");
  if (oracle.rows() > std::numeric_limits<std::uint32_t>::max() ||
      oracle.cols() > std::numeric_limits<std::uint32_t>::max())
    throw ResourceError("non-adaptive tester: matrix too large");
  rep.budget_T = draws;
  rep.budget_t = adaptive_trials(cfg.d, cfg.epsilon);

  Rng rng(cfg.seed);
  Rng draw_rng = rng.split(1);
  Rng logic_rng = rng.split(2);
  std::vector<std::uint32_t> xs(draws);
  std::vector<std::uint32_t> ys(draws);
  for (auto& x : xs) x = static_cast<std::uint32_t>(draw_rng.below(oracle.rows()));
  for (auto& y : ys) y = static_cast<std::uint32_t>(draw_rng.below(oracle.cols()));

  // Every query is issued here, before any of the tester's logic runs.
  const auto start = oracle.query_count();
  const Index cols = oracle.cols();
  std::vector<std::uint8_t> table(oracle.rows() * cols, 0);
  std::uint64_t entries = 0;
  for (std::uint64_t i = 1; i <= draws; ++i) {
    const Index x = xs[i - 1];
    const std::uint64_t jmax = draws / i;
    for (std::uint64_t j = 1; j <= jmax; ++j) {
      const Index y = ys[j - 1];
      table[x * cols + y] = oracle.query(x, y) ? 2 : 1;
    }
    entries += jmax;
  }
  rep.queries = entries;
  rep.distinct_cells = oracle.query_count() - start;
  rep.query_budget = entries;

  ReplaySource src(xs, ys, table, cols);
  run_adaptive(src, logic_rng, cfg, rep, [&] { return entries; });
  if (oracle.query_count() - start != rep.distinct_cells)
    throw InvariantViolation("non-adaptive tester queried the oracle after the pre-query phase");
  return rep;
}

TesterReport exact_rank_test(MatrixOracle& oracle, const TesterConfig& cfg) {
  cfg.validate();
  const double n = static_cast<double>(oracle.rows());
  const double m = static_cast<double>(oracle.cols());
  const double d = cfg.d;
  if (n * m * cfg.epsilon < 2.0 * d * d) {
    TesterReport rep;
    rep.algorithm = "exact-small";
    rep.seed = cfg.seed;
    const auto start = oracle.query_count();
    BinaryMatrix full(oracle.rows(), oracle.cols());
    for (Index i = 0; i < oracle.rows(); ++i)
      for (Index j = 0; j < oracle.cols(); ++j)
        if (oracle.query(i, j)) full.set(i, j, true);
    rep.queries = oracle.query_count() - start;
    rep.distinct_cells = rep.queries;
    rep.query_budget = full.size();
    rep.final_x_size = full.rows();
    rep.final_y_size = full.cols();
    const auto rank = exact_rank(full, cfg.s, cfg.solver_budget);
    rep.solver_nodes = rank.nodes;
    if (rank.status != Decision::Yes) {
      rep.verdict = Verdict::AbortUnknown;
    } else if (rank.rank == cfg.d) {
      rep.verdict = Verdict::Accept;
    } else {
      rep.verdict = Verdict::Reject;
      rep.reason = RejectReason::Exhaustive;
    }
    return rep;
  }

  TesterConfig inner = cfg;
  inner.mode = Mode::AtMost;
  inner.epsilon = cfg.epsilon / 2.0;
  TesterReport rep;
  switch (cfg.exact_inner) {
    case Algorithm::Adaptive:
      rep = adaptive_test(oracle, inner);
      break;
    case Algorithm::NonAdaptive:
      rep = nonadaptive_test(oracle, inner);
      break;
    case Algorithm::Baseline:
      rep = baseline_parnas_test(oracle, inner);
      break;
  }
  rep.algorithm = std::string("exact-") + to_string(cfg.exact_inner);
  return rep;
}

TesterReport baseline_parnas_test(MatrixOracle& oracle, const TesterConfig& cfg) {
  cfg.validate();
  TesterReport rep;
  rep.algorithm = "baseline";
  rep.seed = cfg.seed;
  const auto start = oracle.query_count();
  Rng rng(cfg.seed);
  OracleSource src(oracle, rng);
  const std::uint64_t iterations = baseline_iterations(cfg.d, cfg.epsilon);

  SubmatrixSelection current(0, 0, oracle.query(0, 0));
  std::vector<Index> sorted_x{0};
  std::vector<Index> sorted_y{0};
  rep.rows_drawn = 1;
  rep.cols_drawn = 1;
  std::optional<Factorization> witness;
  std::size_t distinct_r = 1;
  std::size_t distinct_c = 1;

  auto done = [&](Verdict v, RejectReason r) {
    rep.verdict = v;
    rep.reason = r;
    rep.final_x_size = current.row_count();
    rep.final_y_size = current.col_count();
    rep.queries = oracle.query_count() - start;
    rep.distinct_cells = rep.queries;
    return rep;
  };

  for (std::uint64_t it = 0; it < iterations; ++it) {
    ++rep.iterations;
    SubmatrixSelection grown = current;
    const auto x = src.draw_row(sorted_x);
    const auto y = src.draw_col(sorted_y);
    if (y) {
      ++rep.cols_drawn;
      grown.add_column(*y, fetch_column(oracle, grown.rows(), *y));
    }
    if (x) {
      ++rep.rows_drawn;
      grown.add_row(*x, fetch_row(oracle, *x, grown.cols()));
    }
    if (!x && !y) break;  // the whole matrix is already selected

    auto rc = check_rank(grown, witness ? &*witness : nullptr, cfg, rep.solver_nodes);
    if (rc.status == Decision::Unknown) return done(Verdict::AbortUnknown, RejectReason::None);
    if (rc.status == Decision::No) return done(Verdict::Reject, RejectReason::RankCheck);

    const auto grown_matrix = grown.to_matrix();
    const std::size_t gr = grown_matrix.distinct_rows();
    const std::size_t gc = grown_matrix.distinct_cols();
    if (gr > distinct_r || gc > distinct_c) {
      current = std::move(grown);
      if (x) insert_sorted(sorted_x, *x);
      if (y) insert_sorted(sorted_y, *y);
      distinct_r = gr;
      distinct_c = gc;
      witness = std::move(rc.factorization);
    }
    if (cfg.record_trace)
      rep.trace.push_back({rep.iterations, current.row_count(), current.col_count(), rep.rows_drawn, rep.cols_drawn,
                           oracle.query_count() - start, "iteration"});
  }
  return done(Verdict::Accept, RejectReason::None);
}

namespace {

TesterReport run_once(Algorithm alg, MatrixOracle& oracle, const TesterConfig& cfg) {
  if (cfg.mode == Mode::Exactly) {
    TesterConfig c = cfg;
    c.exact_inner = alg;
    return exact_rank_test(oracle, c);
  }
  switch (alg) {
    case Algorithm::Adaptive:
      return adaptive_test(oracle, cfg);
    case Algorithm::NonAdaptive:
      return nonadaptive_test(oracle, cfg);
    case Algorithm::Baseline:
      return baseline_parnas_test(oracle, cfg);
  }
  throw ContractError("unknown algorithm");
}

}  // namespace

TesterReport run_tester(Algorithm alg, MatrixOracle& oracle, const TesterConfig& cfg) {
  cfg.validate();
  if (cfg.amplification <= 1) return run_once(alg, oracle, cfg);

  TesterReport combined;
  unsigned accepts = 0;
  bool aborted = false;
  const auto start = oracle.query_count();
  for (unsigned r = 0; r < cfg.amplification; ++r) {
    TesterConfig c = cfg;
    c.amplification = 1;
    c.seed = Rng::derive(cfg.seed, r);
    TesterReport rep = run_once(alg, oracle, c);
    if (rep.verdict == Verdict::AbortUnknown) aborted = true;
    if (rep.verdict == Verdict::Accept) ++accepts;
    combined.queries += rep.queries;
    combined.query_budget += rep.query_budget;
    combined.rows_drawn += rep.rows_drawn;
    combined.cols_drawn += rep.cols_drawn;
    combined.iterations += rep.iterations;
    combined.solver_nodes += rep.solver_nodes;
    combined.budget_t = rep.budget_t;
    combined.budget_T = rep.budget_T;
    combined.final_x_size = rep.final_x_size;
    combined.final_y_size = rep.final_y_size;
    combined.algorithm = rep.algorithm;
    for (auto& v : rep.violations) combined.violations.push_back(std::move(v));
  }
  combined.seed = cfg.seed;
  combined.distinct_cells = oracle.query_count() - start;
  if (aborted)
    combined.verdict = Verdict::AbortUnknown;
  else
    combined.verdict = 2 * accepts > cfg.amplification ? Verdict::Accept : Verdict::Reject;
  return combined;
}

}  // namespace binrank
