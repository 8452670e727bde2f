// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. Reference values come
// from the oracles in support.hpp or from direct computation in this file.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "binrank/combinatorics.hpp"
#include "binrank/errors.hpp"
#include "binrank/generators.hpp"
#include "binrank/harness.hpp"
#include "binrank/oracle.hpp"
#include "binrank/rng.hpp"
#include "binrank/selection.hpp"
#include "binrank/solver.hpp"
#include "binrank/testers.hpp"
#include "support.hpp"

using namespace binrank;
namespace bt = binrank::testing;

namespace {

// Pre-registered statistics for the soundness checks.
constexpr unsigned kSoundTrials = 200;
constexpr double kTarget = 2.0 / 3.0;
constexpr double kZ = 2.1;  // one-sided normal quantile, alpha ~ 0.018
const double kDelta = kZ * std::sqrt(kTarget * (1 - kTarget) / kSoundTrials);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<std::pair<int, std::string>> g_lines;
int g_failed = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::ostringstream line;
  line << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << " (" << name << "): " << o.detail;
  std::cout << line.str() << std::endl;
  if (!o.pass) ++g_failed;
}

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

// ---- independent reference values -----------------------------------------

std::uint64_t binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t ref_binom_le(unsigned d, unsigned s) {
  std::uint64_t sum = 0;
  for (unsigned i = 0; i <= std::min(s, d); ++i) sum += binom(d, i);
  return sum;
}

std::uint64_t ref_product_bound(unsigned d, unsigned s) { return ref_binom_le(d, s) << d; }

std::uint64_t ref_table_size(std::uint64_t T) {
  std::uint64_t sum = 0;
  for (std::uint64_t i = 1; i <= T; ++i) sum += T / i;
  return sum;
}

std::size_t count_distinct_rows(const BinaryMatrix& m) {
  std::set<BitVector> rows;
  for (Index i = 0; i < m.rows(); ++i) rows.insert(m.row(i));
  return rows.size();
}

std::size_t count_distinct_cols(const BinaryMatrix& m) {
  std::set<BitVector> cols;
  for (Index j = 0; j < m.cols(); ++j) cols.insert(m.column(j));
  return cols.size();
}

// ---- run bookkeeping shared by criteria 2 and 3 ------------------------------

struct RunLedger {
  std::uint64_t adaptive_runs = 0;
  std::uint64_t adaptive_over = 0;
  std::uint64_t adaptive_max_util_num = 0;
  std::uint64_t adaptive_max_util_den = 1;
  std::uint64_t nonadaptive_runs = 0;
  std::uint64_t table_mismatch = 0;
  std::uint64_t replay_misses = 0;
  std::uint64_t self_check_violations = 0;
  std::map<std::uint64_t, std::uint64_t> table_cache;
};
RunLedger g_runs;

void note_adaptive(const TesterReport& r, const TesterConfig& cfg) {
  ++g_runs.adaptive_runs;
  const std::uint64_t bound = 2 * ref_product_bound(cfg.d, cfg.s) * adaptive_trials(cfg.d, cfg.epsilon);
  if (r.queries > bound) ++g_runs.adaptive_over;
  if (r.queries * g_runs.adaptive_max_util_den > g_runs.adaptive_max_util_num * bound) {
    g_runs.adaptive_max_util_num = r.queries;
    g_runs.adaptive_max_util_den = bound;
  }
  g_runs.self_check_violations += r.violations.size();
}

std::optional<TesterReport> run_adaptive(const BinaryMatrix& m, const TesterConfig& cfg) {
  MatrixOracle o(m);
  auto r = adaptive_test(o, cfg);
  note_adaptive(r, cfg);
  return r;
}

std::optional<TesterReport> run_nonadaptive(const BinaryMatrix& m, const TesterConfig& cfg) {
  ++g_runs.nonadaptive_runs;
  MatrixOracle o(m);
  try {
    auto r = nonadaptive_test(o, cfg);
    auto [it, fresh] = g_runs.table_cache.try_emplace(r.budget_T, 0);
    if (fresh) it->second = ref_table_size(r.budget_T);
    if (r.queries != it->second) ++g_runs.table_mismatch;
    g_runs.self_check_violations += r.violations.size();
    return r;
  } catch (const ReplayMissError&) {
    ++g_runs.replay_misses;
    return std::nullopt;
  }
}

TesterConfig make_cfg(unsigned d, unsigned s, double eps, std::uint64_t seed) {
  TesterConfig c;
  c.d = d;
  c.s = s;
  c.epsilon = eps;
  c.seed = seed;
  return c;
}

// ---- criterion 1 corpus --------------------------------------------------------

struct CorpusItem {
  BinaryMatrix matrix;
  unsigned d;
  unsigned s;
  std::string origin;
};

std::vector<CorpusItem> g_corpus;

void build_completeness_corpus() {
  Rng rng(20240601);
  for (unsigned d = 1; d <= 3; ++d)
    for (unsigned s = 1; s <= 2; ++s) {
      int made = 0;
      // 30 random rectangle unions.
      while (made < 30) {
        const Index n = 12 + rng.below(29);
        const Index m = 12 + rng.below(29);
        const double density = s == 1 ? 0.2 + 0.1 * static_cast<double>(rng.below(2)) : 0.3 + 0.1 * static_cast<double>(rng.below(2));
        try {
          auto inst = gen_rank_le(n, m, d, s, rng.next(), density);
          g_corpus.push_back({std::move(inst.matrix), d, s, "rankle"});
          ++made;
        } catch (const GenerationError&) {
        }
      }
      // 10 tight blowups.
      for (int k = 0; k < 10; ++k) {
        InstanceSpec spec;
        spec.kind = InstanceKind::Tight;
        spec.d = d;
        spec.s = s;
        spec.n = (Index{1} << d) + rng.below(30);
        spec.m = ref_binom_le(d, s) + rng.below(30);
        spec.seed = rng.next();
        g_corpus.push_back({generate(spec).matrix, d, s, "tight"});
      }
      // 10 blowups of random 5x5 matrices that the solver places at rank <= d.
      int kept = 0;
      while (kept < 10) {
        const auto small = random_matrix(5, 5, 0.4, rng.next());
        if (decide_rank_le(small, d, s).status != Decision::Yes) continue;
        g_corpus.push_back({blowup(small, 20 + rng.below(15), 20 + rng.below(15), rng.next()), d, s, "blowup"});
        ++kept;
      }
    }
}

Outcome criterion1() {
  constexpr unsigned kSeeds = 20;
  constexpr double kEpsAdaptive = 0.1;
  constexpr double kEpsNonadaptive = 0.5;
  std::uint64_t runs = 0, accepts = 0, uncertified = 0;
  std::map<std::pair<unsigned, unsigned>, unsigned> per_class;
  for (const auto& item : g_corpus) {
    if (decide_rank_le(item.matrix, item.d, item.s).status != Decision::Yes) {
      ++uncertified;
      continue;
    }
    ++per_class[{item.d, item.s}];
    for (unsigned seed = 0; seed < kSeeds; ++seed) {
      const auto a = run_adaptive(item.matrix, make_cfg(item.d, item.s, kEpsAdaptive, seed));
      const auto b = run_nonadaptive(item.matrix, make_cfg(item.d, item.s, kEpsNonadaptive, seed));
      runs += 2;
      accepts += (a && a->verdict == Verdict::Accept) + (b && b->verdict == Verdict::Accept);
    }
  }
  bool enough = per_class.size() == 6;
  for (const auto& [k, v] : per_class) enough = enough && v >= 50;
  std::ostringstream d;
  d << accepts << "/" << runs << " runs accepted over " << g_corpus.size() - uncertified
    << " solver-certified instances (>=50 per (d,s), " << kSeeds << " seeds, adaptive eps=" << kEpsAdaptive
    << ", nonadaptive eps=" << kEpsNonadaptive << "); uncertified=" << uncertified;
  return {enough && uncertified == 0 && accepts == runs, d.str()};
}

// ---- criterion 4 ----------------------------------------------------------------

struct FarItem {
  std::string label;
  BinaryMatrix matrix;
  unsigned d;
  unsigned s;
  double eps;
  std::string certificate;
};

std::vector<FarItem> build_far_corpus(std::vector<std::string>& cert_errors) {
  std::vector<FarItem> out;
  auto add = [&](const std::string& label, CertifiedInstance inst, unsigned d, unsigned s, double eps) {
    const auto& cert = std::get<FarCertificate>(inst.certificate);
    std::string how = cert.method + " " + std::to_string(cert.distance.numerator()) + "/" +
                      std::to_string(cert.distance.denominator());
    std::optional<std::size_t> flips;  // independent exhaustive distance
    if (d == 1 && inst.matrix.rows() <= 8 && inst.matrix.cols() <= 8)
      flips = bt::brute_distance_rank1(inst.matrix);
    else if (inst.matrix.size() <= 16)
      flips = bt::brute_distance(inst.matrix, d, s);
    if (flips) {
      const double brute = static_cast<double>(*flips) / static_cast<double>(inst.matrix.size());
      if (!(brute > eps)) cert_errors.push_back(label + ": exhaustive distance " + fmt(brute));
      how += " (exhaustive " + fmt(brute, 3) + ")";
    }
    if (!(boost::rational_cast<double>(cert.distance) > eps)) cert_errors.push_back(label + ": certificate not above eps");
    out.push_back({label, std::move(inst.matrix), d, s, eps, how});
  };
  add("tiny 6x6 d=1", gen_far(6, 6, 1, 1, 0.15, 31, FarStrategy::Tiny), 1, 1, 0.15);
  add("tiny 8x8 d=1", gen_far(8, 8, 1, 1, 0.15, 32, FarStrategy::Tiny), 1, 1, 0.15);
  add("tiny 4x4 d=2", gen_far(4, 4, 2, 1, 0.06, 33, FarStrategy::Tiny), 2, 1, 0.06);
  add("block 50x50 d=1", gen_far(50, 50, 1, 1, 0.15, 34, FarStrategy::Block), 1, 1, 0.15);
  add("block 26x26 d=2", gen_far(26, 26, 2, 1, 0.055, 35, FarStrategy::Block), 2, 1, 0.055);
  add("lift 32x24 d=2", gen_far(32, 24, 2, 1, 0.12, 36, FarStrategy::Lift), 2, 1, 0.12);

  // Uniform random 64x64: certified only with overwhelming probability.
  const auto rnd = random_matrix(64, 64, 0.5, 37);
  const double log2p = uniform_near_probability_log2(64, 64, 1, 0.05);
  std::vector<Index> first8{0, 1, 2, 3, 4, 5, 6, 7};
  const auto corner = rnd.submatrix(first8, first8);
  const double corner_dist = boost::rational_cast<double>(distance_to_rank_le(corner, 1, 1));
  const double corner_brute = static_cast<double>(bt::brute_distance_rank1(corner)) / 64.0;
  if (!(log2p < -100.0)) cert_errors.push_back("random 64x64: counting bound too weak");
  if (corner_dist != corner_brute) cert_errors.push_back("random 64x64: 8x8 corner distance disagrees with oracle");
  out.push_back({"random 64x64 d=1 [counting-certified]", rnd, 1, 1, 0.05,
                 "log2 Pr[near] <= " + fmt(log2p, 1) + ", 8x8 corner distance " + fmt(corner_dist, 3)});
  return out;
}

Outcome criterion4() {
  std::vector<std::string> cert_errors;
  const auto corpus = build_far_corpus(cert_errors);
  bool ok = cert_errors.empty();
  std::ostringstream d;
  d << "threshold 2/3 - " << fmt(kDelta, 3) << " = " << fmt(kTarget - kDelta, 3) << " over " << kSoundTrials
    << " trials;";
  for (const auto& item : corpus) {
    unsigned rej_a = 0, rej_n = 0;
    for (unsigned t = 0; t < kSoundTrials; ++t) {
      const auto a = run_adaptive(item.matrix, make_cfg(item.d, item.s, item.eps, 1000 + t));
      const auto b = run_nonadaptive(item.matrix, make_cfg(item.d, item.s, item.eps, 5000 + t));
      rej_a += a && a->verdict == Verdict::Reject;
      rej_n += b && b->verdict == Verdict::Reject;
    }
    const double fa = static_cast<double>(rej_a) / kSoundTrials;
    const double fn = static_cast<double>(rej_n) / kSoundTrials;
    ok = ok && fa >= kTarget - kDelta && fn >= kTarget - kDelta;
    d << " [" << item.label << " eps=" << item.eps << " cert " << item.certificate << ": adaptive " << fmt(fa, 3)
      << ", nonadaptive " << fmt(fn, 3) << "]";
  }
  for (const auto& e : cert_errors) d << " CERT-ERROR " << e;
  return {ok, d.str()};
}

// ---- criteria 2 and 3 read the ledger ----------------------------------------

Outcome criterion2() {
  std::ostringstream d;
  d << g_runs.adaptive_over << " of " << g_runs.adaptive_runs
    << " adaptive runs exceeded 2*binom_le(d,s)*2^d*ceil(9d/eps); peak utilization "
    << fmt(static_cast<double>(g_runs.adaptive_max_util_num) / static_cast<double>(g_runs.adaptive_max_util_den), 3);
  return {g_runs.adaptive_runs > 0 && g_runs.adaptive_over == 0, d.str()};
}

Outcome criterion3() {
  std::ostringstream d;
  d << g_runs.nonadaptive_runs << " nonadaptive runs; table-size mismatches " << g_runs.table_mismatch
    << "; replay misses " << g_runs.replay_misses << "; other self-check violations "
    << g_runs.self_check_violations;
  return {g_runs.nonadaptive_runs > 0 && g_runs.table_mismatch == 0 && g_runs.replay_misses == 0 &&
              g_runs.self_check_violations == 0,
          d.str()};
}

// ---- criterion 5 ----------------------------------------------------------------

// The tight matrix rebuilt from its definition: rows are {0,1}^d in
// lexicographic order, columns the vectors of weight <= s by weight then
// lexicographically, entry 1 iff the supports meet.
struct RefTight {
  std::vector<std::vector<int>> row_vecs;
  std::vector<std::vector<int>> col_vecs;
  BinaryMatrix matrix{1, 1};
};

RefTight ref_tight(unsigned d, unsigned s) {
  RefTight t;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) {
    std::vector<int> vec(d);
    for (unsigned k = 0; k < d; ++k) vec[k] = static_cast<int>((v >> (d - 1 - k)) & 1U);
    t.row_vecs.push_back(vec);
  }
  for (unsigned w = 0; w <= s; ++w)
    for (const auto& vec : t.row_vecs)
      if (static_cast<unsigned>(std::count(vec.begin(), vec.end(), 1)) == w) t.col_vecs.push_back(vec);
  t.matrix = BinaryMatrix(t.row_vecs.size(), t.col_vecs.size());
  for (Index i = 0; i < t.row_vecs.size(); ++i)
    for (Index j = 0; j < t.col_vecs.size(); ++j) {
      int dot = 0;
      for (unsigned k = 0; k < d; ++k) dot += t.row_vecs[i][k] * t.col_vecs[j][k];
      t.matrix.set(i, j, dot > 0);
    }
  return t;
}

Outcome criterion5() {
  bool ok = true;
  std::ostringstream d;
  for (unsigned dd = 1; dd <= 4; ++dd)
    for (unsigned s = 1; s <= std::min(2U, dd); ++s) {
      const auto m = tight_instance(dd, s);
      const auto ref = ref_tight(dd, s);
      const bool same = m == ref.matrix;
      const std::size_t r = count_distinct_rows(m);
      const std::size_t c = count_distinct_cols(m);
      // Upper bound: the defining vectors factor the matrix with entries <= s.
      bool factor_ok = true;
      for (Index i = 0; i < ref.row_vecs.size(); ++i)
        for (Index j = 0; j < ref.col_vecs.size(); ++j) {
          int dot = 0;
          for (unsigned k = 0; k < dd; ++k) dot += ref.row_vecs[i][k] * ref.col_vecs[j][k];
          factor_ok = factor_ok && dot <= static_cast<int>(s) && ((dot > 0) == ref.matrix(i, j));
        }
      // Lower bound: rank k allows at most 2^k distinct rows.
      const bool lower_ok = r > (std::size_t{1} << (dd - 1));
      const unsigned solver_rank = exact_rank(m, s).rank;
      std::optional<unsigned> brute;
      if (m.rows() <= 5 && m.cols() <= 5) brute = bt::brute_rank(m, s, dd + 1);
      const bool cell = same && r == (std::size_t{1} << dd) && c == ref_binom_le(dd, s) && factor_ok && lower_ok &&
                        solver_rank == dd && (!brute || *brute == dd);
      ok = ok && cell;
      d << "(d=" << dd << ",s=" << s << ": " << r << "x" << c << " distinct, rank " << solver_rank;
      if (brute) d << ", brute " << *brute;
      d << (cell ? "" : " MISMATCH") << ") ";
    }
  return {ok, d.str()};
}

// ---- criteria 6 and 8 share the 4x4 rank table ------------------------------

std::vector<unsigned> g_rank4;  // exact_rank(M, 1) for every 4x4 matrix

void build_rank4() {
  g_rank4.resize(1U << 16);
  for (std::uint32_t bits = 0; bits < (1U << 16); ++bits)
    g_rank4[bits] = exact_rank(bt::matrix_from_bits(4, 4, bits), 1).rank;
}

Outcome criterion6() {
  std::uint64_t corpus_checked = 0, violations = 0, exhaustive_checked = 0;
  for (const auto& item : g_corpus) {
    if (decide_rank_le(item.matrix, item.d, item.s).status != Decision::Yes) continue;
    ++corpus_checked;
    if (count_distinct_rows(item.matrix) * count_distinct_cols(item.matrix) > ref_product_bound(item.d, item.s))
      ++violations;
  }
  for (std::uint32_t bits = 0; bits < (1U << 16); ++bits) {
    const auto m = bt::matrix_from_bits(4, 4, bits);
    const std::size_t prod = count_distinct_rows(m) * count_distinct_cols(m);
    for (unsigned d = 1; d <= 2; ++d)
      if (g_rank4[bits] <= d) {
        ++exhaustive_checked;
        if (prod > ref_product_bound(d, 1)) ++violations;
      }
  }
  std::ostringstream d;
  d << violations << " violations; " << corpus_checked << " corpus instances, " << exhaustive_checked
    << " (matrix, d) pairs over all 65536 4x4 matrices at d<=2, s=1";
  return {violations == 0 && corpus_checked > 0, d.str()};
}

Outcome criterion8() {
  // Spot-check the solver table against the branching oracle.
  std::uint64_t oracle_mismatch = 0;
  for (std::uint32_t bits = 0; bits < (1U << 16); bits += 31)
    if (bt::brute_rank(bt::matrix_from_bits(4, 4, bits), 1, 4) != g_rank4[bits]) ++oracle_mismatch;

  std::uint64_t pairs = 0, violations = 0;
  for (std::uint32_t bits = 0; bits < (1U << 16); ++bits)
    for (std::uint32_t row = 0; row < 16; ++row) {
      const std::uint32_t replaced = (bits & ~0xFU) | row;  // row 0 occupies bits 0..3
      ++pairs;
      const int a = static_cast<int>(g_rank4[bits]);
      const int b = static_cast<int>(g_rank4[replaced]);
      if (std::abs(a - b) > 1) ++violations;
    }

  Rng rng(88);
  std::uint64_t sampled = 0, sample_violations = 0;
  for (int k = 0; k < 2000; ++k) {
    const unsigned s = 1 + static_cast<unsigned>(k % 2);
    const auto m = random_matrix(5, 5, 0.5, rng.next());
    BitVector row(5);
    for (auto& b : row) b = rng.bernoulli(0.5);
    const auto p = perturb_row(m, rng.below(5), row);
    const int a = static_cast<int>(exact_rank(m, s).rank);
    const int b = static_cast<int>(exact_rank(p, s).rank);
    ++sampled;
    if (std::abs(a - b) > 1) ++sample_violations;
  }
  std::ostringstream d;
  d << violations << " violations over " << pairs << " exhaustive 4x4 pairs (s=1, row 0); " << sample_violations
    << " over " << sampled << " random 5x5 pairs (s=1,2); solver vs oracle mismatches on spot-check "
    << oracle_mismatch;
  return {violations == 0 && sample_violations == 0 && oracle_mismatch == 0, d.str()};
}

// ---- criterion 7 ----------------------------------------------------------------

struct SidesCheck {
  std::uint64_t tuples = 0;
  std::uint64_t perfect = 0;
  std::uint64_t disagreements = 0;
};

// Checks one tuple; returns false if the hypotheses do not hold.
bool check_tuple(const BinaryMatrix& m, const std::vector<Index>& xs, const std::vector<Index>& ys, Index x, Index y,
                 SidesCheck& acc) {
  auto same_row = [&](Index a, Index b, const std::vector<Index>& cols) {
    return std::all_of(cols.begin(), cols.end(), [&](Index c) { return m(a, c) == m(b, c); });
  };
  auto same_col = [&](Index a, Index b, const std::vector<Index>& rows) {
    return std::all_of(rows.begin(), rows.end(), [&](Index r) { return m(r, a) == m(r, b); });
  };
  const bool row_old = std::any_of(xs.begin(), xs.end(), [&](Index xp) { return same_row(x, xp, ys); });
  const bool col_old = std::any_of(ys.begin(), ys.end(), [&](Index yp) { return same_col(y, yp, xs); });
  if (!row_old || !col_old) return false;

  auto ys2 = ys;
  ys2.push_back(y);
  auto xs2 = xs;
  xs2.push_back(x);
  const bool row_side = std::none_of(xs.begin(), xs.end(), [&](Index xp) { return same_row(x, xp, ys2); });
  const bool col_side = std::none_of(ys.begin(), ys.end(), [&](Index yp) { return same_col(y, yp, xs2); });

  const auto sel = bt::make_selection(m, xs, ys);
  BitVector row_ext;
  for (Index c : ys2) row_ext.push_back(m(x, c));
  BitVector col_ext;
  for (Index r : xs2) col_ext.push_back(m(r, y));
  const auto lib = joint_extension_sides(sel, row_ext, col_ext);

  ++acc.tuples;
  acc.perfect += sel.is_perfect();
  if (row_side != col_side || lib.row_side != row_side || lib.col_side != col_side) ++acc.disagreements;
  return true;
}

Outcome criterion7() {
  SidesCheck sampled;
  Rng rng(707);
  std::uint64_t attempts = 0;
  while (sampled.tuples < 10000 && attempts < 10'000'000) {
    ++attempts;
    const auto m = bt::matrix_from_bits(5, 5, rng.next() & ((std::uint64_t{1} << 25) - 1));
    const auto xm = static_cast<std::uint32_t>(1 + rng.below(31));
    const auto ym = static_cast<std::uint32_t>(1 + rng.below(31));
    const Index x = rng.below(5);
    const Index y = rng.below(5);
    if (((xm >> x) & 1U) || ((ym >> y) & 1U)) continue;
    check_tuple(m, bt::mask_to_indices(xm), bt::mask_to_indices(ym), x, y, sampled);
  }

  SidesCheck full;
  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    const auto m = bt::matrix_from_bits(3, 3, bits);
    for (std::uint32_t xm = 1; xm < 8; ++xm)
      for (std::uint32_t ym = 1; ym < 8; ++ym)
        for (Index x = 0; x < 3; ++x)
          for (Index y = 0; y < 3; ++y) {
            if (((xm >> x) & 1U) || ((ym >> y) & 1U)) continue;
            check_tuple(m, bt::mask_to_indices(xm), bt::mask_to_indices(ym), x, y, full);
          }
  }
  std::ostringstream d;
  d << sampled.disagreements << " disagreements over " << sampled.tuples << " sampled 5x5 tuples (" << sampled.perfect
    << " with perfect M[X,Y]); " << full.disagreements << " over all " << full.tuples << " 3x3 tuples ("
    << full.perfect << " perfect)";
  return {sampled.tuples >= 10000 && sampled.disagreements == 0 && full.disagreements == 0, d.str()};
}

// ---- criterion 9 ----------------------------------------------------------------

Outcome criterion9() {
  Rng rng(909);
  std::uint64_t seeds = 0, failures = 0, step_violations = 0;
  for (unsigned d = 1; d <= 3; ++d)
    for (int k = 0; k < 100; ++k) {
      const unsigned s = 1 + static_cast<unsigned>(k % 2);
      const Index n = d + rng.below(4);
      const Index m = d + rng.below(4);
      BinaryMatrix seed = BinaryMatrix::zeros(n, m);
      if (d > 1) {
        for (;;) {
          try {
            seed = gen_rank_le(n, m, d - 1, s, rng.next(), 0.4).matrix;
            break;
          } catch (const GenerationError&) {
          }
        }
      }
      if (exact_rank(seed, s).rank > d - 1) {
        ++failures;
        continue;
      }
      ++seeds;
      bool hit = false;
      int prev = -1;
      for (unsigned j = 0; j <= d; ++j) {
        const int r = static_cast<int>(exact_rank(identity_plant(seed, d, j), s).rank);
        hit = hit || r == static_cast<int>(d);
        if (prev >= 0 && std::abs(r - prev) > 1) ++step_violations;
        prev = r;
      }
      if (!hit) ++failures;
    }
  std::ostringstream d;
  d << failures << " failures over " << seeds << " seeds (100 per d in 1..3, s alternating 1,2); adjacent rank jumps > 1: "
    << step_violations;
  return {failures == 0 && step_violations == 0 && seeds == 300, d.str()};
}

// ---- criterion 10 ---------------------------------------------------------------

Outcome criterion10() {
  Rng rng(1010);
  std::uint64_t small_cases = 0, small_mismatch = 0, wrong_branch = 0;
  for (unsigned d = 1; d <= 3; ++d)
    for (double eps : {0.25, 0.5, 0.9})
      for (unsigned s = 1; s <= 2; ++s)
        for (int k = 0; k < 20; ++k) {
          Index n = 1 + rng.below(5);
          Index m = 1 + rng.below(5);
          while (static_cast<double>(n * m) >= 2.0 * d * d / eps) {
            if (n >= m) --n;
            else --m;
          }
          const auto mat = random_matrix(n, m, k % 3 == 0 ? 0.3 : 0.6, rng.next());
          auto cfg = make_cfg(d, s, eps, rng.next());
          cfg.mode = Mode::Exactly;
          MatrixOracle o(mat);
          const auto r = run_tester(Algorithm::Adaptive, o, cfg);
          const auto brute = bt::brute_rank(mat, s, 5);
          const bool expect = brute && *brute == d;
          const bool solver = exact_rank(mat, s).rank == d;
          ++small_cases;
          if (r.algorithm != "exact-small" || r.queries != n * m) ++wrong_branch;
          if ((r.verdict == Verdict::Accept) != expect || solver != expect) ++small_mismatch;
        }

  // Large branch: rank exactly d must always pass; far instances reject.
  std::uint64_t large_runs = 0, large_accepts = 0;
  for (unsigned d = 1; d <= 2; ++d)
    for (unsigned s = 1; s <= 2; ++s) {
      InstanceSpec spec;
      spec.kind = InstanceKind::Tight;
      spec.d = d;
      spec.s = s;
      spec.n = 40;
      spec.m = 40;
      spec.seed = 10 * d + s;
      const auto mat = generate(spec).matrix;
      for (Algorithm inner : {Algorithm::Adaptive, Algorithm::NonAdaptive})
        for (unsigned seed = 0; seed < 20; ++seed) {
          auto cfg = make_cfg(d, s, 0.5, seed);
          cfg.mode = Mode::Exactly;
          cfg.exact_inner = inner;
          MatrixOracle o(mat);
          const auto r = run_tester(Algorithm::Adaptive, o, cfg);
          ++large_runs;
          large_accepts += r.verdict == Verdict::Accept;
        }
    }
  const auto far = gen_far(50, 50, 1, 1, 0.15, 1011, FarStrategy::Block);
  unsigned rejects = 0;
  for (unsigned t = 0; t < kSoundTrials; ++t) {
    auto cfg = make_cfg(1, 1, 0.3, t);
    cfg.mode = Mode::Exactly;
    MatrixOracle o(far.matrix);
    rejects += run_tester(Algorithm::Adaptive, o, cfg).verdict == Verdict::Reject;
  }
  const double freq = static_cast<double>(rejects) / kSoundTrials;
  std::ostringstream d;
  d << "small branch " << small_mismatch << " mismatches over " << small_cases << " inputs with nm < 2d^2/eps"
    << " (branch errors " << wrong_branch << "); large branch completeness " << large_accepts << "/" << large_runs
    << "; far block 50x50 at eps=0.3 rejected " << fmt(freq, 3);
  return {small_mismatch == 0 && wrong_branch == 0 && large_accepts == large_runs && freq >= kTarget - kDelta,
          d.str()};
}

// ---- criterion 11 ---------------------------------------------------------------

Outcome criterion11() {
  // Shared far corpus: the lift family at d = 1..4, eps = 0.08, run at three
  // matrix sizes. The trend must hold at every size.
  bool ok = true;
  std::ostringstream d;
  for (Index size : {128U, 256U, 512U}) {
    nlohmann::json plan = {{"schema_version", 1}, {"seed", 1111}, {"trials", 200},
                           {"algorithms", {"adaptive", "baseline"}}, {"instances", nlohmann::json::array()}};
    for (unsigned dd = 1; dd <= 4; ++dd) {
      const Index rows = Index{1} << (dd + 1);
      const Index cols = dd + 2;
      plan["instances"].push_back({{"id", "lift-d" + std::to_string(dd)}, {"kind", "far"}, {"strategy", "lift"},
                                   {"n", size / rows * rows}, {"m", size / cols * cols}, {"d", dd}, {"s", 1},
                                   {"far_epsilon", 0.08}, {"epsilon", 0.08}});
    }
    const auto result = run_plan(parse_plan(plan));
    g_runs.adaptive_runs += 4 * 200;
    g_runs.adaptive_over += result.budget_violations;
    g_runs.self_check_violations += result.invariant_violations;
    const auto table = compare_table(result.rows, "adaptive", "baseline");
    const bool mono = table.ratio_nondecreasing();
    ok = ok && mono;
    d << "[n~" << size << " ratios";
    for (const auto& r : table.rows) d << " d" << r.d << "=" << fmt(r.ratio) << "(" << fmt(r.reference_mean, 1) << "/" << fmt(r.other_mean, 1) << ")";
    d << (mono ? " nondecreasing]" : " NOT monotone]") << " ";
  }
  d << "ratio = baseline mean queries / adaptive mean queries";
  return {ok, d.str()};
}

}  // namespace

int main() {
  try {
    build_completeness_corpus();
    build_rank4();
    report(1, "one-sided completeness", criterion1());
    const auto c4 = criterion4();
    const auto c10 = criterion10();
    const auto c11 = criterion11();
    report(2, "adaptive query budget", criterion2());
    report(3, "non-adaptive table size and replay", criterion3());
    report(4, "soundness at 2/3", c4);
    report(5, "tight instances", criterion5());
    report(6, "product bound", criterion6());
    report(7, "joint extension sides agree", criterion7());
    report(8, "row change moves rank by at most one", criterion8());
    report(9, "identity-plant sweep hits rank d", criterion9());
    report(10, "exact-rank tester", c10);
    report(11, "baseline/adaptive query ratio trend", c11);
  } catch (const std::exception& e) {
    std::cout << "[FAIL] acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " criteria failed") << std::endl;
  return g_failed == 0 ? 0 : 1;
}
