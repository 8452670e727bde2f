// SPDX-License-Identifier: Apache-2.0
#include "binrank/solver.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "binrank/errors.hpp"

namespace binrank {

const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::Yes:
      return "YES";
    case Decision::No:
      return "NO";
    case Decision::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

namespace {

constexpr unsigned kMaxSearchDepth = 6;  // 2^6 label subsets fit one uint64 domain mask

// Label-assignment search over a matrix whose rows and columns are pairwise
// distinct. Variables 0..r-1 are rows, r..r+c-1 are columns; each takes a
// subset of {0..d-1} encoded as an integer < 2^d.
class LabelSearch {
 public:
  LabelSearch(const BinaryMatrix& m, unsigned d, unsigned s, std::uint64_t max_nodes)
      : m_(m), d_(d), r_(m.rows()), c_(m.cols()), max_nodes_(max_nodes), value_(r_ + c_, 0) {
    const unsigned nvals = 1U << d;
    full_labels_ = (std::uint64_t{1} << d) - 1;
    compat_one_.assign(nvals, 0);
    compat_zero_.assign(nvals, 0);
    for (unsigned a = 0; a < nvals; ++a)
      for (unsigned b = 0; b < nvals; ++b) {
        const auto w = static_cast<unsigned>(std::popcount(a & b));
        if (w == 0) compat_zero_[a] |= std::uint64_t{1} << b;
        if (w >= 1 && w <= s) compat_one_[a] |= std::uint64_t{1} << b;
      }
    all_values_ = nvals == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nvals) - 1;
  }

  Decision run() {
    std::vector<std::uint64_t> dom(r_ + c_, all_values_);
    std::vector<std::uint8_t> assigned(r_ + c_, 0);
    if (solve(dom, assigned, 0, 0)) return Decision::Yes;
    return out_of_budget_ ? Decision::Unknown : Decision::No;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::vector<std::uint64_t> row_sets() const { return {value_.begin(), value_.begin() + static_cast<long>(r_)}; }
  std::vector<std::uint64_t> col_sets() const { return {value_.begin() + static_cast<long>(r_), value_.end()}; }

 private:
  // Lowest k labels not yet used by any assigned variable.
  std::uint64_t lowest_unused(std::uint64_t used, int k) const {
    std::uint64_t free = ~used & full_labels_;
    std::uint64_t out = 0;
    for (; k > 0; --k) {
      const std::uint64_t low = free & (~free + 1);
      out |= low;
      free ^= low;
    }
    return out;
  }

  bool solve(const std::vector<std::uint64_t>& dom, std::vector<std::uint8_t>& assigned, std::size_t depth,
             std::uint64_t used) {
    const std::size_t nvars = r_ + c_;
    if (depth == nvars) return true;

    std::size_t var = nvars;
    int best = 1 << 30;
    for (std::size_t v = 0; v < nvars; ++v) {
      if (assigned[v]) continue;
      const int size = std::popcount(dom[v]);
      if (size < best) {
        best = size;
        var = v;
      }
    }
    const bool is_row = var < r_;

    std::vector<std::uint64_t> next(nvars);
    for (std::uint64_t cand = dom[var]; cand != 0; cand &= cand - 1) {
      const auto a = static_cast<unsigned>(std::countr_zero(cand));
      const std::uint64_t fresh = a & ~used;
      if (fresh != lowest_unused(used, std::popcount(fresh))) continue;  // symmetric to a tried value
      if (++nodes_ > max_nodes_) {
        out_of_budget_ = true;
        return false;
      }

      next = dom;
      next[var] = std::uint64_t{1} << a;
      bool ok = true;
      if (is_row) {
        for (std::size_t j = 0; j < c_ && ok; ++j) {
          if (assigned[r_ + j]) continue;
          next[r_ + j] &= m_(var, j) ? compat_one_[a] : compat_zero_[a];
          ok = next[r_ + j] != 0;
        }
        for (std::size_t i = 0; i < r_ && ok; ++i) {
          if (assigned[i] || i == var) continue;
          next[i] &= ~(std::uint64_t{1} << a);
          ok = next[i] != 0;
        }
      } else {
        const std::size_t j = var - r_;
        for (std::size_t i = 0; i < r_ && ok; ++i) {
          if (assigned[i]) continue;
          next[i] &= m_(i, j) ? compat_one_[a] : compat_zero_[a];
          ok = next[i] != 0;
        }
        for (std::size_t k = 0; k < c_ && ok; ++k) {
          if (assigned[r_ + k] || r_ + k == var) continue;
          next[r_ + k] &= ~(std::uint64_t{1} << a);
          ok = next[r_ + k] != 0;
        }
      }
      if (!ok) continue;

      assigned[var] = 1;
      value_[var] = a;
      if (solve(next, assigned, depth + 1, used | a)) return true;
      assigned[var] = 0;
      if (out_of_budget_) return false;
    }
    return false;
  }

  const BinaryMatrix& m_;
  unsigned d_;
  std::size_t r_;
  std::size_t c_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::uint64_t full_labels_ = 0;
  std::uint64_t all_values_ = 0;
  std::vector<std::uint64_t> compat_one_;
  std::vector<std::uint64_t> compat_zero_;
  std::vector<std::uint64_t> value_;
};

Factorization expand(const DedupResult& dd, unsigned d, const std::vector<std::uint64_t>& rows,
                     const std::vector<std::uint64_t>& cols) {
  std::vector<std::uint64_t> full_rows(dd.row_class.size());
  std::vector<std::uint64_t> full_cols(dd.col_class.size());
  for (std::size_t i = 0; i < full_rows.size(); ++i) full_rows[i] = rows[dd.row_class[i]];
  for (std::size_t j = 0; j < full_cols.size(); ++j) full_cols[j] = cols[dd.col_class[j]];
  return {d, std::move(full_rows), std::move(full_cols)};
}

}  // namespace

FactorizationDecision decide_factorization(const BinaryMatrix& m, unsigned d, unsigned s, SolverBudget budget) {
  if (s == 0) throw ContractError("decide_rank_le: s must be >= 1");
  if (d > 64) throw ContractError("decide_rank_le: d must be <= 64");

  if (m.is_zero()) {
    return {Decision::Yes,
            Factorization(d, std::vector<std::uint64_t>(m.rows(), 0), std::vector<std::uint64_t>(m.cols(), 0)), 0};
  }
  if (d == 0) return {Decision::No, std::nullopt, 0};

  const DedupResult dd = deduplicate(m);
  const BinaryMatrix& red = dd.reduced;
  const std::size_t r = red.rows();
  const std::size_t c = red.cols();

  // One rectangle per distinct row (or column) is always a valid cover.
  if (d >= std::min(r, c)) {
    std::vector<std::uint64_t> rows(r, 0);
    std::vector<std::uint64_t> cols(c, 0);
    if (r <= c) {
      for (std::size_t i = 0; i < r; ++i) {
        rows[i] = std::uint64_t{1} << i;
        for (std::size_t j = 0; j < c; ++j)
          if (red(i, j)) cols[j] |= std::uint64_t{1} << i;
      }
    } else {
      for (std::size_t j = 0; j < c; ++j) {
        cols[j] = std::uint64_t{1} << j;
        for (std::size_t i = 0; i < r; ++i)
          if (red(i, j)) rows[i] |= std::uint64_t{1} << j;
      }
    }
    return {Decision::Yes, expand(dd, d, rows, cols), 0};
  }

  // N has at most 2^d distinct rows, and equal rows of N give equal rows of M.
  if (d < 63 && (r > (std::size_t{1} << d) || c > (std::size_t{1} << d))) return {Decision::No, std::nullopt, 0};
  if (d > kMaxSearchDepth)
    throw ResourceError("decide_rank_le: search beyond d = " + std::to_string(kMaxSearchDepth) + " is not supported");

  LabelSearch search(red, d, s, budget.max_nodes);
  const Decision status = search.run();
  if (status != Decision::Yes) return {status, std::nullopt, search.nodes()};
  return {Decision::Yes, expand(dd, d, search.row_sets(), search.col_sets()), search.nodes()};
}

RankDecision decide_rank_le(const BinaryMatrix& m, unsigned d, unsigned s, SolverBudget budget) {
  auto fd = decide_factorization(m, d, s, budget);
  RankDecision out{fd.status, std::nullopt, fd.nodes};
  if (fd.factorization) {
    RectangleCover cover = factorization_to_cover(*fd.factorization, s);
    std::erase_if(cover.rectangles, [](const Rectangle& r) { return r.empty(); });
    out.witness = std::move(cover);
  }
  return out;
}

RankResult exact_rank(const BinaryMatrix& m, unsigned s, SolverBudget budget) {
  RankResult result;
  const std::size_t cap = std::min(m.distinct_rows(), m.distinct_cols());
  for (unsigned d = 0; d <= cap; ++d) {
    auto dec = decide_rank_le(m, d, s, budget);
    result.nodes += dec.nodes;
    if (dec.status == Decision::Unknown) {
      result.status = Decision::Unknown;
      return result;
    }
    if (dec.status == Decision::Yes) {
      result.status = Decision::Yes;
      result.rank = d;
      result.witness = std::move(*dec.witness);
      return result;
    }
  }
  throw InvariantViolation("exact_rank: no cover found up to the trivial bound");
}

Fraction distance_to_rank_le(const BinaryMatrix& m, unsigned d, unsigned s) {
  const auto n = m.rows();
  const auto k = m.cols();
  const auto cells = static_cast<std::int64_t>(m.size());
  const auto ones = static_cast<std::int64_t>(m.ones_count());
  if (s == 0) throw ContractError("distance_to_rank_le: s must be >= 1");
  if (d == 0) return {ones, cells};

  if (d == 1) {
    if (n > 8 || k > 8) throw ResourceError("distance_to_rank_le: d = 1 supports at most 8x8");
    // flips(I x J) = ones + sum_{i in I, j in J} (1 - 2 M[i,j]); I = {} is the zero matrix.
    std::int64_t best = ones;
    std::vector<std::int64_t> weight(k);
    std::vector<std::int64_t> subset_sum(std::size_t{1} << k);
    for (std::uint32_t rows = 1; rows < (1U << n); ++rows) {
      std::fill(weight.begin(), weight.end(), 0);
      for (Index i = 0; i < n; ++i)
        if ((rows >> i) & 1U)
          for (Index j = 0; j < k; ++j) weight[j] += m(i, j) ? -1 : 1;
      subset_sum[0] = 0;
      for (std::uint32_t cols = 1; cols < (1U << k); ++cols) {
        const auto low = static_cast<unsigned>(std::countr_zero(cols));
        subset_sum[cols] = subset_sum[cols & (cols - 1)] + weight[low];
        best = std::min(best, ones + subset_sum[cols]);
      }
    }
    return {best, cells};
  }

  if (cells > 16) throw ResourceError("distance_to_rank_le: d >= 2 supports at most 16 cells");
  for (int radius = 0; radius <= cells; ++radius) {
    // All flip sets of this size, in increasing bitmask order (Gosper's hack).
    std::uint32_t set = radius == 0 ? 0U : (1U << radius) - 1;
    const std::uint32_t limit = 1U << cells;
    while (set < limit) {
      BinaryMatrix g = m;
      for (int cell = 0; cell < cells; ++cell)
        if ((set >> cell) & 1U) {
          const auto i = static_cast<Index>(cell) / k;
          const auto j = static_cast<Index>(cell) % k;
          g.set(i, j, !g(i, j));
        }
      if (decide_rank_le(g, d, s).status == Decision::Yes) return {radius, cells};
      if (set == 0) break;
      const std::uint32_t low = set & (~set + 1);
      const std::uint32_t ripple = set + low;
      set = (((ripple ^ set) >> 2) / low) | ripple;
    }
  }
  throw InvariantViolation("distance_to_rank_le: zero matrix not reached");
}

}  // namespace binrank
