// SPDX-License-Identifier: Apache-2.0
// Independent reference implementations used as test oracles. Nothing here
// calls the library's solver.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <optional>
#include <vector>

#include "binrank/matrix.hpp"
#include "binrank/oracle.hpp"
#include "binrank/selection.hpp"

namespace binrank::testing {

/// Matrix whose cell (i,j) is bit i*m+j of `bits`.
inline BinaryMatrix matrix_from_bits(Index n, Index m, std::uint64_t bits) {
  BinaryMatrix out(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j)
      if ((bits >> (i * m + j)) & 1U) out.set(i, j, true);
  return out;
}

struct MaskRect {
  std::uint32_t rows;
  std::uint32_t cols;
};

/// Every non-empty all-ones rectangle of a matrix with at most 5 rows/cols.
inline std::vector<MaskRect> monochromatic_rectangles(const BinaryMatrix& m) {
  std::vector<MaskRect> out;
  for (std::uint32_t r = 1; r < (1U << m.rows()); ++r)
    for (std::uint32_t c = 1; c < (1U << m.cols()); ++c) {
      bool ok = true;
      for (Index i = 0; i < m.rows() && ok; ++i)
        if ((r >> i) & 1U)
          for (Index j = 0; j < m.cols() && ok; ++j)
            if (((c >> j) & 1U) && !m(i, j)) ok = false;
      if (ok) out.push_back({r, c});
    }
  return out;
}

/// Smallest number of all-ones rectangles covering every 1-entry between 1
/// and s times, found by branching on the first under-covered 1-entry.
/// Returns nullopt if it exceeds max_d.
inline std::optional<unsigned> brute_rank(const BinaryMatrix& m, unsigned s, unsigned max_d) {
  const auto rects = monochromatic_rectangles(m);
  const Index n = m.rows();
  const Index k = m.cols();
  std::vector<unsigned> count(n * k, 0);
  std::function<bool(unsigned)> search = [&](unsigned left) -> bool {
    Index target = n * k;
    for (Index c = 0; c < n * k; ++c)
      if (m(c / k, c % k) && count[c] == 0) {
        target = c;
        break;
      }
    if (target == n * k) return true;
    if (left == 0) return false;
    const Index ti = target / k;
    const Index tj = target % k;
    for (const auto& r : rects) {
      if (!((r.rows >> ti) & 1U) || !((r.cols >> tj) & 1U)) continue;
      bool fits = true;
      for (Index c = 0; c < n * k && fits; ++c)
        if (((r.rows >> (c / k)) & 1U) && ((r.cols >> (c % k)) & 1U) && count[c] >= s) fits = false;
      if (!fits) continue;
      for (Index c = 0; c < n * k; ++c)
        if (((r.rows >> (c / k)) & 1U) && ((r.cols >> (c % k)) & 1U)) ++count[c];
      const bool ok = search(left - 1);
      for (Index c = 0; c < n * k; ++c)
        if (((r.rows >> (c / k)) & 1U) && ((r.cols >> (c % k)) & 1U)) --count[c];
      if (ok) return true;
    }
    return false;
  };
  for (unsigned d = 0; d <= max_d; ++d)
    if (search(d)) return d;
  return std::nullopt;
}

/// Zero matrix or a single all-ones rectangle.
inline bool is_rank_le_one(const BinaryMatrix& m) {
  std::vector<BitVector> nonzero;
  for (Index i = 0; i < m.rows(); ++i) {
    BitVector r = m.row(i);
    if (std::any_of(r.begin(), r.end(), [](auto b) { return b != 0; })) nonzero.push_back(std::move(r));
  }
  return std::all_of(nonzero.begin(), nonzero.end(), [&](const BitVector& r) { return r == nonzero.front(); });
}

/// Minimum Hamming distance to a matrix of br_s <= d, by enumerating every
/// candidate matrix (n*m <= 16).
inline std::size_t brute_distance(const BinaryMatrix& m, unsigned d, unsigned s) {
  const Index n = m.rows();
  const Index k = m.cols();
  std::size_t best = n * k;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * k)); ++bits) {
    const BinaryMatrix g = matrix_from_bits(n, k, bits);
    const std::size_t dist = m.hamming_distance(g);
    if (dist >= best) continue;
    const bool ok = d == 1 ? is_rank_le_one(g) : brute_rank(g, s, d).has_value();
    if (ok) best = dist;
  }
  return best;
}

/// Minimum Hamming distance to a matrix with at most one all-ones rectangle,
/// by enumerating every rectangle (rows, cols <= 12).
inline std::size_t brute_distance_rank1(const BinaryMatrix& m) {
  std::size_t best = m.ones_count();  // the zero matrix
  for (std::uint32_t r = 1; r < (1U << m.rows()); ++r)
    for (std::uint32_t c = 1; c < (1U << m.cols()); ++c) {
      std::size_t dist = 0;
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
          dist += m(i, j) != ((((r >> i) & 1U) != 0) && (((c >> j) & 1U) != 0));
      best = std::min(best, dist);
    }
  return best;
}

/// Selection M[X,Y] built entry by entry from the source.
inline SubmatrixSelection make_selection(const BinaryMatrix& m, const std::vector<Index>& xs,
                                         const std::vector<Index>& ys) {
  SubmatrixSelection sel(xs.front(), ys.front(), m(xs.front(), ys.front()));
  for (std::size_t b = 1; b < ys.size(); ++b) sel.add_column(ys[b], BitVector{static_cast<std::uint8_t>(m(xs.front(), ys[b]))});
  for (std::size_t a = 1; a < xs.size(); ++a) {
    BitVector row;
    for (Index y : ys) row.push_back(m(xs[a], y));
    sel.add_row(xs[a], row);
  }
  return sel;
}

inline std::vector<Index> mask_to_indices(std::uint32_t mask) {
  std::vector<Index> out;
  for (Index i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) out.push_back(i);
  return out;
}

}  // namespace binrank::testing
