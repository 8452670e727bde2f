// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "binrank/matrix.hpp"

namespace binrank {

/// Index product rows x cols. Sorted, duplicate-free, 0-based.
struct Rectangle {
  std::vector<Index> rows;
  std::vector<Index> cols;

  bool empty() const noexcept { return rows.empty() || cols.empty(); }
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Witness for br_s(M) <= rectangles.size() on an n x m target.
struct RectangleCover {
  std::vector<Rectangle> rectangles;
  unsigned s = 1;
  Index n = 0;
  Index m = 0;
};

/// A pair of (0,1)-matrices N (n x d) and L (d x m), stored as one bitmask per
/// row of N (the labels k with N[i,k] = 1) and per column of L.
class Factorization {
 public:
  Factorization(unsigned d, std::vector<std::uint64_t> row_sets, std::vector<std::uint64_t> col_sets);

  unsigned depth() const noexcept { return d_; }
  Index rows() const noexcept { return row_sets_.size(); }
  Index cols() const noexcept { return col_sets_.size(); }
  const std::vector<std::uint64_t>& row_sets() const noexcept { return row_sets_; }
  const std::vector<std::uint64_t>& col_sets() const noexcept { return col_sets_; }

  bool left(Index i, unsigned k) const { return (row_sets_.at(i) >> k) & 1U; }
  bool right(unsigned k, Index j) const { return (col_sets_.at(j) >> k) & 1U; }
  /// (N L)[i,j].
  unsigned product(Index i, Index j) const;

  /// N as a matrix; requires depth() >= 1.
  BinaryMatrix left_matrix() const;
  /// L as a matrix; requires depth() >= 1.
  BinaryMatrix right_matrix() const;

  /// P[i,j] <= s everywhere and P[i,j] == 0 exactly where M[i,j] == 0.
  bool realizes(const BinaryMatrix& m, unsigned s) const;

 private:
  unsigned d_;
  std::vector<std::uint64_t> row_sets_;
  std::vector<std::uint64_t> col_sets_;
};

/// Every rectangle is all-ones in M, every 1-entry lies in between 1 and s
/// rectangles, and no 0-entry is covered. Out-of-range rectangles or a
/// dimension mismatch make the cover invalid (false), never an exception.
bool verify_cover(const BinaryMatrix& m, const RectangleCover& cover);

/// N's k-th column is the indicator of rectangle k's rows, L's k-th row the
/// indicator of its columns. Throws ContractError on out-of-range indices or
/// more than 64 rectangles.
Factorization cover_to_factorization(const RectangleCover& cover);
RectangleCover factorization_to_cover(const Factorization& f, unsigned s);

/// {"s":S,"rectangles":[{"rows":[...],"cols":[...]},...]} with 1-based indices.
nlohmann::json cover_to_json(const RectangleCover& cover);
/// Inverse of cover_to_json. Needs the target dimensions, which the JSON
/// format does not carry. Throws ParseError.
RectangleCover cover_from_json(const nlohmann::json& j, Index n, Index m);

}  // namespace binrank
