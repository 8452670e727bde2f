// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "binrank/matrix.hpp"

namespace binrank {

/// The known sub-matrix M[X,Y]: ordered row set X, ordered column set Y and
/// every entry of X x Y.
///
/// Entries are supplied by the caller (normally from a MatrixOracle), so the
/// selection never touches the source matrix itself.
class SubmatrixSelection {
 public:
  SubmatrixSelection() = default;
  /// X = {x}, Y = {y} with the single known entry M[x,y].
  SubmatrixSelection(Index x, Index y, bool value);

  const std::vector<Index>& rows() const noexcept { return rows_; }
  const std::vector<Index>& cols() const noexcept { return cols_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t col_count() const noexcept { return cols_.size(); }

  /// Entry at positions (a,b) of X and Y.
  bool entry(std::size_t a, std::size_t b) const { return data_[a][b] != 0; }
  const BitVector& row_values(std::size_t a) const { return data_[a]; }
  BitVector column_values(std::size_t b) const;

  bool contains_row(Index x) const;
  bool contains_col(Index y) const;

  /// True iff `row` (indexed by Y) differs from every row of M[X,Y].
  /// Throws ContractError on a length mismatch.
  bool is_new_row(std::span<const std::uint8_t> row) const;
  /// True iff `col` (indexed by X) differs from every column of M[X,Y].
  bool is_new_column(std::span<const std::uint8_t> col) const;

  /// Append x to X with M[x,Y] = values.
  void add_row(Index x, std::span<const std::uint8_t> values);
  /// Append y to Y with M[X,y] = values.
  void add_column(Index y, std::span<const std::uint8_t> values);

  /// Pairwise-distinct rows and pairwise-distinct columns.
  bool is_perfect() const;

  BinaryMatrix to_matrix() const;

 private:
  std::vector<Index> rows_;
  std::vector<Index> cols_;
  std::vector<BitVector> data_;
};

/// Decides whether M[x,Y+y] is a new row to M[X,Y+y] given that M[x,Y] is not
/// new to M[X,Y] and M[X,y] is not new to M[X,Y].
///
/// `row_ext` is M[x,Y] followed by M[x,y]; `col_ext` is M[X,y] followed by
/// M[x,y]. Under those hypotheses the row-side answer equals the column-side
/// answer (is M[X+x,y] new to M[X+x,Y]); both are computed and an
/// InvariantViolation is thrown if they ever differ. A ContractError is thrown
/// when the hypotheses do not hold.
bool joint_extension_is_new(const SubmatrixSelection& sel, std::span<const std::uint8_t> row_ext,
                            std::span<const std::uint8_t> col_ext);

/// Row-side and column-side answers without the hypothesis gate, for tests.
struct JointSides {
  bool row_side;
  bool col_side;
};
JointSides joint_extension_sides(const SubmatrixSelection& sel, std::span<const std::uint8_t> row_ext,
                                 std::span<const std::uint8_t> col_ext);

}  // namespace binrank
