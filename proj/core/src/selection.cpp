// SPDX-License-Identifier: Apache-2.0
#include "binrank/selection.hpp"

#include <algorithm>
#include <set>

#include "binrank/errors.hpp"

namespace binrank {

SubmatrixSelection::SubmatrixSelection(Index x, Index y, bool value)
    : rows_{x}, cols_{y}, data_{BitVector{static_cast<std::uint8_t>(value)}} {}

BitVector SubmatrixSelection::column_values(std::size_t b) const {
  BitVector out(rows_.size());
  for (std::size_t a = 0; a < rows_.size(); ++a) out[a] = data_[a][b];
  return out;
}

bool SubmatrixSelection::contains_row(Index x) const {
  return std::find(rows_.begin(), rows_.end(), x) != rows_.end();
}

bool SubmatrixSelection::contains_col(Index y) const {
  return std::find(cols_.begin(), cols_.end(), y) != cols_.end();
}

bool SubmatrixSelection::is_new_row(std::span<const std::uint8_t> row) const {
  if (row.size() != cols_.size()) throw ContractError("is_new_row: length differs from |Y|");
  for (const auto& r : data_)
    if (std::equal(r.begin(), r.end(), row.begin())) return false;
  return true;
}

bool SubmatrixSelection::is_new_column(std::span<const std::uint8_t> col) const {
  if (col.size() != rows_.size()) throw ContractError("is_new_column: length differs from |X|");
  for (std::size_t b = 0; b < cols_.size(); ++b) {
    bool same = true;
    for (std::size_t a = 0; a < rows_.size() && same; ++a) same = data_[a][b] == col[a];
    if (same) return false;
  }
  return true;
}

void SubmatrixSelection::add_row(Index x, std::span<const std::uint8_t> values) {
  if (values.size() != cols_.size()) throw ContractError("add_row: length differs from |Y|");
  if (contains_row(x)) throw ContractError("add_row: row already selected");
  rows_.push_back(x);
  data_.emplace_back(values.begin(), values.end());
}

void SubmatrixSelection::add_column(Index y, std::span<const std::uint8_t> values) {
  if (values.size() != rows_.size()) throw ContractError("add_column: length differs from |X|");
  if (contains_col(y)) throw ContractError("add_column: column already selected");
  cols_.push_back(y);
  for (std::size_t a = 0; a < rows_.size(); ++a) data_[a].push_back(values[a]);
}

bool SubmatrixSelection::is_perfect() const {
  std::set<BitVector> rs(data_.begin(), data_.end());
  if (rs.size() != data_.size()) return false;
  std::set<BitVector> cs;
  for (std::size_t b = 0; b < cols_.size(); ++b) cs.insert(column_values(b));
  return cs.size() == cols_.size();
}

BinaryMatrix SubmatrixSelection::to_matrix() const {
  if (rows_.empty() || cols_.empty()) throw ContractError("empty selection");
  return BinaryMatrix::from_rows(data_);
}

JointSides joint_extension_sides(const SubmatrixSelection& sel, std::span<const std::uint8_t> row_ext,
                                 std::span<const std::uint8_t> col_ext) {
  const std::size_t nx = sel.row_count();
  const std::size_t ny = sel.col_count();
  if (row_ext.size() != ny + 1 || col_ext.size() != nx + 1)
    throw ContractError("joint extension: vector lengths must be |Y|+1 and |X|+1");
  if (row_ext[ny] != col_ext[nx]) throw ContractError("joint extension: M[x,y] given inconsistently");

  // Row side: is M[x, Y+y] different from every M[x', Y+y], x' in X.
  bool row_new = true;
  for (std::size_t a = 0; a < nx && row_new; ++a) {
    const auto& r = sel.row_values(a);
    if (std::equal(r.begin(), r.end(), row_ext.begin()) && col_ext[a] == row_ext[ny]) row_new = false;
  }
  // Column side: is M[X+x, y] different from every M[X+x, y'], y' in Y.
  bool col_new = true;
  for (std::size_t b = 0; b < ny && col_new; ++b) {
    bool same = row_ext[b] == col_ext[nx];
    for (std::size_t a = 0; a < nx && same; ++a) same = sel.entry(a, b) == col_ext[a];
    if (same) col_new = false;
  }
  return {row_new, col_new};
}

bool joint_extension_is_new(const SubmatrixSelection& sel, std::span<const std::uint8_t> row_ext,
                            std::span<const std::uint8_t> col_ext) {
  const std::size_t nx = sel.row_count();
  const std::size_t ny = sel.col_count();
  if (row_ext.size() != ny + 1 || col_ext.size() != nx + 1)
    throw ContractError("joint extension: vector lengths must be |Y|+1 and |X|+1");
  if (sel.is_new_row(row_ext.first(ny)))
    throw ContractError("joint extension: M[x,Y] is a new row, hypothesis fails");
  if (sel.is_new_column(col_ext.first(nx)))
    throw ContractError("joint extension: M[X,y] is a new column, hypothesis fails");
  const auto sides = joint_extension_sides(sel, row_ext, col_ext);
  if (sides.row_side != sides.col_side)
    throw InvariantViolation("joint extension: row-side and column-side answers disagree");
  return sides.row_side;
}

}  // namespace binrank
