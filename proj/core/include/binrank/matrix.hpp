// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace binrank {

using Index = std::size_t;
using BitVector = std::vector<std::uint8_t>;

/// Dense n x m (0,1)-matrix, bit-packed row-major.
///
/// Indices are 0-based in the C++ API. Text formats and the CLI are 1-based.
/// Once built, a matrix is treated as immutable and may be shared across
/// threads by const reference.
class BinaryMatrix {
 public:
  /// All-zero n x m matrix. Both dimensions must be positive.
  BinaryMatrix(Index rows, Index cols);

  static BinaryMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  static BinaryMatrix from_rows(const std::vector<BitVector>& rows);
  static BinaryMatrix zeros(Index rows, Index cols) { return {rows, cols}; }
  static BinaryMatrix ones(Index rows, Index cols);
  static BinaryMatrix identity(Index k);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return rows_ * cols_; }

  /// Unchecked access.
  bool operator()(Index i, Index j) const noexcept {
    return (words_[i * stride_ + (j >> 6)] >> (j & 63)) & 1U;
  }
  /// Checked access; throws IndexError.
  bool at(Index i, Index j) const;
  void set(Index i, Index j, bool value);

  std::span<const std::uint64_t> row_words(Index i) const noexcept {
    return {words_.data() + i * stride_, stride_};
  }
  BitVector row(Index i) const;
  BitVector column(Index j) const;

  BinaryMatrix transpose() const;
  BinaryMatrix submatrix(std::span<const Index> rows, std::span<const Index> cols) const;

  std::size_t ones_count() const noexcept;
  std::size_t hamming_distance(const BinaryMatrix& other) const;
  bool is_zero() const noexcept { return ones_count() == 0; }

  /// r(M) and c(M): the number of distinct rows / columns.
  std::size_t distinct_rows() const;
  std::size_t distinct_cols() const;

  /// One line per row of '0'/'1' characters.
  std::string to_string() const;

  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
  }

 private:
  void check_index(Index i, Index j) const;

  Index rows_;
  Index cols_;
  std::size_t stride_;
  std::vector<std::uint64_t> words_;
};

/// Row-type compression of a matrix: one representative per distinct row and
/// column, with multiplicities and the mapping back to original indices.
struct DedupResult {
  BinaryMatrix reduced;
  std::vector<Index> row_rep;     // reduced row -> one original row
  std::vector<Index> col_rep;     // reduced col -> one original col
  std::vector<Index> row_class;   // original row -> reduced row
  std::vector<Index> col_class;   // original col -> reduced col
};

DedupResult deduplicate(const BinaryMatrix& m);

}  // namespace binrank
