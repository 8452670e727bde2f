// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "binrank/matrix.hpp"

namespace binrank {

/// Query-counting window onto a BinaryMatrix.
///
/// query_count() is the number of distinct cells fetched from the source;
/// repeated lookups hit the cache and are free. One oracle belongs to one
/// tester run. The source matrix must outlive the oracle.
class MatrixOracle {
 public:
  explicit MatrixOracle(const BinaryMatrix& source, bool keep_log = false);
  /// The source must outlive the oracle.
  MatrixOracle(BinaryMatrix&&, bool = false) = delete;

  Index rows() const noexcept { return source_->rows(); }
  Index cols() const noexcept { return source_->cols(); }

  /// M[i,j]; throws IndexError when out of range.
  bool query(Index i, Index j);
  bool is_cached(Index i, Index j) const;

  std::uint64_t query_count() const noexcept { return count_; }
  /// Distinct cells in first-fetch order (empty unless keep_log was set).
  const std::vector<std::pair<Index, Index>>& query_log() const noexcept { return log_; }

 private:
  const BinaryMatrix* source_;
  // 0 = unknown, 1 = cached zero, 2 = cached one
  std::vector<std::uint8_t> cache_;
  std::uint64_t count_ = 0;
  bool keep_log_;
  std::vector<std::pair<Index, Index>> log_;
};

/// M[x,Y], querying only uncached cells.
BitVector fetch_row(MatrixOracle& oracle, Index x, std::span<const Index> cols);
/// M[X,y], querying only uncached cells.
BitVector fetch_column(MatrixOracle& oracle, std::span<const Index> rows, Index y);

}  // namespace binrank
