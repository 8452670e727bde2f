// SPDX-License-Identifier: Apache-2.0
#include "binrank/oracle.hpp"

#include <string>

#include "binrank/errors.hpp"

namespace binrank {

MatrixOracle::MatrixOracle(const BinaryMatrix& source, bool keep_log)
    : source_(&source), cache_(source.size(), 0), keep_log_(keep_log) {}

bool MatrixOracle::query(Index i, Index j) {
  if (i >= rows() || j >= cols()) {
    throw IndexError("query (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  auto& slot = cache_[i * cols() + j];
  if (slot == 0) {
    slot = (*source_)(i, j) ? 2 : 1;
    ++count_;
    if (keep_log_) log_.emplace_back(i, j);
  }
  return slot == 2;
}

bool MatrixOracle::is_cached(Index i, Index j) const {
  if (i >= rows() || j >= cols()) throw IndexError("is_cached index out of range");
  return cache_[i * cols() + j] != 0;
}

BitVector fetch_row(MatrixOracle& oracle, Index x, std::span<const Index> cols) {
  BitVector out(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) out[k] = oracle.query(x, cols[k]);
  return out;
}

BitVector fetch_column(MatrixOracle& oracle, std::span<const Index> rows, Index y) {
  BitVector out(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) out[k] = oracle.query(rows[k], y);
  return out;
}

}  // namespace binrank
