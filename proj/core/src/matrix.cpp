// SPDX-License-Identifier: Apache-2.0
#include "binrank/matrix.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "binrank/errors.hpp"

namespace binrank {

namespace {

std::size_t words_for(Index cols) { return (cols + 63) / 64; }

// Assigns each row a class id in order of first appearance.
std::vector<Index> classify_rows(const BinaryMatrix& m, std::vector<Index>& reps) {
  std::map<std::vector<std::uint64_t>, Index> seen;
  std::vector<Index> cls(m.rows());
  for (Index i = 0; i < m.rows(); ++i) {
    auto w = m.row_words(i);
    std::vector<std::uint64_t> key(w.begin(), w.end());
    auto [it, inserted] = seen.emplace(std::move(key), reps.size());
    if (inserted) reps.push_back(i);
    cls[i] = it->second;
  }
  return cls;
}

}  // namespace

BinaryMatrix::BinaryMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * stride_, 0) {
  if (rows == 0 || cols == 0) throw ContractError("matrix dimensions must be positive");
}

BinaryMatrix BinaryMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<BitVector> v;
  for (const auto& r : rows) {
    BitVector row;
    for (int x : r) {
      if (x != 0 && x != 1) throw ContractError("matrix entries must be 0 or 1");
      row.push_back(static_cast<std::uint8_t>(x));
    }
    v.push_back(std::move(row));
  }
  return from_rows(v);
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<BitVector>& rows) {
  if (rows.empty() || rows.front().empty()) throw ContractError("matrix dimensions must be positive");
  BinaryMatrix m(rows.size(), rows.front().size());
  for (Index i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw ContractError("ragged rows");
    for (Index j = 0; j < m.cols_; ++j) {
      if (rows[i][j] > 1) throw ContractError("matrix entries must be 0 or 1");
      m.set(i, j, rows[i][j] != 0);
    }
  }
  return m;
}

BinaryMatrix BinaryMatrix::ones(Index rows, Index cols) {
  BinaryMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m.set(i, j, true);
  return m;
}

BinaryMatrix BinaryMatrix::identity(Index k) {
  BinaryMatrix m(k, k);
  for (Index i = 0; i < k; ++i) m.set(i, i, true);
  return m;
}

void BinaryMatrix::check_index(Index i, Index j) const {
  if (i >= rows_ || j >= cols_) {
    throw IndexError("index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                     std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
  }
}

bool BinaryMatrix::at(Index i, Index j) const {
  check_index(i, j);
  return (*this)(i, j);
}

void BinaryMatrix::set(Index i, Index j, bool value) {
  check_index(i, j);
  auto& w = words_[i * stride_ + (j >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (j & 63);
  w = value ? (w | bit) : (w & ~bit);
}

BitVector BinaryMatrix::row(Index i) const {
  check_index(i, 0);
  BitVector out(cols_);
  for (Index j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
  return out;
}

BitVector BinaryMatrix::column(Index j) const {
  check_index(0, j);
  BitVector out(rows_);
  for (Index i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

BinaryMatrix BinaryMatrix::transpose() const {
  BinaryMatrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j)
      if ((*this)(i, j)) t.set(j, i, true);
  return t;
}

BinaryMatrix BinaryMatrix::submatrix(std::span<const Index> rows, std::span<const Index> cols) const {
  BinaryMatrix s(rows.size(), cols.size());
  for (Index a = 0; a < rows.size(); ++a)
    for (Index b = 0; b < cols.size(); ++b)
      if (at(rows[a], cols[b])) s.set(a, b, true);
  return s;
}

std::size_t BinaryMatrix::ones_count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BinaryMatrix::hamming_distance(const BinaryMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ContractError("dimension mismatch");
  std::size_t c = 0;
  for (std::size_t k = 0; k < words_.size(); ++k)
    c += static_cast<std::size_t>(std::popcount(words_[k] ^ other.words_[k]));
  return c;
}

std::size_t BinaryMatrix::distinct_rows() const {
  std::vector<Index> reps;
  classify_rows(*this, reps);
  return reps.size();
}

std::size_t BinaryMatrix::distinct_cols() const { return transpose().distinct_rows(); }

std::string BinaryMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) s.push_back((*this)(i, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

DedupResult deduplicate(const BinaryMatrix& m) {
  std::vector<Index> row_rep;
  auto row_class = classify_rows(m, row_rep);
  std::vector<Index> col_rep;
  auto col_class = classify_rows(m.transpose(), col_rep);
  BinaryMatrix reduced = m.submatrix(row_rep, col_rep);
  return {std::move(reduced), std::move(row_rep), std::move(col_rep), std::move(row_class),
          std::move(col_class)};
}

}  // namespace binrank
